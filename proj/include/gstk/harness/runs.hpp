#pragma once

// Reproduction runs behind the `gstk` subcommands.  Each run builds its
// CSV table in memory in a fixed order, so output bytes depend only on
// the configuration and seed.

#include <array>
#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "gstk/grasp_stiffness.hpp"
#include "gstk/harness/config.hpp"
#include "gstk/harness/csv.hpp"

namespace gstk::harness {

/// Area of the triangle spanned by the three contact positions [m²].
/// Throws DomainError unless there are exactly three contacts.
double grasp_area_index(const grasp::GraspConfiguration& config);

/// Spearman rank correlation with average ranks for ties; 0 when either
/// series is constant.
double spearman(std::span<const double> a, std::span<const double> b);

/// mt19937_64 with doubles formed as (x >> 11)·2⁻⁵³, so draws are
/// identical on every standard library.
class AngleSampler {
public:
    explicit AngleSampler(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform();

    /// Three angles uniform on [0, 2π) with pairwise circular separation
    /// >= min_separation.  Throws Error after 1000 consecutive rejections.
    std::array<double, 3> sample_triple(double min_separation);

private:
    std::mt19937_64 engine_;
};

grasp::SphereGraspSpec sphere_grasp_spec(const RunConfig& config, hertz::SignedRadius object_radius,
                                         double load, const std::array<double, 3>& angles);

inline const std::string kCoeffsHeader =
    "object_material,object_radius_mm,P_N,k_n_N_per_m,k_t_N_per_m,k_tau_Nm_per_rad";
inline const std::string kCaseAHeader = "curvature_label,object_radius_mm,P_N,lambda_min";
inline const std::string kCaseBHeader =
    "group,config_id,theta1_deg,theta2_deg,theta3_deg,area_m2,lambda_min_raw,lambda_min_normalized";
inline const std::string kContactsHeader =
    "t,cx_m,cy_m,cz_m,nx,ny,nz,fn_N,ft_N,sigma_Nm,phi_rad,psi_rad,gamma_rad,status";

/// Object radii of the coefficient sweep [mm]; infinity is the flat object.
std::vector<double> sweep_radii_mm();

/// Every registry material × sweep radius × force grid.
CsvTable coeff_sweep_table(const RunConfig& config);

/// Symmetric three-finger grasp over 0..10 N (101 points) for convex
/// (+40 mm), flat and concave (−40 mm) objects.
CsvTable case_a_table(const RunConfig& config);

struct CaseBGroupSummary {
    int group = 0;
    double spearman = 0.0;
    bool symmetric_is_area_max = false;
    bool symmetric_is_lambda_max = false;
};

struct CaseBResult {
    CsvTable table;
    std::vector<CaseBGroupSummary> groups;
};

/// Groups of configurations; #1 is symmetric, the rest are sampled.
/// Throws DomainError when the symmetric λ_min is not positive, since the
/// normalization would divide by it.
CaseBResult case_b(const RunConfig& config);

std::string case_b_summary_text(const CaseBResult& result);
CsvTable case_b_summary_table(const CaseBResult& result);

struct StabilityOutcome {
    grasp::StabilityReport report;
    int exit_code = 0; // 0 stable, 2 marginal, 3 unstable
};

StabilityOutcome evaluate_stability(const GraspFile& file);
std::string stability_report_text(const GraspFile& file, const StabilityOutcome& outcome);

/// Solves every `t,fx,fy,fz,mx,my,mz` line of a wrench log.  Blank lines,
/// '#' comments and a leading header line are skipped.  Throws ParseError
/// with the line number on malformed lines.
CsvTable sense_table(const std::string& log_text, const std::string& source,
                     const sensing::FingertipSurface& surface);

/// Writers: each returns the CSV path.  With svg set, a chart rendered
/// from the written CSV is placed next to it.
std::filesystem::path run_coeff_sweep(const RunConfig& config, bool svg);
std::filesystem::path run_case_a(const RunConfig& config, bool svg);
std::filesystem::path run_case_b(const RunConfig& config, bool svg, CaseBResult* result = nullptr);
std::filesystem::path run_sense(const RunConfig& config, const std::filesystem::path& log);

} // namespace gstk::harness
