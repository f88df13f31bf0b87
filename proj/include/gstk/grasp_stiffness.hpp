#pragma once

// Per-contact spring stiffness, global grasp stiffness assembly, and
// eigenvalue-based stability classification.

#include <array>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

#include "gstk/hertz.hpp"
#include "gstk/screw.hpp"

namespace gstk::grasp {

/// Which contact-frame directions carry springs.
///  - Literal: k_t on x, k_n on z, k_τ on rotation about z.
///  - Extended: as Literal plus k_t on y.
enum class SpringVariant { Literal, Extended };

std::string_view to_string(SpringVariant v);
/// Accepts "literal" and "extended".  Throws DomainError.
SpringVariant parse_spring_variant(std::string_view s);

struct ContactSpringModel {
    double k_n = 0.0;   // [N/m]
    double k_t = 0.0;   // [N/m]
    double k_tau = 0.0; // [N m/rad]
    SpringVariant variant = SpringVariant::Literal;

    static ContactSpringModel from(const hertz::StiffnessCoefficients& k, SpringVariant v)
    {
        return {k.k_n, k.k_t, k.k_tau, v};
    }
};

struct GraspContact {
    /// Pose of contact frame C_i in the object frame O (z towards the object).
    screw::Pose frame;
    hertz::ContactPair pair;
    double load = 0.0; // normal force P_i [N]
    /// Fixed sensor-to-fingertip offset appended to the frame chain.
    screw::Pose offset = screw::Pose::identity();

    screw::Pose placement() const { return frame.compose(offset); }
};

struct GraspConfiguration {
    std::vector<GraspContact> contacts;

    /// Throws DomainError when empty, a frame is not a rigid pose, or a
    /// load is negative.
    void validate() const;
};

using GraspStiffnessMatrix = Matrix6;

enum class Stability { Stable, Marginal, Unstable };

std::string_view to_string(Stability s);

struct StabilityReport {
    std::array<double, 6> eigenvalues{}; // ascending
    double lambda_min = 0.0;
    double spectral_norm = 0.0;
    Stability classification = Stability::Marginal;
};

inline constexpr double kDefaultStabilityTolerance = 1e-9;

/// J·diag·Jᵀ in (d_x, d_y, d_z, θ_x, θ_y, θ_z) order.  Throws DomainError
/// on negative coefficients.
Matrix6 contact_stiffness(const ContactSpringModel& model);

/// Σ Ad_i K_ci Ad_iᵀ with Ad_i the wrench transform from contact i to O.
/// Throws DomainError when the list lengths differ.
GraspStiffnessMatrix assemble(const GraspConfiguration& config,
                              std::span<const ContactSpringModel> models);

/// Hertz coefficients per contact at its own load, then assemble.
GraspStiffnessMatrix assemble(const GraspConfiguration& config, SpringVariant variant);

/// Ascending eigenvalues.  Throws DomainError when K is not symmetric
/// within 1e-9‖K‖.
std::array<double, 6> eigenvalues(const Matrix6& K);

double min_eigenvalue(const Matrix6& K);

/// Stable when λ_min > tol‖K‖₂, unstable when λ_min < −tol‖K‖₂, marginal
/// otherwise.
StabilityReport classify(const Matrix6& K, double tol = kDefaultStabilityTolerance);

/// Rotational coordinates multiplied by a characteristic length, so all
/// blocks carry N/m.
Matrix6 scale_rotational(const Matrix6& K, double length);

struct SphereGraspSpec {
    hertz::SignedRadius object_radius = hertz::SignedRadius::flat();
    double contact_distance = 0.04;         // [m]
    std::array<double, 3> angles{};         // [rad], positions on the great circle
    double load = 5.0;                      // per-contact normal force [N]
    double fingertip_radius = 0.01;         // [m]
    hertz::Material fingertip_material;
    hertz::Material object_material;
    double min_separation = 10.0 * std::numbers::pi / 180.0; // [rad]
};

/// (90°, 210°, 330°): the symmetric three-finger grasp.
std::array<double, 3> symmetric_angles();

/// Smallest angular distance on the circle, in [0, π].
double circular_separation(double a, double b);

/// Contact on the x-z great circle at angle theta, distance from the
/// centre; frame rotation R_y(theta), z-axis pointing at the centre.
GraspContact great_circle_contact(double theta, double distance, const hertz::ContactPair& pair,
                                  double load);

/// Three contacts on the x-z great circle at distance contact_distance
/// from the centre; contact i has frame rotation R_y(θ_i) and its z-axis
/// points at the centre.  Throws DomainError when two angles are closer
/// than min_separation or contact_distance <= 0.
GraspConfiguration three_finger_sphere_config(const SphereGraspSpec& spec);

} // namespace gstk::grasp
