#pragma once

// Closed-form Hertzian contact between two elastic spheres (either may be
// concave or flat): contact radius, approach, traction fields, and the
// normal, tangential, and torsional stiffness coefficients.  Strict SI.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gstk::hertz {

struct Material {
    std::string name;
    double E = 0.0;  // Young's modulus [Pa]
    double G = 0.0;  // shear modulus [Pa]
    double nu = 0.0; // Poisson's ratio

    /// Throws DomainError unless E > 0, G > 0 and 0 <= nu <= 0.5.
    void validate() const;

    /// |E − 2G(1+ν)| / E.
    double isotropy_mismatch() const;

    /// Message when the isotropy mismatch reaches 2 %.
    std::optional<std::string> isotropy_warning() const;
};

/// Built-in fingertip/object materials: rubber, polyethylene, aluminium.
const std::vector<Material>& material_registry();

/// Case-insensitive lookup; "aluminum" is accepted.  Throws DomainError.
const Material& material_by_name(std::string_view name);

/// Signed radius of curvature stored as curvature, so a flat surface is
/// exact.  Positive for convex, negative for concave.
class SignedRadius {
public:
    static SignedRadius flat() { return SignedRadius(0.0); }
    /// ±inf maps to flat; zero is rejected.
    static SignedRadius meters(double r);
    static SignedRadius from_curvature(double kappa) { return SignedRadius(kappa); }

    double curvature() const { return kappa_; }
    bool is_flat() const { return kappa_ == 0.0; }
    /// +inf when flat.
    double meters_value() const;

private:
    explicit SignedRadius(double kappa) : kappa_(kappa) {}
    double kappa_;
};

/// Fingertip (body 1, convex) against an object surface (body 2).
class ContactPair {
public:
    /// Throws DomainError when R1 <= 0, a material is invalid, or the
    /// relative radius is not positive (concave object tighter than the tip).
    ContactPair(double fingertip_radius, SignedRadius object_radius, Material fingertip,
                Material object);

    double fingertip_radius() const { return R1_; }
    SignedRadius object_radius() const { return R2_; }
    const Material& fingertip() const { return mat1_; }
    const Material& object() const { return mat2_; }

    /// 1/R_c = 1/R1 + 1/R2; equals R1 exactly for a flat object.
    double relative_radius() const { return Rc_; }
    /// 1/E_c = (1−ν1²)/E1 + (1−ν2²)/E2.
    double contact_modulus() const { return Ec_; }
    /// [(2−ν1)/G1 + (2−ν2)/G2]⁻¹
    double tangential_modulus() const { return Gt_; }
    /// [1/G1 + 1/G2]⁻¹
    double torsional_modulus() const { return Gtau_; }

private:
    double R1_;
    SignedRadius R2_;
    Material mat1_;
    Material mat2_;
    double Rc_;
    double Ec_;
    double Gt_;
    double Gtau_;
};

inline constexpr double kDefaultFriction = 0.5;

struct ContactLoad {
    double P = 0.0;   // normal force [N]
    double Q_x = 0.0; // tangential force [N]
    double M_z = 0.0; // twisting moment [N m]
    double mu = kDefaultFriction;
};

struct NormalSolution {
    double a = 0.0;     // contact radius [m]
    double delta = 0.0; // approach [m]
    double q_o = 0.0;   // peak pressure [Pa]
    double k_n = 0.0;   // secant normal stiffness P/δ [N/m]
};

struct TangentialSolution {
    double delta_x = 0.0; // [m]
    double k_t = 0.0;     // [N/m]
};

struct TorsionSolution {
    double beta = 0.0;  // twist angle [rad]
    double k_tau = 0.0; // [N m/rad]
};

struct HertzSolution {
    double a = 0.0;
    double delta = 0.0;
    double q_o = 0.0;
    double delta_x = 0.0;
    double beta_angle = 0.0;
    double k_n = 0.0;
    double k_t = 0.0;
    double k_tau = 0.0;
};

struct StiffnessCoefficients {
    double k_n = 0.0;
    double k_t = 0.0;
    double k_tau = 0.0;
};

/// a = (3PR_c/4E_c)^(1/3), δ = a²/R_c, q_o = 3P/(2πa²),
/// k_n = (16PR_cE_c²/9)^(1/3).  All zero for P = 0.
NormalSolution solve_normal(const ContactPair& pair, double P);

/// Full-stick tangential compliance: k_t = 8a·G_t, δ_x = Q_x/k_t.
/// Throws GrossSlide when |Q_x| >= μP (this includes P = 0).
TangentialSolution solve_tangential(const ContactPair& pair, double P, double Q_x,
                                    double mu = kDefaultFriction);

/// k_τ = (16/3)a³·G_τ, β = M_z/k_τ.  Throws DomainError when P <= 0.
TorsionSolution solve_torsion(const ContactPair& pair, double P, double M_z);

/// Bundles the three solves.  With P = 0 only Q_x = M_z = 0 is accepted.
HertzSolution solve(const ContactPair& pair, const ContactLoad& load);

StiffnessCoefficients stiffness_coefficients(const ContactPair& pair, double P);

/// q_o·sqrt(1 − r²/a²) for 0 <= r <= a.
double normal_pressure_at(const HertzSolution& sol, double r);

/// q₀·(1 − r²/a²)^(−1/2) with q₀ = Q_x/(2πa²), for 0 <= r < a.
double tangential_traction_at(const HertzSolution& sol, double Q_x, double r);

/// Circumferential traction q₀·r·(a² − r²)^(−1/2) for 0 <= r < a, with q₀
/// chosen so that ∫ q(r)·r·2πr dr over the patch equals M_z.
double torsional_traction_at(const HertzSolution& sol, double M_z, double r);

/// Amplitude q₀ of the torsional traction field.
double torsional_traction_amplitude(double a, double M_z);

} // namespace gstk::hertz
