#include "gstk/hertz.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>

#include "gstk/error.hpp"

namespace gstk::hertz {

namespace {

constexpr double kPi = std::numbers::pi;

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

} // namespace

void Material::validate() const
{
    if (!(E > 0.0) || !std::isfinite(E))
        throw DomainError("material '" + name + "': Young's modulus must be positive");
    if (!(G > 0.0) || !std::isfinite(G))
        throw DomainError("material '" + name + "': shear modulus must be positive");
    if (!(nu >= 0.0 && nu <= 0.5))
        throw DomainError("material '" + name + "': Poisson's ratio must lie in [0, 0.5]");
}

double Material::isotropy_mismatch() const
{
    return std::abs(E - 2.0 * G * (1.0 + nu)) / E;
}

std::optional<std::string> Material::isotropy_warning() const
{
    const double mismatch = isotropy_mismatch();
    if (mismatch < 0.02)
        return std::nullopt;
    return "material '" + name + "': E, G and nu disagree with isotropy by " +
           std::to_string(mismatch * 100.0) + " %";
}

const std::vector<Material>& material_registry()
{
    static const std::vector<Material> registry = {
        {"rubber", 2.5e6, 8.3e5, 0.5},
        {"polyethylene", 1.1e9, 3.87e8, 0.42},
        {"aluminium", 7.1e10, 2.67e10, 0.33},
    };
    return registry;
}

const Material& material_by_name(std::string_view name)
{
    std::string key = lower(name);
    if (key == "aluminum")
        key = "aluminium";
    for (const auto& m : material_registry())
        if (m.name == key)
            return m;
    throw DomainError("unknown material '" + std::string(name) + "'");
}

SignedRadius SignedRadius::meters(double r)
{
    if (std::isinf(r))
        return flat();
    if (r == 0.0 || std::isnan(r))
        throw DomainError("signed radius must be nonzero");
    return SignedRadius(1.0 / r);
}

double SignedRadius::meters_value() const
{
    if (kappa_ == 0.0)
        return std::numeric_limits<double>::infinity();
    return 1.0 / kappa_;
}

ContactPair::ContactPair(double fingertip_radius, SignedRadius object_radius, Material fingertip,
                         Material object)
    : R1_(fingertip_radius), R2_(object_radius), mat1_(std::move(fingertip)), mat2_(std::move(object))
{
    if (!(R1_ > 0.0) || !std::isfinite(R1_))
        throw DomainError("fingertip radius must be positive and finite");
    mat1_.validate();
    mat2_.validate();

    const double kappa = 1.0 / R1_ + R2_.curvature();
    if (!(kappa > 0.0))
        throw DomainError("relative radius is not positive: concave object must be flatter than the fingertip");
    Rc_ = R2_.is_flat() ? R1_ : 1.0 / kappa;

    Ec_ = 1.0 / ((1.0 - mat1_.nu * mat1_.nu) / mat1_.E + (1.0 - mat2_.nu * mat2_.nu) / mat2_.E);
    Gt_ = 1.0 / ((2.0 - mat1_.nu) / mat1_.G + (2.0 - mat2_.nu) / mat2_.G);
    Gtau_ = 1.0 / (1.0 / mat1_.G + 1.0 / mat2_.G);
}

NormalSolution solve_normal(const ContactPair& pair, double P)
{
    if (!(P >= 0.0) || !std::isfinite(P))
        throw DomainError("normal load must be finite and non-negative");
    if (P == 0.0)
        return {};

    const double Rc = pair.relative_radius();
    const double Ec = pair.contact_modulus();
    NormalSolution s;
    s.a = std::cbrt(3.0 * P * Rc / (4.0 * Ec));
    s.delta = s.a * s.a / Rc;
    s.q_o = 3.0 * P / (2.0 * kPi * s.a * s.a);
    s.k_n = std::cbrt(16.0 * P * Rc * Ec * Ec / 9.0);
    return s;
}

TangentialSolution solve_tangential(const ContactPair& pair, double P, double Q_x, double mu)
{
    if (!(mu > 0.0))
        throw DomainError("friction coefficient must be positive");
    if (!std::isfinite(Q_x))
        throw DomainError("tangential load must be finite");
    if (!(std::abs(Q_x) < mu * P))
        throw GrossSlide("tangential load reaches the friction limit mu*P; contact slides");

    const NormalSolution n = solve_normal(pair, P);
    TangentialSolution s;
    s.k_t = 8.0 * n.a * pair.tangential_modulus();
    s.delta_x = Q_x / s.k_t;
    return s;
}

TorsionSolution solve_torsion(const ContactPair& pair, double P, double M_z)
{
    if (!std::isfinite(M_z))
        throw DomainError("twisting moment must be finite");
    const NormalSolution n = solve_normal(pair, P);
    if (n.a == 0.0)
        throw DomainError("torsion needs a loaded contact (P > 0)");

    TorsionSolution s;
    s.k_tau = 16.0 / 3.0 * n.a * n.a * n.a * pair.torsional_modulus();
    s.beta = M_z / s.k_tau;
    return s;
}

HertzSolution solve(const ContactPair& pair, const ContactLoad& load)
{
    const NormalSolution n = solve_normal(pair, load.P);
    HertzSolution s;
    s.a = n.a;
    s.delta = n.delta;
    s.q_o = n.q_o;
    s.k_n = n.k_n;
    if (load.P == 0.0) {
        if (load.Q_x != 0.0)
            throw GrossSlide("tangential load on an unloaded contact");
        if (load.M_z != 0.0)
            throw DomainError("twisting moment on an unloaded contact");
        return s;
    }

    const TangentialSolution t = solve_tangential(pair, load.P, load.Q_x, load.mu);
    const TorsionSolution tor = solve_torsion(pair, load.P, load.M_z);
    s.delta_x = t.delta_x;
    s.k_t = t.k_t;
    s.beta_angle = tor.beta;
    s.k_tau = tor.k_tau;
    return s;
}

StiffnessCoefficients stiffness_coefficients(const ContactPair& pair, double P)
{
    const NormalSolution n = solve_normal(pair, P);
    if (n.a == 0.0)
        return {};
    return {n.k_n, 8.0 * n.a * pair.tangential_modulus(),
            16.0 / 3.0 * n.a * n.a * n.a * pair.torsional_modulus()};
}

double normal_pressure_at(const HertzSolution& sol, double r)
{
    if (!(r >= 0.0 && r <= sol.a))
        throw DomainError("normal_pressure_at: radius outside the contact patch");
    if (sol.a == 0.0)
        return 0.0;
    return sol.q_o * std::sqrt(std::max(0.0, (sol.a - r) * (sol.a + r))) / sol.a;
}

double tangential_traction_at(const HertzSolution& sol, double Q_x, double r)
{
    if (!(sol.a > 0.0))
        throw DomainError("tangential_traction_at: unloaded contact");
    if (!(r >= 0.0 && r < sol.a))
        throw DomainError("tangential_traction_at: radius outside the open patch [0, a)");
    const double q0 = Q_x / (2.0 * kPi * sol.a * sol.a);
    // (a − r)(a + r) keeps relative accuracy next to the rim.
    return q0 * sol.a / std::sqrt((sol.a - r) * (sol.a + r));
}

double torsional_traction_amplitude(double a, double M_z)
{
    if (!(a > 0.0))
        throw DomainError("torsional traction needs a > 0");
    // ∫₀ᵃ r³ (a² − r²)^(−1/2) dr = (2/3) a³
    return M_z / (2.0 * kPi * (2.0 / 3.0) * a * a * a);
}

double torsional_traction_at(const HertzSolution& sol, double M_z, double r)
{
    const double q0 = torsional_traction_amplitude(sol.a, M_z);
    if (!(r >= 0.0 && r < sol.a))
        throw DomainError("torsional_traction_at: radius outside the open patch [0, a)");
    return q0 * r / std::sqrt((sol.a - r) * (sol.a + r));
}

} // namespace gstk::hertz
