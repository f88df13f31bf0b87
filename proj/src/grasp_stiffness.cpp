#include "gstk/grasp_stiffness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gstk/error.hpp"
#include "gstk/symmetric_eigen.hpp"

namespace gstk::grasp {

std::string_view to_string(SpringVariant v)
{
    return v == SpringVariant::Literal ? "literal" : "extended";
}

SpringVariant parse_spring_variant(std::string_view s)
{
    if (s == "literal")
        return SpringVariant::Literal;
    if (s == "extended")
        return SpringVariant::Extended;
    throw DomainError("unknown spring model '" + std::string(s) + "' (expected literal or extended)");
}

std::string_view to_string(Stability s)
{
    switch (s) {
    case Stability::Stable:
        return "stable";
    case Stability::Marginal:
        return "marginal";
    case Stability::Unstable:
        return "unstable";
    }
    return "unknown";
}

void GraspConfiguration::validate() const
{
    if (contacts.empty())
        throw DomainError("grasp configuration has no contacts");
    for (const auto& c : contacts) {
        if (!screw::is_rotation(c.frame.R, 1e-9) || !c.frame.p.allFinite())
            throw DomainError("grasp contact frame is not a rigid pose");
        if (!screw::is_rotation(c.offset.R, 1e-9) || !c.offset.p.allFinite())
            throw DomainError("grasp contact offset is not a rigid pose");
        if (!(c.load >= 0.0) || !std::isfinite(c.load))
            throw DomainError("grasp contact load must be non-negative");
    }
}

Matrix6 contact_stiffness(const ContactSpringModel& model)
{
    if (!(model.k_n >= 0.0 && model.k_t >= 0.0 && model.k_tau >= 0.0))
        throw DomainError("spring coefficients must be non-negative");
    Matrix6 K = Matrix6::Zero();
    K(0, 0) = model.k_t;
    K(2, 2) = model.k_n;
    K(5, 5) = model.k_tau;
    if (model.variant == SpringVariant::Extended)
        K(1, 1) = model.k_t;
    return K;
}

GraspStiffnessMatrix assemble(const GraspConfiguration& config,
                              std::span<const ContactSpringModel> models)
{
    config.validate();
    if (models.size() != config.contacts.size())
        throw DomainError("assemble: one spring model per contact is required");

    Matrix6 K = Matrix6::Zero();
    for (std::size_t i = 0; i < models.size(); ++i) {
        const auto adj = screw::adjoint_of_pose(config.contacts[i].placement());
        K += screw::congruence_map_stiffness(adj, contact_stiffness(models[i]));
    }
    return K;
}

GraspStiffnessMatrix assemble(const GraspConfiguration& config, SpringVariant variant)
{
    config.validate();
    std::vector<ContactSpringModel> models;
    models.reserve(config.contacts.size());
    for (const auto& c : config.contacts)
        models.push_back(
            ContactSpringModel::from(hertz::stiffness_coefficients(c.pair, c.load), variant));
    return assemble(config, models);
}

std::array<double, 6> eigenvalues(const Matrix6& K)
{
    if (!K.allFinite())
        throw DomainError("stiffness matrix has non-finite entries");
    if (screw::relative_asymmetry(K) > 1e-9)
        throw DomainError("stiffness matrix is not symmetric");
    const Eigen::VectorXd ev = linalg::symmetric_eigenvalues(K);
    std::array<double, 6> out{};
    std::copy(ev.data(), ev.data() + 6, out.begin());
    return out;
}

double min_eigenvalue(const Matrix6& K)
{
    return eigenvalues(K).front();
}

StabilityReport classify(const Matrix6& K, double tol)
{
    if (!(tol > 0.0))
        throw DomainError("classify: tolerance must be positive");
    StabilityReport r;
    r.eigenvalues = eigenvalues(K);
    r.lambda_min = r.eigenvalues.front();
    r.spectral_norm = std::max(std::abs(r.eigenvalues.front()), std::abs(r.eigenvalues.back()));
    const double band = tol * r.spectral_norm;
    if (r.lambda_min > band)
        r.classification = Stability::Stable;
    else if (r.lambda_min < -band)
        r.classification = Stability::Unstable;
    else
        r.classification = Stability::Marginal;
    return r;
}

Matrix6 scale_rotational(const Matrix6& K, double length)
{
    if (!(length > 0.0))
        throw DomainError("scale_rotational: length must be positive");
    Vector6 s;
    s << 1.0, 1.0, 1.0, 1.0 / length, 1.0 / length, 1.0 / length;
    return s.asDiagonal() * K * s.asDiagonal();
}

std::array<double, 3> symmetric_angles()
{
    constexpr double pi = std::numbers::pi;
    return {pi / 2.0, pi / 2.0 + 2.0 * pi / 3.0, pi / 2.0 + 4.0 * pi / 3.0};
}

double circular_separation(double a, double b)
{
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double d = std::fmod(std::abs(a - b), two_pi);
    return std::min(d, two_pi - d);
}

GraspContact great_circle_contact(double theta, double distance, const hertz::ContactPair& pair,
                                  double load)
{
    // Object origin sits at (0, 0, distance) in the contact frame.
    const Matrix3 R = screw::rot_y(theta);
    const Vector3 p = -distance * R.col(2);
    return {{R, p}, pair, load};
}

GraspConfiguration three_finger_sphere_config(const SphereGraspSpec& spec)
{
    if (!(spec.contact_distance > 0.0) || !std::isfinite(spec.contact_distance))
        throw DomainError("contact distance must be positive");
    for (int i = 0; i < 3; ++i) {
        if (!std::isfinite(spec.angles[i]))
            throw DomainError("contact angle must be finite");
        for (int j = i + 1; j < 3; ++j)
            if (circular_separation(spec.angles[i], spec.angles[j]) < spec.min_separation)
                throw DomainError("contact angles are closer than the minimum separation");
    }

    const hertz::ContactPair pair(spec.fingertip_radius, spec.object_radius,
                                  spec.fingertip_material, spec.object_material);
    GraspConfiguration config;
    for (double theta : spec.angles)
        config.contacts.push_back(great_circle_contact(theta, spec.contact_distance, pair, spec.load));
    return config;
}

} // namespace gstk::grasp
