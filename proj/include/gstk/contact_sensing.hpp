#pragma once

// Intrinsic contact sensing: recover the contact centroid, normal, force
// split and spin moment from one 6-axis wrench measured behind a quadric
// fingertip S(i) = iᵀAᵀA i − R², A = diag(1/α, 1/β, 1/γ).

#include "gstk/screw.hpp"

namespace gstk::sensing {

struct FingertipSurface {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 1.0;
    double R = 0.01; // scale factor [m]

    static FingertipSurface sphere(double radius) { return {1.0, 1.0, 1.0, radius}; }

    /// Throws DomainError unless α, β, γ >= 1 and R > 0.
    void validate() const;

    /// AᵀA = diag(1/α², 1/β², 1/γ²).
    Vector3 shape_diagonal() const;
    double value(const Vector3& point) const;
    Vector3 gradient(const Vector3& point) const;
    /// Projects a non-zero direction radially onto the surface.
    Vector3 point_along(const Vector3& direction) const;
};

using WrenchMeasurement = screw::Wrench;

struct ContactEstimate {
    Vector3 c = Vector3::Zero(); // centroid [m]
    Vector3 n = Vector3::UnitZ(); // outward unit normal at c
    Vector3 f_n = Vector3::Zero();
    Vector3 f_t = Vector3::Zero();
    double sigma = 0.0;   // spin moment about n [N m], m_c = σ n
    double k_const = 0.0; // K with m_c = (K/2) ∇S(c)
    double residual = 0.0; // ‖m − c×f − σn‖
};

struct ForceSplit {
    Vector3 f_n;
    Vector3 f_t;
};

/// Z-Y-Z frame at the contact: z along n, x along f_t.
struct ContactFrame {
    double phi = 0.0;
    double psi = 0.0;
    double gamma = 0.0;
    Matrix3 R = Matrix3::Identity();
    Vector3 origin = Vector3::Zero();

    screw::Pose pose() const { return {R, origin}; }
};

struct SolveOptions {
    /// Pose of the fingertip (surface) frame in the sensor frame.
    screw::Pose fingertip_in_sensor = screw::Pose::identity();
    int max_iterations = 60;
};

/// ∇S/‖∇S‖.  Throws DomainError where the gradient vanishes.
Vector3 surface_normal(const FingertipSurface& surface, const Vector3& point);

/// f = f_c, m = σ n(c) + c × f_c.  Throws DomainError when c is off the
/// surface by more than 1e-9 R².
WrenchMeasurement synthesize_wrench(const FingertipSurface& surface, const Vector3& c,
                                    const Vector3& f_c, double sigma);

/// Newton solve of {m − c×f − K·AᵀA c = 0, S(c) = 0} from 26 surface
/// starts.  Keeps compressive roots (fᵀn < 0), then the smallest |σ|.
///
/// Throws DomainError when ‖f‖ <= 1e-9 N, ConvergenceError when no start
/// converges, InadmissibleContact when no converged root is compressive.
/// Outputs are expressed in the sensor frame.
ContactEstimate solve_contact(const FingertipSurface& surface, const WrenchMeasurement& meas,
                              const SolveOptions& options = {});

ForceSplit decompose_forces(const Vector3& f, const Vector3& n);

/// Euler angles (φ, ψ, γ) with R = Rz(φ) Ry(ψ) Rz(γ), R e_z = n and
/// R e_x = f_t/‖f_t‖.  φ = 0 when n = ±e_z; γ = 0 when
/// ‖f_t‖ <= 1e-9·force_scale.
ContactFrame contact_frame(const Vector3& n, const Vector3& f_t, double force_scale = 1.0);

/// Frame for a solved contact, origin at the centroid.
ContactFrame contact_frame(const ContactEstimate& est);

} // namespace gstk::sensing
