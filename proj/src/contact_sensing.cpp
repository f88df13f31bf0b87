#include "gstk/contact_sensing.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "gstk/error.hpp"

namespace gstk::sensing {

namespace {

using Vector4 = Eigen::Vector4d;
using Matrix4 = Eigen::Matrix4d;

// Unknowns x = (c, K).  The surface row is scaled by ‖f‖/R so every row
// carries moment units.
struct NewtonSystem {
    Vector3 D;
    double R;
    Vector3 f;
    Vector3 m;
    double fnorm;

    Vector4 residual(const Vector4& x) const
    {
        const Vector3 c = x.head<3>();
        const Vector3 Dc = D.cwiseProduct(c);
        Vector4 r;
        r.head<3>() = m - c.cross(f) - x(3) * Dc;
        r(3) = (c.dot(Dc) - R * R) * fnorm / R;
        return r;
    }

    Matrix4 jacobian(const Vector4& x) const
    {
        const Vector3 c = x.head<3>();
        const Vector3 Dc = D.cwiseProduct(c);
        Matrix4 J = Matrix4::Zero();
        J.topLeftCorner<3, 3>() = screw::skew(f);
        J.topLeftCorner<3, 3>().diagonal() -= x(3) * D;
        J.block<3, 1>(0, 3) = -Dc;
        J.block<1, 3>(3, 0) = 2.0 * Dc.transpose() * fnorm / R;
        return J;
    }
};

struct Root {
    Vector4 x;
    double residual;
};

// Returns the final iterate and its residual norm.
Root newton(const NewtonSystem& sys, Vector4 x, int max_iterations, double tol)
{
    Vector4 r = sys.residual(x);
    double rn = r.norm();
    for (int it = 0; it < max_iterations && rn > tol; ++it) {
        const Eigen::FullPivLU<Matrix4> lu(sys.jacobian(x));
        if (!lu.isInvertible())
            break;
        const Vector4 step = lu.solve(-r);

        double t = 1.0;
        bool improved = false;
        for (int k = 0; k < 40; ++k, t *= 0.5) {
            const Vector4 trial = x + t * step;
            const Vector4 rt = sys.residual(trial);
            if (rt.norm() < rn) {
                x = trial;
                r = rt;
                rn = rt.norm();
                improved = true;
                break;
            }
        }
        if (!improved)
            break;
    }
    return {x, rn};
}

const std::array<Vector3, 26>& start_directions()
{
    static const std::array<Vector3, 26> dirs = [] {
        std::array<Vector3, 26> out{};
        std::size_t k = 0;
        for (int i = -1; i <= 1; ++i)
            for (int j = -1; j <= 1; ++j)
                for (int l = -1; l <= 1; ++l)
                    if (i != 0 || j != 0 || l != 0)
                        out[k++] = Vector3(i, j, l).normalized();
        return out;
    }();
    return dirs;
}

} // namespace

void FingertipSurface::validate() const
{
    if (!(alpha >= 1.0 && beta >= 1.0 && gamma >= 1.0) || !std::isfinite(alpha) ||
        !std::isfinite(beta) || !std::isfinite(gamma))
        throw DomainError("fingertip surface: alpha, beta, gamma must be finite and >= 1");
    if (!(R > 0.0) || !std::isfinite(R))
        throw DomainError("fingertip surface: R must be positive");
}

Vector3 FingertipSurface::shape_diagonal() const
{
    return {1.0 / (alpha * alpha), 1.0 / (beta * beta), 1.0 / (gamma * gamma)};
}

double FingertipSurface::value(const Vector3& point) const
{
    return point.dot(shape_diagonal().cwiseProduct(point)) - R * R;
}

Vector3 FingertipSurface::gradient(const Vector3& point) const
{
    return 2.0 * shape_diagonal().cwiseProduct(point);
}

Vector3 FingertipSurface::point_along(const Vector3& direction) const
{
    const double q = direction.dot(shape_diagonal().cwiseProduct(direction));
    if (!(q > 0.0))
        throw DomainError("point_along: zero direction");
    return direction * (R / std::sqrt(q));
}

Vector3 surface_normal(const FingertipSurface& surface, const Vector3& point)
{
    const Vector3 g = surface.gradient(point);
    const double norm = g.norm();
    if (!(norm > 0.0) || !std::isfinite(norm))
        throw DomainError("surface_normal: degenerate gradient");
    return g / norm;
}

WrenchMeasurement synthesize_wrench(const FingertipSurface& surface, const Vector3& c,
                                    const Vector3& f_c, double sigma)
{
    surface.validate();
    if (std::abs(surface.value(c)) > 1e-9 * surface.R * surface.R)
        throw DomainError("synthesize_wrench: contact point is not on the fingertip surface");
    return {f_c, sigma * surface_normal(surface, c) + c.cross(f_c)};
}

ForceSplit decompose_forces(const Vector3& f, const Vector3& n)
{
    const Vector3 f_n = n.dot(f) * n;
    return {f_n, f - f_n};
}

ContactEstimate solve_contact(const FingertipSurface& surface, const WrenchMeasurement& meas,
                              const SolveOptions& options)
{
    surface.validate();
    if (!meas.f.allFinite() || !meas.m.allFinite())
        throw DomainError("solve_contact: non-finite wrench");
    if (!(meas.f.norm() > 1e-9))
        throw DomainError("solve_contact: force magnitude too small for a contact solve");

    // Express the wrench in the fingertip frame.
    const screw::Pose& mount = options.fingertip_in_sensor;
    const screw::Wrench w =
        screw::transform_wrench(screw::adjoint_of_pose(mount.inverse()), meas);

    NewtonSystem sys{surface.shape_diagonal(), surface.R, w.f, w.m, w.f.norm()};
    const double scale = w.m.norm() + surface.R * sys.fnorm;
    const double tol = 1e-14 * scale;
    const double accept = 1e-9 * scale;

    bool any_converged = false;
    bool have_best = false;
    double best_residual = std::numeric_limits<double>::infinity();
    Root best{};
    double best_sigma = 0.0;

    for (const Vector3& dir : start_directions()) {
        Vector4 x0;
        x0.head<3>() = surface.point_along(dir);
        const Vector3 Dc = sys.D.cwiseProduct(x0.head<3>());
        x0(3) = Dc.dot(w.m - x0.head<3>().cross(w.f)) / Dc.squaredNorm();

        const Root root = newton(sys, x0, options.max_iterations, tol);
        best_residual = std::min(best_residual, root.residual);
        if (!(root.residual <= accept))
            continue;
        any_converged = true;

        const Vector3 c = root.x.head<3>();
        const Vector3 n = surface_normal(surface, c);
        if (!(w.f.dot(n) < -1e-12 * sys.fnorm))
            continue;
        const double sigma = root.x(3) * sys.D.cwiseProduct(c).norm();
        if (!have_best || std::abs(sigma) < std::abs(best_sigma)) {
            have_best = true;
            best = root;
            best_sigma = sigma;
        }
    }

    if (!any_converged)
        throw ConvergenceError("solve_contact: Newton iteration did not converge from any start",
                               best_residual);
    if (!have_best)
        throw InadmissibleContact("solve_contact: no compressive contact explains the wrench");

    const Vector3 c_tip = best.x.head<3>();
    const Vector3 n_tip = surface_normal(surface, c_tip);

    ContactEstimate est;
    est.c = mount.R * c_tip + mount.p;
    est.n = mount.R * n_tip;
    est.sigma = best_sigma;
    est.k_const = best.x(3);
    const ForceSplit split = decompose_forces(meas.f, est.n);
    est.f_n = split.f_n;
    est.f_t = split.f_t;
    est.residual = (meas.m - est.c.cross(meas.f) - est.sigma * est.n).norm();
    return est;
}

ContactFrame contact_frame(const Vector3& n, const Vector3& f_t, double force_scale)
{
    ContactFrame fr;
    const double nz = std::clamp(n.z(), -1.0, 1.0);
    fr.psi = std::acos(nz);
    const double planar = std::hypot(n.x(), n.y());
    // Gimbal lock at n = ±e_z.
    fr.phi = planar > 1e-12 ? std::atan2(n.y(), n.x()) : 0.0;

    const Matrix3 B = screw::rot_z(fr.phi) * screw::rot_y(fr.psi);
    const double ft = f_t.norm();
    if (ft > 1e-9 * force_scale) {
        // Solve R e_x = t̂ through the full vector equation; resolves the
        // sign ambiguity of the arc-cosine form.
        const Vector3 t = f_t / ft;
        fr.gamma = std::atan2(t.dot(B.col(1)), t.dot(B.col(0)));
    }
    fr.R = B * screw::rot_z(fr.gamma);
    return fr;
}

ContactFrame contact_frame(const ContactEstimate& est)
{
    ContactFrame fr = contact_frame(est.n, est.f_t, (est.f_n + est.f_t).norm());
    fr.origin = est.c;
    return fr;
}

} // namespace gstk::sensing
