#pragma once

// Spatial vector algebra for wrenches and twists.
//
// Ordering is global: wrench = (f_x, f_y, f_z, m_x, m_y, m_z) in ray
// coordinates, twist = (d_x, d_y, d_z, theta_x, theta_y, theta_z) in axis
// coordinates.  adjoint_of_pose(pose of B in A) maps B-frame wrenches to
// A-frame wrenches.

#include <Eigen/Dense>

namespace gstk {

using Vector3 = Eigen::Vector3d;
using Matrix3 = Eigen::Matrix3d;
using Vector6 = Eigen::Matrix<double, 6, 1>;
using Matrix6 = Eigen::Matrix<double, 6, 6>;

namespace screw {

struct Wrench {
    Vector3 f = Vector3::Zero(); // [N]
    Vector3 m = Vector3::Zero(); // [N m]

    Vector6 stacked() const;
    static Wrench from_stacked(const Vector6& v);
};

struct Twist {
    Vector3 d = Vector3::Zero();     // [m]
    Vector3 theta = Vector3::Zero(); // [rad]

    Vector6 stacked() const;
    static Twist from_stacked(const Vector6& v);
};

/// Rigid placement of a frame B expressed in a frame A: x_A = R x_B + p.
struct Pose {
    Matrix3 R = Matrix3::Identity();
    Vector3 p = Vector3::Zero();

    static Pose identity() { return {}; }

    /// this ∘ other: places other's frame through this one.
    Pose compose(const Pose& other) const;
    Pose inverse() const;
};

/// True when RᵀR = I and det R = +1 within tol.
bool is_rotation(const Matrix3& R, double tol);

/// Rotation about a principal axis.
Matrix3 rot_x(double angle);
Matrix3 rot_y(double angle);
Matrix3 rot_z(double angle);

/// Cross-product matrix: skew(p) v = p × v.
Matrix3 skew(const Vector3& p);

/// [[0, I], [I, 0]]; swaps primary and secondary screw parts.
const Matrix6& elliptical_polar();

/// 6×6 change-of-frame operator [[R, 0], [skew(p) R, R]].
///
/// Only constructible from a valid pose, so the block structure and
/// unit determinant always hold.
class AdjointTransform {
public:
    AdjointTransform() : m_(Matrix6::Identity()) {}

    const Matrix6& matrix() const { return m_; }
    Matrix3 rotation() const { return m_.topLeftCorner<3, 3>(); }

    /// Adjoint of the inverse pose; equals matrix().inverse().
    AdjointTransform inverse() const;

    AdjointTransform operator*(const AdjointTransform& rhs) const;

private:
    explicit AdjointTransform(const Matrix6& m) : m_(m) {}
    friend AdjointTransform adjoint_of_pose(const Pose& pose);

    Matrix6 m_;
};

/// Throws DomainError when pose.R is not a proper rotation (tol 1e-9).
AdjointTransform adjoint_of_pose(const Pose& pose);

Wrench transform_wrench(const AdjointTransform& adj, const Wrench& w);

/// Δ Ad Δ t, i.e. Ad⁻ᵀ t.
Twist transform_twist(const AdjointTransform& adj, const Twist& t);

/// Ad K Adᵀ.  Throws DomainError when K is not symmetric within 1e-9‖K‖.
Matrix6 congruence_map_stiffness(const AdjointTransform& adj, const Matrix6& K);

/// Max |K_ij − K_ji| relative to the Frobenius norm; 0 for the zero matrix.
double relative_asymmetry(const Matrix6& K);

} // namespace screw
} // namespace gstk
