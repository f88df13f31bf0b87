#include "gstk/screw.hpp"

#include <cmath>

#include "gstk/error.hpp"

namespace gstk::screw {

Vector6 Wrench::stacked() const
{
    Vector6 v;
    v << f, m;
    return v;
}

Wrench Wrench::from_stacked(const Vector6& v)
{
    return {v.head<3>(), v.tail<3>()};
}

Vector6 Twist::stacked() const
{
    Vector6 v;
    v << d, theta;
    return v;
}

Twist Twist::from_stacked(const Vector6& v)
{
    return {v.head<3>(), v.tail<3>()};
}

Pose Pose::compose(const Pose& other) const
{
    return {R * other.R, p + R * other.p};
}

Pose Pose::inverse() const
{
    Matrix3 Rt = R.transpose();
    return {Rt, -(Rt * p)};
}

bool is_rotation(const Matrix3& R, double tol)
{
    if (!R.allFinite())
        return false;
    if ((R.transpose() * R - Matrix3::Identity()).cwiseAbs().maxCoeff() > tol)
        return false;
    return std::abs(R.determinant() - 1.0) <= tol;
}

Matrix3 rot_x(double angle)
{
    return Eigen::AngleAxisd(angle, Vector3::UnitX()).toRotationMatrix();
}

Matrix3 rot_y(double angle)
{
    return Eigen::AngleAxisd(angle, Vector3::UnitY()).toRotationMatrix();
}

Matrix3 rot_z(double angle)
{
    return Eigen::AngleAxisd(angle, Vector3::UnitZ()).toRotationMatrix();
}

Matrix3 skew(const Vector3& p)
{
    Matrix3 S;
    S << 0.0, -p.z(), p.y(),
         p.z(), 0.0, -p.x(),
         -p.y(), p.x(), 0.0;
    return S;
}

const Matrix6& elliptical_polar()
{
    static const Matrix6 delta = [] {
        Matrix6 d = Matrix6::Zero();
        d.topRightCorner<3, 3>().setIdentity();
        d.bottomLeftCorner<3, 3>().setIdentity();
        return d;
    }();
    return delta;
}

AdjointTransform AdjointTransform::inverse() const
{
    // [[Rᵀ, 0], [-Rᵀ skew(p), Rᵀ]] with skew(p) R = lower-left block.
    const Matrix3 R = m_.topLeftCorner<3, 3>();
    const Matrix3 PR = m_.bottomLeftCorner<3, 3>();
    Matrix6 inv = Matrix6::Zero();
    inv.topLeftCorner<3, 3>() = R.transpose();
    inv.bottomRightCorner<3, 3>() = R.transpose();
    inv.bottomLeftCorner<3, 3>() = -R.transpose() * PR * R.transpose();
    return AdjointTransform(inv);
}

AdjointTransform AdjointTransform::operator*(const AdjointTransform& rhs) const
{
    Matrix6 prod = m_ * rhs.m_;
    prod.topRightCorner<3, 3>().setZero();
    return AdjointTransform(prod);
}

AdjointTransform adjoint_of_pose(const Pose& pose)
{
    if (!is_rotation(pose.R, 1e-9))
        throw DomainError("adjoint_of_pose: rotation block is not orthonormal with det +1");
    if (!pose.p.allFinite())
        throw DomainError("adjoint_of_pose: non-finite translation");

    Matrix6 m = Matrix6::Zero();
    m.topLeftCorner<3, 3>() = pose.R;
    m.bottomRightCorner<3, 3>() = pose.R;
    m.bottomLeftCorner<3, 3>() = skew(pose.p) * pose.R;
    return AdjointTransform(m);
}

Wrench transform_wrench(const AdjointTransform& adj, const Wrench& w)
{
    return Wrench::from_stacked(adj.matrix() * w.stacked());
}

Twist transform_twist(const AdjointTransform& adj, const Twist& t)
{
    const Matrix6& delta = elliptical_polar();
    return Twist::from_stacked(delta * (adj.matrix() * (delta * t.stacked())));
}

double relative_asymmetry(const Matrix6& K)
{
    const double norm = K.norm();
    if (norm == 0.0)
        return 0.0;
    return (K - K.transpose()).cwiseAbs().maxCoeff() / norm;
}

Matrix6 congruence_map_stiffness(const AdjointTransform& adj, const Matrix6& K)
{
    if (!K.allFinite() || relative_asymmetry(K) > 1e-9)
        throw DomainError("congruence_map_stiffness: stiffness matrix is not symmetric");
    Matrix6 out = adj.matrix() * K * adj.matrix().transpose();
    // Round-off makes the product asymmetric at the ulp level.
    return 0.5 * (out + out.transpose());
}

} // namespace gstk::screw
