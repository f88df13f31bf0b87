#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "gstk/error.hpp"
#include "gstk/screw.hpp"
#include "oracles.hpp"

using namespace gstk;
using namespace gstk::screw;

namespace {

double max_abs(const Eigen::MatrixXd& m)
{
    return m.cwiseAbs().maxCoeff();
}

} // namespace

TEST_CASE("skew builds the cross-product matrix")
{
    Matrix3 expected;
    expected << 0, -3, 2, 3, 0, -1, -2, 1, 0;
    CHECK(max_abs(skew({1, 2, 3}) - expected) == 0.0);
    CHECK((skew(Vector3::UnitX()) * Vector3::UnitY() - Vector3::UnitZ()).norm() == 0.0);

    oracle::Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        const Vector3 p = rng.unit_vector() * rng.uniform(0.1, 5.0);
        const Vector3 v = rng.unit_vector();
        CHECK((skew(p) * p).norm() <= 1e-15 * p.squaredNorm());
        CHECK((skew(p) * v - p.cross(v)).norm() <= 1e-14);
    }
}

TEST_CASE("adjoint of simple poses")
{
    CHECK(max_abs(adjoint_of_pose(Pose::identity()).matrix() - Matrix6::Identity()) == 0.0);

    const Pose lift{Matrix3::Identity(), {0, 0, 1}};
    const Matrix6 A = adjoint_of_pose(lift).matrix();
    CHECK(max_abs(A.bottomLeftCorner<3, 3>() - skew({0, 0, 1})) == 0.0);

    const Pose shift{Matrix3::Identity(), {1, 0, 0}};
    const Wrench w = transform_wrench(adjoint_of_pose(shift), {{0, 0, 1}, {0, 0, 0}});
    CHECK((w.f - Vector3(0, 0, 1)).norm() == 0.0);
    CHECK((w.m - Vector3(0, -1, 0)).norm() == 0.0);

    const Wrench couple = transform_wrench(adjoint_of_pose({Matrix3::Identity(), {3, -2, 7}}), {{0, 0, 0}, {1, 2, 3}});
    CHECK(couple.f.norm() == 0.0);
    CHECK((couple.m - Vector3(1, 2, 3)).norm() == 0.0);
}

TEST_CASE("adjoint rejects non-rotations")
{
    Matrix3 bad = Matrix3::Identity();
    bad(0, 0) = 1.01;
    CHECK_THROWS_AS(adjoint_of_pose({bad, Vector3::Zero()}), DomainError);
    Matrix3 reflect = Matrix3::Identity();
    reflect(2, 2) = -1.0;
    CHECK_THROWS_AS(adjoint_of_pose({reflect, Vector3::Zero()}), DomainError);
}

TEST_CASE("adjoint laws over random poses")
{
    oracle::Rng rng(2024);
    const Matrix6 D = oracle::delta();
    for (int i = 0; i < 1000; ++i) {
        const Pose p1 = rng.pose(2.0);
        const Pose p2 = rng.pose(2.0);
        const AdjointTransform A1 = adjoint_of_pose(p1);
        const Matrix6 M = A1.matrix();
        const Matrix6 Minv = M.inverse();

        CHECK(max_abs(M - oracle::adjoint_blocks(p1)) <= 1e-15);
        CHECK(std::abs(M.determinant() - 1.0) <= 1e-9);
        CHECK(max_abs(A1.inverse().matrix() - Minv) <= 1e-9);
        CHECK(max_abs(adjoint_of_pose(p1.inverse()).matrix() - Minv) <= 1e-9);
        CHECK(max_abs(D * M * D - Minv.transpose()) <= 1e-9);
        CHECK(max_abs(M - D * Minv.transpose() * D) <= 1e-9);
        CHECK(max_abs(M.transpose() * D * M - D) <= 1e-9);
        CHECK(max_abs(adjoint_of_pose(p1.compose(p2)).matrix() - M * adjoint_of_pose(p2).matrix()) <= 1e-9);
        CHECK(max_abs((A1 * adjoint_of_pose(p2)).matrix() - M * adjoint_of_pose(p2).matrix()) <= 1e-12);

        // Wrench-twist power is frame independent.
        Vector6 wv, tv;
        for (int k = 0; k < 6; ++k) {
            wv(k) = rng.uniform(-1, 1);
            tv(k) = rng.uniform(-1, 1);
        }
        const Wrench w = transform_wrench(A1, Wrench::from_stacked(wv));
        const Twist t = transform_twist(A1, Twist::from_stacked(tv));
        CHECK(std::abs(w.stacked().dot(t.stacked()) - wv.dot(tv)) <= 1e-9);
        CHECK((t.stacked() - Minv.transpose() * tv).norm() <= 1e-9);
    }
}

TEST_CASE("pure rotation rotates twists and preserves spectra")
{
    oracle::Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        const Matrix3 R = rng.rotation();
        const AdjointTransform A = adjoint_of_pose({R, Vector3::Zero()});
        const Vector3 d = rng.unit_vector();
        const Vector3 th = rng.unit_vector();
        const Twist t = transform_twist(A, {d, th});
        CHECK((t.d - R * d).norm() <= 1e-12);
        CHECK((t.theta - R * th).norm() <= 1e-12);

        const Matrix6 I6 = congruence_map_stiffness(A, Matrix6::Identity());
        CHECK(max_abs(I6 - Matrix6::Identity()) <= 1e-12);

        const Matrix6 K = rng.symmetric();
        const Matrix6 KR = congruence_map_stiffness(A, K);
        const Eigen::SelfAdjointEigenSolver<Matrix6> e0(K), e1(KR);
        CHECK((e0.eigenvalues() - e1.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("congruence keeps symmetry and positive semidefiniteness")
{
    oracle::Rng rng(77);
    const Matrix6 K0 = rng.spd();
    CHECK(max_abs(congruence_map_stiffness(AdjointTransform{}, K0) - K0) == 0.0);
    for (int i = 0; i < 500; ++i) {
        const Matrix6 K = rng.spd();
        const Matrix6 KA = congruence_map_stiffness(adjoint_of_pose(rng.pose(1.0)), K);
        CHECK(relative_asymmetry(KA) == 0.0);
        const Eigen::SelfAdjointEigenSolver<Matrix6> es(KA);
        CHECK(es.eigenvalues().minCoeff() >= -1e-9 * es.eigenvalues().cwiseAbs().maxCoeff());
    }
    Matrix6 skewed = Matrix6::Identity();
    skewed(0, 1) = 0.5;
    CHECK_THROWS_AS(congruence_map_stiffness(AdjointTransform{}, skewed), DomainError);
    CHECK(relative_asymmetry(Matrix6::Zero()) == 0.0);
}

TEST_CASE("pose composition and inverse")
{
    oracle::Rng rng(9);
    for (int i = 0; i < 100; ++i) {
        const Pose a = rng.pose();
        const Pose e = a.compose(a.inverse());
        CHECK(max_abs(e.R - Matrix3::Identity()) <= 1e-12);
        CHECK(e.p.norm() <= 1e-12);
        const Vector3 x = rng.unit_vector();
        const Pose b = rng.pose();
        CHECK((a.compose(b).R * x + a.compose(b).p - (a.R * (b.R * x + b.p) + a.p)).norm() <= 1e-12);
    }
    CHECK(is_rotation(rot_x(0.3) * rot_y(-1.1) * rot_z(2.0), 1e-12));
    CHECK((rot_z(std::numbers::pi / 2) * Vector3::UnitX() - Vector3::UnitY()).norm() <= 1e-15);
}
