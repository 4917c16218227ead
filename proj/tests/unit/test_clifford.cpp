#include <doctest.h>

#include "dosc/clifford.hpp"

using namespace dosc;

namespace {

Mat blockdiag(const Mat& a) {
    Mat m = Mat::Zero(4, 4);
    m.block(0, 0, 2, 2) = a;
    m.block(2, 2, 2, 2) = a;
    return m;
}

}  // namespace

TEST_CASE("dirac representation anticommutators are exact") {
    for (int d = 1; d <= 3; ++d) {
        const CliffordRep rep = dirac_representation(d);
        CHECK(rep.rep_dim == 4);
        CHECK(rep.generators.size() == static_cast<size_t>(d + 1));
        const Mat id = Mat::Identity(4, 4);
        for (size_t j = 0; j < rep.generators.size(); ++j)
            for (size_t k = 0; k < rep.generators.size(); ++k) {
                const Mat ac = rep.generators[j] * rep.generators[k] + rep.generators[k] * rep.generators[j];
                CHECK((ac - (j == k ? 2.0 : 0.0) * id).norm() == 0.0);
            }
        for (const auto& g : rep.generators) CHECK((g - g.adjoint()).norm() == 0.0);
    }
}

TEST_CASE("3D beta is diag(1,1,-1,-1)") {
    const Mat b = dirac_representation(3).beta();
    CHECK((b.diagonal().real() - Eigen::Vector4d(1, 1, -1, -1)).norm() == 0.0);
    CHECK((b - Mat(b.diagonal().asDiagonal())).norm() == 0.0);
}

TEST_CASE("1D alpha and beta anticommute") {
    const CliffordRep r = dirac_representation(1);
    CHECK((r.alpha(0) * r.beta() + r.beta() * r.alpha(0)).norm() == 0.0);
    CHECK((r.beta() * r.beta() * 2.0 - 2.0 * Mat::Identity(4, 4)).norm() == 0.0);
}

TEST_CASE("spatial dimension is validated") {
    CHECK_THROWS_AS(dirac_representation(0), ConfigError);
    CHECK_THROWS_AS(dirac_representation(4), ConfigError);
    CHECK_THROWS_AS(minimal_representation(3), ConfigError);
    CHECK_THROWS_AS(spin_matrices(dirac_representation(1)), ConfigError);
}

TEST_CASE("3D spin matrices are the standard ones") {
    const auto s = spin_matrices(dirac_representation(3));
    REQUIRE(s.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK((s[static_cast<size_t>(i)] - 0.5 * blockdiag(pauli(i + 1))).norm() < 1e-15);
        CHECK((s[static_cast<size_t>(i)] * s[static_cast<size_t>(i)] - 0.25 * Mat::Identity(4, 4)).norm() < 1e-15);
    }
    const cplx I(0, 1);
    for (int i = 0; i < 3; ++i) {
        const Mat& a = s[static_cast<size_t>(i)];
        const Mat& b = s[static_cast<size_t>((i + 1) % 3)];
        const Mat& c = s[static_cast<size_t>((i + 2) % 3)];
        CHECK((a * b - b * a - I * c).norm() < 1e-15);
    }
}

TEST_CASE("2D spin is S0 = diag(sz, sz)/2") {
    const auto s = spin_matrices(dirac_representation(2));
    REQUIRE(s.size() == 1);
    CHECK((s[0] - 0.5 * blockdiag(pauli(3))).norm() < 1e-15);
}

TEST_CASE("verify_clifford") {
    SUBCASE("dirac 2D has zero residuals") {
        const auto r = verify_clifford(dirac_representation(2));
        CHECK(r.pass());
        for (const auto& c : r.checks) CHECK(c.residual == 0.0);
    }
    SUBCASE("minimal 1D passes") {
        const CliffordRep m = minimal_representation(1);
        CHECK(m.rep_dim == 2);
        CHECK(verify_clifford(m).pass());
    }
    SUBCASE("a corrupted generator is flagged") {
        CliffordRep r = dirac_representation(3);
        r.generators[1](0, 3) += 0.25;
        r.generators[1](3, 0) += 0.25;
        const auto rep = verify_clifford(r);
        CHECK_FALSE(rep.pass());
        CHECK(rep.max_residual() > 0.1);
    }
}
