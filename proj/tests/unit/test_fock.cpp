#include <doctest.h>

#include <cmath>

#include "dosc/fock.hpp"

using namespace dosc;

TEST_CASE("two-level truncation") {
    const ModeOps m = build_mode_ops({1});
    Mat expect(2, 2);
    expect << 0, 1, 0, 0;
    CHECK((Mat(m.lower) - expect).norm() == 0.0);
}

TEST_CASE("ladder matrix elements") {
    const ModeOps m = build_mode_ops({5});
    CHECK(std::abs(m.raise.coeff(3, 2) - std::sqrt(3.0)) < 1e-15);
    CHECK(std::abs(m.lower.coeff(2, 3) - std::sqrt(3.0)) < 1e-15);
    CHECK(frob(SpMat(m.raise - SpMat(m.lower.adjoint()))) == 0.0);
    CHECK(m.raise.col(5).norm() == 0.0);
    for (int k = 0; k <= 5; ++k) CHECK(m.number.coeff(k, k) == cplx(k));
}

TEST_CASE("canonical commutator on the depth-1 interior") {
    const FockCutoff c{8};
    const ModeOps m = build_mode_ops(c);
    const InteriorProjector p = interior_projector(1, 1, c, 1);
    const SpMat comm = m.lower * m.raise - m.raise * m.lower;
    SpMat id(9, 9);
    id.setIdentity();
    CHECK(frob(SpMat(p.matrix * (comm - id) * p.matrix)) < 1e-12);
    // the top state shows the truncation
    CHECK(frob(SpMat(comm - id)) > 1.0);
}

TEST_CASE("embed") {
    const FockCutoff c{2};
    const ModeOps m = build_mode_ops(c);
    SUBCASE("trace of N1 over spinor x mode1 x mode2") {
        const SpMat n1 = embed(m.number, 1, 2, c, 4);
        CHECK(n1.rows() == 36);
        cplx tr = 0;
        for (int i = 0; i < 36; ++i) tr += n1.coeff(i, i);
        CHECK(tr.real() == doctest::Approx(36.0));
    }
    SUBCASE("identity embeds to identity") {
        SpMat id(3, 3);
        id.setIdentity();
        SpMat full(36, 36);
        full.setIdentity();
        CHECK(frob(SpMat(embed(id, 2, 2, c, 4) - full)) == 0.0);
    }
    SUBCASE("distinct modes commute exactly") {
        const SpMat a = embed(m.lower, 1, 3, c, 2);
        const SpMat b = embed(m.raise, 3, 3, c, 2);
        CHECK(frob(SpMat(a * b - b * a)) == 0.0);
    }
    SUBCASE("mode out of range") {
        CHECK_THROWS_AS(embed(m.lower, 0, 2, c, 4), ConfigError);
        CHECK_THROWS_AS(embed(m.lower, 3, 2, c, 4), ConfigError);
    }
}

TEST_CASE("interior projector") {
    const FockCutoff c{3};
    SUBCASE("depth 0 is the identity in d=1") {
        const InteriorProjector p = interior_projector(0, 1, c, 4);
        SpMat id(p.matrix.rows(), p.matrix.cols());
        id.setIdentity();
        CHECK(frob(SpMat(p.matrix - id)) == 0.0);
    }
    SUBCASE("depth 0 in d=2 keeps total occupation <= n_max") {
        const InteriorProjector p = interior_projector(0, 2, c, 4);
        CHECK(p.indices.size() == 4 * 10);
    }
    SUBCASE("d=1, depth 2 keeps n <= 1") {
        const InteriorProjector p = interior_projector(2, 1, c, 4);
        CHECK(p.indices.size() == 8);
    }
    SUBCASE("nested projectors") {
        const InteriorProjector p1 = interior_projector(1, 2, c, 2);
        const InteriorProjector p2 = interior_projector(2, 2, c, 2);
        CHECK(frob(SpMat(p1.matrix * p2.matrix - p2.matrix)) == 0.0);
        CHECK(frob(SpMat(p1.matrix * p1.matrix - p1.matrix)) == 0.0);
    }
    SUBCASE("commutes with the total number") {
        const ModeOps m = build_mode_ops(c);
        const SpMat n = embed(m.number, 1, 2, c, 2) + embed(m.number, 2, 2, c, 2);
        const InteriorProjector p = interior_projector(2, 2, c, 2);
        CHECK(frob(SpMat(p.matrix * n - n * p.matrix)) == 0.0);
    }
    SUBCASE("depth beyond the cutoff") { CHECK_THROWS_AS(interior_projector(4, 1, c, 4), ConfigError); }
}

TEST_CASE("column selector and occupation") {
    const FockCutoff c{2};
    const auto occ = total_occupation(2, c, 2);
    CHECK(occ.size() == 18);
    CHECK(occ[0] == 0);
    CHECK(occ[8] == 4);
    const SpMat v = column_selector(occ, 1);
    CHECK(v.cols() == 6);
}

TEST_CASE("compress keeps the low block") {
    const FockCutoff big{5}, small{3};
    const ModeOps mb = build_mode_ops(big), ms = build_mode_ops(small);
    const SpMat x = embed(SpMat(mb.lower + mb.raise), 1, 1, big, 2);
    const SpMat y = embed(SpMat(ms.lower + ms.raise), 1, 1, small, 2);
    CHECK(frob(SpMat(compress(x, 1, big, small, 2) - y)) == 0.0);
}
