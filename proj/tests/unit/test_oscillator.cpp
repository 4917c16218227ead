#include <doctest.h>

#include <cmath>

#include "dosc/oscillator.hpp"
#include "dosc/spectrum.hpp"
#include "helpers.hpp"

using namespace dosc;
using testutil::registry;
using testutil::residual;

TEST_CASE("model validation") {
    CHECK_THROWS_AS(OscillatorModel::make(4), ConfigError);
    CHECK_THROWS_AS(OscillatorModel::make(1, -1.0), ConfigError);
    CHECK_THROWS_AS(OscillatorModel::make(1, 1.0, 0.0), ConfigError);
    CHECK(OscillatorModel::make(1).cutoff.n_max == 40);
    CHECK(OscillatorModel::make(2).cutoff.n_max == 16);
    CHECK(OscillatorModel::make(3).cutoff.n_max == 8);
    CHECK(OscillatorModel::make(3).side() == 4 * 729);
}

TEST_CASE("hamiltonian is Hermitian and inhomogeneous") {
    for (int d = 1; d <= 3; ++d) {
        const GradedOperator h = build_hamiltonian(OscillatorModel::make(d, 1.3, 0.7));
        CHECK(frob(SpMat(h.matrix - SpMat(h.matrix.adjoint()))) < 1e-12);
        CHECK_FALSE(h.degree.has_value());
    }
}

TEST_CASE("1D ladders") {
    const auto& reg = registry(1, 30);
    SUBCASE("vacuum expectation of H is m") {
        const Vec v = vacuum_1d(reg);
        CHECK(std::abs(v.dot(reg["H"] * v) - cplx(1.0)) < 1e-12);
    }
    CHECK(residual(reg, "(comm (* H H) b-)", "(* -2 b-)") < 1e-10);
    CHECK(residual(reg, "(acomm s- s-)", "0") == 0.0);
    CHECK(residual(reg, "(acomm H s+)", "(* (sqrt 2) b+)") < 1e-10);
    CHECK(residual(reg, "(acomm H s-)", "(* (sqrt 2) b-)") < 1e-10);
    CHECK(*reg.at("b-").degree == Degree::parse("10"));
    CHECK(*reg.at("s+").degree == Degree::parse("11"));
    CHECK(*reg.at("b-*s+").degree == Degree::parse("01"));
}

TEST_CASE("1D ladders away from m = omega = 1") {
    const auto& reg = registry(1, 30, 1.3, 0.7);
    CHECK(residual(reg, "(comm (* H H) b+)", "(* 2 m omega b+)") < 1e-10);
    CHECK(residual(reg, "(acomm b- b+)", "(* 2 (/ 1 omega) Hsch)") < 1e-10);
    // the printed form without 1/omega does not hold here
    CHECK(residual(reg, "(acomm b- b+)", "(* 2 Hsch)") > 1e-3);
}

TEST_CASE("2D ladders") {
    const auto& reg = registry(2);
    for (const char* j : {"1", "2"}) {
        CAPTURE(j);
        CHECK(residual(reg, std::string("(comm H c-") + j + ")", "0") < 1e-12);
        CHECK(residual(reg, std::string("(comm H c+") + j + ")", "0") < 1e-12);
        CHECK(residual(reg, std::string("(comm (* H H) a+") + j + ")", std::string("(* 4 a+") + j + ")") < 1e-10);
        CHECK(residual(reg, std::string("(comm (* H H) a-") + j + ")", std::string("(* -4 a-") + j + ")") < 1e-10);
    }
    SUBCASE("N counts both presentations") {
        CHECK(residual(reg, "N", "(+ (* b+1 b-1) (* b+2 b-2) (* 0.5 s+1 s-1) (* 0.5 s+2 s-2))") < 1e-10);
        CHECK(residual(reg, "N",
                       "(* 0.5 (+ (* a+1 a-1) (* a+2 a-2) (* c+1 c-1) (* c+2 c-2) (* s+1 s-1) (* s+2 s-2)))") < 1e-10);
    }
}

TEST_CASE("2D witnesses: printed value fails, corrected value holds") {
    const auto& reg = registry(2);
    VerifyOptions opt;
    const auto printed = verify_relations("printed", witnesses_2d(true), reg, opt);
    const auto fixed = verify_relations("corrected", witnesses_2d(false), reg, opt);
    REQUIRE(printed.checks.size() == 3);
    for (const auto& c : printed.checks) CHECK(c.residual > 1.0);
    CHECK(fixed.pass());
    CHECK(fixed.max_residual() < 1e-12);
    // the anticommutator is nonzero, so the s family is not fermionic
    CHECK(residual(reg, "(acomm s-1 s+2)", "0") > 1.0);
}

TEST_CASE("3D ladders") {
    const auto& reg = registry(3);
    CHECK(residual(reg, "(* H H)", "(+ (* 2 m omega (+ N C_LS Id)) (* m m Id))") < 1e-10);
    CHECK(residual(reg, "H", "(- (* (sqrt (* 2 m omega)) (+ (* Bs+ Ss-) (* Bs- Ss+))) (* 2 m Sc))") < 1e-10);
    CHECK(residual(reg, "(* T+ T+)", "(* Bs+ Bs+)") < 1e-10);
    CHECK(residual(reg, "(* T- T-)", "(* Bs- Bs-)") < 1e-10);
    SUBCASE("commutants of H") {
        for (const char* x : {"N", "C_LS", "Jsq", "J3"}) CHECK(residual(reg, std::string("(comm H ") + x + ")", "0") < 1e-10);
        CHECK(residual(reg, "(comm (* H H) Lsq)", "0") < 1e-10);
        CHECK(residual(reg, "(comm (* H H) beta)", "0") < 1e-10);
    }
    SUBCASE("z2cubed recomposition") {
        CHECK(residual(reg, "H", "(+ H1 H2 H3 (* m beta))") < 1e-10);
        CHECK(residual(reg, "N", "(- (+ N1 N2 N3 beta) Id)") < 1e-10);
        CHECK(residual(reg, "Bs-", "(+ Bs-1 Bs-2 Bs-3)") < 1e-10);
    }
}

TEST_CASE("model identities hold in every dimension") {
    for (int d = 1; d <= 3; ++d) {
        CAPTURE(d);
        const auto rep = verify_relations("identities", model_identities(d), registry(d), VerifyOptions{});
        CHECK(rep.pass());
        CHECK(rep.max_residual() < 1e-10);
    }
}

TEST_CASE("adjoint pairs") {
    for (int d = 1; d <= 3; ++d) {
        const auto rep = adjoint_report(registry(d), d);
        CHECK(rep.pass());
        CHECK(rep.checks.size() >= 2);
    }
}

TEST_CASE("chiral projector property") {
    const auto rep = chiral_projector_report(registry(2));
    CHECK(rep.pass());
    CHECK(rep.max_residual() < 1e-10);
}

TEST_CASE("parastatistics matrix") {
    for (int d = 1; d <= 3; ++d) {
        CAPTURE(d);
        const auto rep = parastatistics_audit_all(registry(d), d);
        CHECK(rep.pass());
    }
    SUBCASE("1D relative paraboson holds") {
        const auto rep = parastatistics_audit(registry(1), 1, "1d");
        bool found = false;
        for (const auto& c : rep.checks)
            if (c.id == "1d rel_paraboson") {
                found = true;
                CHECK(c.holds());
            }
        CHECK(found);
    }
    SUBCASE("2D [{a+j,a-j},a-k] = -2 a-k") {
        const auto& reg = registry(2);
        for (const char* j : {"1", "2"})
            for (const char* k : {"1", "2"})
                CHECK(residual(reg, std::string("(comm (acomm a+") + j + " a-" + j + ") a-" + k + ")",
                               std::string("(* -2 a-") + k + ")") < 1e-10);
    }
    SUBCASE("3D B-s is parabosonic but not bosonic") {
        const auto rep = parastatistics_audit(registry(3), 3, "3d-spin");
        for (const auto& c : rep.checks) {
            if (c.id == "3d-spin paraboson") CHECK(c.holds());
            if (c.id == "3d-spin boson") CHECK_FALSE(c.holds());
        }
    }
    CHECK_THROWS_AS(parastatistics_audit(registry(1), 1, "nope"), ConfigError);
}
