#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dosc/fockspace3d.hpp"
#include "dosc/spectrum.hpp"
#include "helpers.hpp"

using namespace dosc;
using testutil::registry;

namespace {

bool contains(const std::vector<double>& v, double x, double tol = 1e-12) {
    return std::any_of(v.begin(), v.end(), [&](double y) { return std::abs(x - y) < tol; });
}

}  // namespace

TEST_CASE("analytic 1D spectrum") {
    const auto e = analytic_spectrum_1d(1, 1, 4);
    CHECK(e.size() == 9);
    for (double x : {1.0, std::sqrt(3.0), -std::sqrt(3.0), std::sqrt(5.0), -std::sqrt(7.0), 3.0, -3.0}) CHECK(contains(e, x));
    CHECK(std::is_sorted(e.begin(), e.end()));
    for (double x : analytic_spectrum_1d(1.5, 0.0, 3)) CHECK(std::abs(std::abs(x) - 1.5) < 1e-15);
    const auto f = analytic_spectrum_1d(2, 0.5, 3);
    CHECK(contains(f, std::sqrt(10.0)));
    CHECK(contains(f, -std::sqrt(10.0)));
    CHECK_THROWS_AS(analytic_spectrum_1d(1, 1, 0), ConfigError);
}

TEST_CASE("closed form energies") {
    CHECK(theorem_energy(0, 1, 1, 1) == doctest::Approx(1.0));
    CHECK(theorem_energy(1, 1, 1, 1) == doctest::Approx(std::sqrt(7.0)));
    CHECK(theorem_energy(1, 3, 1, 1) == doctest::Approx(1.0));
    const auto l = analytic_spectrum_3d(1, 1, 1);
    auto find = [&](int n, int j2, double e) {
        return std::any_of(l.begin(), l.end(),
                           [&](const Level3D& x) { return x.n == n && x.j2 == j2 && std::abs(x.energy - e) < 1e-12; });
    };
    CHECK(find(1, 1, std::sqrt(7.0)));
    CHECK(find(1, 1, -std::sqrt(7.0)));
    CHECK(find(0, 1, 1.0));
    CHECK(find(1, 3, 1.0));
    // j = n + 1/2 has a single l-branch, so only +m is an eigenvalue there
    CHECK_FALSE(find(0, 1, -1.0));
    CHECK_FALSE(find(1, 3, -1.0));
}

TEST_CASE("numeric 1D spectrum") {
    const auto model = OscillatorModel::make(1, 1, 1, 60);
    const NumericSpectrum s = numeric_spectrum(model);
    std::vector<double> trusted;
    for (size_t i = 0; i < s.values.size(); ++i)
        if (s.edge_weight[i] < 1e-8) trusted.push_back(s.values[i]);
    for (double x : {-std::sqrt(5.0), -std::sqrt(3.0), 1.0, std::sqrt(3.0), std::sqrt(5.0)}) CHECK(contains(trusted, x, 1e-8));
    double sum = 0;
    for (double v : s.values) sum += v;
    CHECK(std::abs(sum - s.trace) < 1e-8);
    CHECK(s.hermiticity < 1e-12);
    // E -> -E symmetric apart from the unpaired +m level
    for (double x : trusted)
        if (std::abs(x - 1.0) > 1e-8) CHECK(contains(trusted, -x, 1e-8));
    CHECK_FALSE(contains(trusted, -1.0, 1e-6));
}

TEST_CASE("non-Hermitian input is rejected") {
    const auto& reg = registry(1, 10);
    CHECK_THROWS(numeric_spectrum(reg["b+"], reg.occupation(), reg.n_max()));
}

TEST_CASE("spectrum reports") {
    SUBCASE("1D defaults") {
        const auto r = spectrum_report(OscillatorModel::make(1));
        CHECK(r.pass);
        CHECK(r.trusted_count >= 10);
        CHECK(r.max_error < 1e-8);
    }
    SUBCASE("2D matches the joint N, C_LS prediction") {
        const auto r = spectrum_report(OscillatorModel::make(2));
        CHECK(r.pass);
        CHECK(r.abs_energy);
        CHECK(r.unmatched.empty());
    }
    SUBCASE("3D at m = omega = 1, n_max 8") {
        const auto r = spectrum_report(OscillatorModel::make(3, 1, 1, 8), 1e-7);
        CHECK(r.pass);
        CHECK(r.trusted_count == 280);
        int plus_one = 0;
        for (const auto& m : r.matches)
            if (std::abs(m.analytic - 1.0) < 1e-12) plus_one = m.numeric_count;
        CHECK(plus_one >= 6);
        CHECK(plus_one == 56);
        double smallest = 1e9;
        for (const auto& m : r.matches) smallest = std::min(smallest, std::abs(m.numeric));
        CHECK(smallest == doctest::Approx(1.0));
    }
    SUBCASE("away from m = omega = 1") {
        CHECK(spectrum_report(OscillatorModel::make(1, 1.3, 0.7)).pass);
        CHECK(spectrum_report(OscillatorModel::make(3, 1.3, 0.7)).pass);
    }
}

TEST_CASE("exact duplicate lists match at tol 0") {
    NumericSpectrum s;
    s.values = {-2.0, 1.0, 2.0};
    s.edge_weight = {0, 0, 0};
    std::vector<AnalyticLevel> a{{-2.0, 1, "a"}, {1.0, 1, "b"}, {2.0, 1, "c"}};
    const auto r = match_spectra(a, s, 0.0, 1e-8);
    CHECK(r.pass);
    CHECK(r.max_error == 0.0);
    s.values[1] = 1.5;
    CHECK_FALSE(match_spectra(a, s, 0.0, 1e-8).pass);
}

TEST_CASE("csv and json output") {
    const auto r = spectrum_report(OscillatorModel::make(1, 1, 1, 20));
    const std::string csv = to_csv(r);
    CHECK(csv.rfind("E_analytic,E_numeric,abs_err,multiplicity,labels\n", 0) == 0);
    const json j = to_json(r);
    CHECK(j["pass"].get<bool>());
    CHECK(j["matches"].size() == r.matches.size());
}

TEST_CASE("1D raising from the vacuum") {
    const auto& reg = registry(1, 40);
    const Vec vac = vacuum_1d(reg);
    CHECK((reg["beta"] * vac - vac).norm() < 1e-12);
    CHECK((reg["H0"] * vac).norm() < 1e-12);
    const Vec up = raise_eigenvector_1d(reg, vac, 1.0, 1);
    const Vec dn = raise_eigenvector_1d(reg, vac, 1.0, -1);
    CHECK((reg["H"] * up - std::sqrt(3.0) * up).norm() < 1e-7);
    CHECK((reg["H"] * dn + std::sqrt(3.0) * dn).norm() < 1e-7);
    CHECK(std::abs(up.dot(vac)) < 1e-12);
    CHECK(vacuum_report_1d(reg, 5).pass());
    SUBCASE("edge-supported input") {
        Vec top = Vec::Zero(reg.side());
        top(40) = 1.0;
        CHECK_THROWS_AS(raise_eigenvector_1d(reg, top, 1.0, 1), ConfigError);
    }
}

TEST_CASE("3D closed form eigenvectors") {
    const auto& reg = registry(3);
    const FockBasis3D b = build_basis(reg, 4);
    const SpMat& h = reg["H"];
    SUBCASE("n=1, j=1/2 gives +-sqrt 7") {
        const auto [p, m] = eigenvectors_3d(reg, b, 1, 1, 1);
        CHECK((h * p - std::sqrt(7.0) * p).norm() / p.norm() < 1e-7);
        REQUIRE(m.size() > 0);
        CHECK((h * m + std::sqrt(7.0) * m).norm() / m.norm() < 1e-7);
    }
    SUBCASE("n=0, j=1/2 has only the +1 state") {
        const auto [p, m] = eigenvectors_3d(reg, b, 0, 1, -1);
        CHECK((h * p - p).norm() / p.norm() < 1e-7);
        CHECK(m.size() == 0);
    }
    SUBCASE("every pair up to n = 4") {
        for (int n = 0; n <= 4; ++n)
            for (int j2 = 1; j2 <= 2 * n + 1; j2 += 2) {
                const double e = theorem_energy(n, j2, 1, 1);
                const auto [p, m] = eigenvectors_3d(reg, b, n, j2, j2);
                CHECK((h * p - e * p).norm() / p.norm() < 1e-7);
                if (m.size()) CHECK((h * m + e * m).norm() / m.norm() < 1e-7);
            }
    }
    CHECK_THROWS_AS(eigenvectors_3d(reg, b, 5, 1, 1), ConfigError);
}
