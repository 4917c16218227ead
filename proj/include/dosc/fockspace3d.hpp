#pragma once

#include <map>
#include <utility>
#include <vector>

#include "dosc/graded.hpp"
#include "dosc/report.hpp"
#include "dosc/types.hpp"

namespace dosc {

struct FockLabel3D {
    int n = 0;
    int l = 0;
    int j2 = 1;    // 2j
    int j3x2 = 1;  // 2 j_3

    bool valid() const;
    auto key() const { return std::tuple(n, l, j2, j3x2); }
    bool operator<(const FockLabel3D& o) const { return key() < o.key(); }
    bool operator==(const FockLabel3D& o) const { return key() == o.key(); }
};

struct VacuumResult {
    Vec state;
    int kernel_dim = 0;
};

struct FockBasis3D {
    std::map<FockLabel3D, Vec> vectors;
    Vec vacuum;
    int n_build = 0;

    const Vec* find(const FockLabel3D& l) const;
};

VacuumResult find_vacuum(const OperatorRegistry& reg3d);

// Throws ConfigError when n_build > n_max - 2.
FockBasis3D build_basis(const OperatorRegistry& reg3d, int n_build);

// Eigenvalue checks for N, L^2, J^2, J_3, rank certificate, and per-n dimension counts.
VerificationReport verify_basis(const OperatorRegistry& reg3d, const FockBasis3D& basis);

VerificationReport verify_actions(const OperatorRegistry& reg3d, const FockBasis3D& basis, double tol = 1e-8);

VerificationReport injectivity_report(const OperatorRegistry& reg3d, unsigned seed = 20240601,
                                      double tol = 1e-10);

// Closed form eigenvectors built from the basis; first for E+, second for E-.
std::pair<Vec, Vec> eigenvectors_3d(const OperatorRegistry& reg3d, const FockBasis3D& basis,
                                    int n, int j2, int j3x2);

json basis_line(const FockLabel3D& l, const Vec& v, double drop = 1e-14);

}  // namespace dosc
