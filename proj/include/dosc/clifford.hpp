#pragma once

#include <vector>

#include "dosc/report.hpp"
#include "dosc/types.hpp"

namespace dosc {

enum class Flavor { dirac4, minimal };

struct CliffordRep {
    int spatial_dim = 0;
    std::vector<Mat> generators;  // alpha_1 .. alpha_d, beta last
    int rep_dim = 0;
    Flavor flavor = Flavor::dirac4;

    const Mat& beta() const { return generators.back(); }
    const Mat& alpha(int i) const { return generators.at(static_cast<size_t>(i)); }
};

Mat pauli(int i);  // i = 1, 2, 3

CliffordRep dirac_representation(int spatial_dim);
// beta = sigma_3, alpha_1 = sigma_1, alpha_2 = sigma_2; spatial_dim <= 2.
CliffordRep minimal_representation(int spatial_dim);

// S_1..S_3 in 3D, or the single S_0 = -(i/2) alpha_1 alpha_2 in 2D.
std::vector<Mat> spin_matrices(const CliffordRep& rep);

VerificationReport verify_clifford(const CliffordRep& rep);

}  // namespace dosc
