#include "dosc/clifford.hpp"

namespace dosc {

Mat pauli(int i) {
    Mat s = Mat::Zero(2, 2);
    switch (i) {
        case 1: s(0, 1) = 1; s(1, 0) = 1; break;
        case 2: s(0, 1) = -I; s(1, 0) = I; break;
        case 3: s(0, 0) = 1; s(1, 1) = -1; break;
        default: throw ConfigError("pauli index must be 1, 2 or 3");
    }
    return s;
}

namespace {

Mat block2(const Mat& a, const Mat& b, const Mat& c, const Mat& d) {
    Mat m(4, 4);
    m << a, b, c, d;
    return m;
}

void check_dim(int d, int hi) {
    if (d < 1 || d > hi) throw ConfigError("spatial_dim must be in 1.." + std::to_string(hi) + ", got " + std::to_string(d));
}

}  // namespace

CliffordRep dirac_representation(int spatial_dim) {
    check_dim(spatial_dim, 3);
    const Mat id = Mat::Identity(2, 2), z = Mat::Zero(2, 2);
    CliffordRep rep;
    rep.spatial_dim = spatial_dim;
    rep.rep_dim = 4;
    rep.flavor = Flavor::dirac4;
    for (int i = 1; i <= spatial_dim; ++i) rep.generators.push_back(block2(z, pauli(i), pauli(i), z));
    rep.generators.push_back(block2(id, z, z, -id));
    return rep;
}

CliffordRep minimal_representation(int spatial_dim) {
    check_dim(spatial_dim, 2);
    CliffordRep rep;
    rep.spatial_dim = spatial_dim;
    rep.rep_dim = 2;
    rep.flavor = Flavor::minimal;
    for (int i = 1; i <= spatial_dim; ++i) rep.generators.push_back(pauli(i));
    rep.generators.push_back(pauli(3));
    return rep;
}

std::vector<Mat> spin_matrices(const CliffordRep& rep) {
    const auto& a = rep.generators;
    if (rep.spatial_dim == 2) return {-0.5 * I * a[0] * a[1]};
    if (rep.spatial_dim == 3) return {-0.5 * I * a[1] * a[2], -0.5 * I * a[2] * a[0], -0.5 * I * a[0] * a[1]};
    throw ConfigError("spin matrices need spatial_dim 2 or 3");
}

VerificationReport verify_clifford(const CliffordRep& rep) {
    VerificationReport r;
    r.name = "clifford";
    const auto& g = rep.generators;
    const Mat id = Mat::Identity(rep.rep_dim, rep.rep_dim);
    for (size_t j = 0; j < g.size(); ++j) {
        for (size_t k = j; k < g.size(); ++k) {
            Mat d = g[j] * g[k] + g[k] * g[j] - (j == k ? 2.0 : 0.0) * id;
            CheckResult c;
            c.id = "{g" + std::to_string(j + 1) + ",g" + std::to_string(k + 1) + "}";
            c.group = "anticommutator";
            c.residual = d.norm();
            c.tol = 0.0;  // exact
            r.add(c);
        }
        CheckResult h;
        h.id = "hermitian g" + std::to_string(j + 1);
        h.group = "hermitian";
        h.residual = (g[j] - g[j].adjoint()).norm();
        h.tol = 0.0;
        r.add(h);
    }
    r.meta["spatial_dim"] = rep.spatial_dim;
    r.meta["rep_dim"] = rep.rep_dim;
    r.meta["flavor"] = rep.flavor == Flavor::dirac4 ? "dirac4" : "minimal";
    return r;
}

}  // namespace dosc
