#include "dosc/fock.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

namespace dosc {

namespace {

SpMat identity(int n) {
    SpMat id(n, n);
    id.setIdentity();
    return id;
}

int ipow(int b, int e) {
    int r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace

ModeOps build_mode_ops(FockCutoff cutoff) {
    if (cutoff.n_max < 1) throw ConfigError("n_max must be >= 1");
    const int q = cutoff.n_max + 1;
    ModeOps ops;
    ops.lower.resize(q, q);
    ops.number.resize(q, q);
    std::vector<Eigen::Triplet<cplx>> lo, nu;
    for (int k = 1; k < q; ++k) lo.emplace_back(k - 1, k, std::sqrt(static_cast<double>(k)));
    for (int k = 0; k < q; ++k) nu.emplace_back(k, k, static_cast<double>(k));
    ops.lower.setFromTriplets(lo.begin(), lo.end());
    ops.number.setFromTriplets(nu.begin(), nu.end());
    ops.raise = ops.lower.adjoint();
    return ops;
}

SpMat embed(const SpMat& op, int mode, int d, FockCutoff cutoff, int spinor_dim) {
    if (mode < 1 || mode > d) throw ConfigError("mode out of range");
    const int q = cutoff.n_max + 1;
    SpMat left = identity(spinor_dim * ipow(q, mode - 1));
    SpMat right = identity(ipow(q, d - mode));
    SpMat t = Eigen::kroneckerProduct(left, op);
    return Eigen::kroneckerProduct(t, right);
}

SpMat embed_spinor(const Mat& spin, int d, FockCutoff cutoff) {
    SpMat s = spin.sparseView();
    return Eigen::kroneckerProduct(s, identity(ipow(cutoff.n_max + 1, d)));
}

std::vector<int> total_occupation(int d, FockCutoff cutoff, int spinor_dim) {
    const int q = cutoff.n_max + 1, nb = ipow(q, d);
    std::vector<int> occ(static_cast<size_t>(spinor_dim * nb));
    for (int b = 0; b < nb; ++b) {
        int s = 0, r = b;
        for (int i = 0; i < d; ++i) { s += r % q; r /= q; }
        for (int sp = 0; sp < spinor_dim; ++sp) occ[static_cast<size_t>(sp * nb + b)] = s;
    }
    return occ;
}

InteriorProjector interior_projector(int depth, int d, FockCutoff cutoff, int spinor_dim) {
    if (depth < 0 || depth > cutoff.n_max) throw ConfigError("depth must be in 0..n_max");
    InteriorProjector p;
    p.depth = depth;
    const auto occ = total_occupation(d, cutoff, spinor_dim);
    const int n = static_cast<int>(occ.size());
    p.matrix.resize(n, n);
    std::vector<Eigen::Triplet<cplx>> t;
    for (int i = 0; i < n; ++i)
        if (occ[static_cast<size_t>(i)] <= cutoff.n_max - depth) {
            p.indices.push_back(i);
            t.emplace_back(i, i, 1.0);
        }
    p.matrix.setFromTriplets(t.begin(), t.end());
    return p;
}

SpMat column_selector(const std::vector<int>& occupation, int limit) {
    std::vector<Eigen::Triplet<cplx>> t;
    int c = 0;
    for (size_t i = 0; i < occupation.size(); ++i)
        if (occupation[i] <= limit) t.emplace_back(static_cast<int>(i), c++, 1.0);
    SpMat p(static_cast<int>(occupation.size()), c);
    p.setFromTriplets(t.begin(), t.end());
    return p;
}

SpMat compress(const SpMat& op, int d, FockCutoff big, FockCutoff small, int spinor_dim) {
    const int qb = big.n_max + 1, qs = small.n_max + 1;
    const int nbb = ipow(qb, d), nbs = ipow(qs, d);
    // index map small -> big
    std::vector<int> map(static_cast<size_t>(spinor_dim * nbs));
    for (int sp = 0; sp < spinor_dim; ++sp)
        for (int b = 0; b < nbs; ++b) {
            // digits: mode 1 is most significant
            int r = b, bigidx = 0, mul = 1;
            for (int i = 0; i < d; ++i) {
                bigidx += (r % qs) * mul;
                r /= qs;
                mul *= qb;
            }
            map[static_cast<size_t>(sp * nbs + b)] = sp * nbb + bigidx;
        }
    std::vector<int> inv(static_cast<size_t>(spinor_dim * nbb), -1);
    for (size_t i = 0; i < map.size(); ++i) inv[static_cast<size_t>(map[i])] = static_cast<int>(i);
    std::vector<Eigen::Triplet<cplx>> t;
    for (int k = 0; k < op.outerSize(); ++k) {
        const int cs = inv[static_cast<size_t>(k)];
        if (cs < 0) continue;
        for (SpMat::InnerIterator it(op, k); it; ++it) {
            const int rs = inv[static_cast<size_t>(it.row())];
            if (rs >= 0) t.emplace_back(rs, cs, it.value());
        }
    }
    SpMat out(static_cast<int>(map.size()), static_cast<int>(map.size()));
    out.setFromTriplets(t.begin(), t.end());
    return out;
}

}  // namespace dosc
