#include "dosc/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "dosc/fock.hpp"

namespace dosc {

std::vector<double> analytic_spectrum_1d(double m, double omega, int n_levels) {
    if (n_levels < 1) throw ConfigError("n_levels must be >= 1");
    std::vector<double> e{m};
    for (int n = 1; n <= n_levels; ++n) {
        const double v = std::sqrt(m * m + 2.0 * n * m * omega);
        e.push_back(v);
        e.push_back(-v);
    }
    std::sort(e.begin(), e.end());
    return e;
}

double theorem_energy(int n, int j2, double m, double omega) {
    const double j = 0.5 * j2;
    const bool odd = ((n * 2 - j2 + 1) / 2) % 2 != 0;
    const double e2 = odd ? 2 * m * omega * (n + j) + 3 * m * omega + m * m
                          : 2 * m * omega * (n - j) + m * omega + m * m;
    return std::sqrt(e2);
}

std::vector<Level3D> analytic_spectrum_3d(double m, double omega, int n_max_quantum) {
    std::vector<Level3D> out;
    for (int n = 0; n <= n_max_quantum; ++n)
        for (int j2 = 1; j2 <= 2 * n + 1; j2 += 2) {
            Level3D l;
            l.n = n;
            l.j2 = j2;
            l.odd = ((2 * n - j2 + 1) / 2) % 2 != 0;
            l.multiplicity = j2 + 1;
            l.energy = theorem_energy(n, j2, m, omega);
            out.push_back(l);
            // l = j + 1/2 <= n is needed for the second branch and the negative energy
            if (j2 + 1 <= 2 * n) {
                l.energy = -l.energy;
                out.push_back(l);
            }
        }
    std::stable_sort(out.begin(), out.end(), [](const Level3D& a, const Level3D& b) { return a.energy < b.energy; });
    return out;
}

// ---- block eigensolver ----

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(static_cast<size_t>(n)) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[static_cast<size_t>(x)] != x) x = p[static_cast<size_t>(x)] = p[static_cast<size_t>(p[static_cast<size_t>(x)])];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) p[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    }
};

bool same_level(double a, double b) { return std::abs(a - b) < 1e-9 * std::max(1.0, std::abs(a)); }

}  // namespace

Vec BlockEigen::vector(size_t i) const {
    if (block_vectors.empty()) throw ConfigError("eigenvectors were not requested");
    const auto [b, c] = origin.at(i);
    Vec v = Vec::Zero(side);
    const auto& idx = blocks[static_cast<size_t>(b)];
    for (size_t r = 0; r < idx.size(); ++r) v(idx[r]) = block_vectors[static_cast<size_t>(b)](static_cast<Eigen::Index>(r), c);
    return v;
}

BlockEigen block_eigensolve(SpMat h, bool want_vectors, double prune_rel, const std::vector<double>* edge_mask) {
    const int n = static_cast<int>(h.rows());
    if (h.cols() != n) throw ConfigError("matrix must be square");
    prune(h, prune_rel);
    UnionFind uf(n);
    for (int k = 0; k < h.outerSize(); ++k)
        for (SpMat::InnerIterator it(h, k); it; ++it) uf.unite(static_cast<int>(it.row()), k);

    BlockEigen out;
    out.side = n;
    std::vector<int> block_of(static_cast<size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        const int r = uf.find(i);
        if (block_of[static_cast<size_t>(r)] < 0) {
            block_of[static_cast<size_t>(r)] = static_cast<int>(out.blocks.size());
            out.blocks.emplace_back();
        }
        out.blocks[static_cast<size_t>(block_of[static_cast<size_t>(r)])].push_back(i);
    }

    struct Item {
        double value, edge;
        int block, col;
    };
    std::vector<Item> items;
    items.reserve(static_cast<size_t>(n));
    std::vector<int> local(static_cast<size_t>(n));
    const bool need_vec = want_vectors || edge_mask;
    for (size_t b = 0; b < out.blocks.size(); ++b) {
        const auto& idx = out.blocks[b];
        const auto sz = static_cast<Eigen::Index>(idx.size());
        for (Eigen::Index r = 0; r < sz; ++r) local[static_cast<size_t>(idx[static_cast<size_t>(r)])] = static_cast<int>(r);
        Mat dense = Mat::Zero(sz, sz);
        for (int k : idx)
            for (SpMat::InnerIterator it(h, k); it; ++it)
                dense(local[static_cast<size_t>(it.row())], local[static_cast<size_t>(k)]) = it.value();
        Eigen::SelfAdjointEigenSolver<Mat> es(dense, need_vec ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
        const Eigen::VectorXd vals = es.eigenvalues();
        Mat vecs;
        Eigen::VectorXd edge = Eigen::VectorXd::Zero(sz);
        if (need_vec) vecs = es.eigenvectors();
        if (edge_mask) {
            Eigen::VectorXd mask(sz);
            for (Eigen::Index r = 0; r < sz; ++r) mask(r) = (*edge_mask)[static_cast<size_t>(idx[static_cast<size_t>(r)])];
            for (Eigen::Index a = 0; a < sz;) {
                Eigen::Index e = a + 1;
                while (e < sz && same_level(vals(a), vals(e))) ++e;
                Mat vc = vecs.middleCols(a, e - a);
                Mat w = vc.adjoint() * mask.asDiagonal() * vc;
                Eigen::SelfAdjointEigenSolver<Mat> ew(w);
                vecs.middleCols(a, e - a) = vc * ew.eigenvectors();
                for (Eigen::Index c = a; c < e; ++c) edge(c) = std::max(0.0, ew.eigenvalues()(c - a));
                a = e;
            }
        }
        for (Eigen::Index c = 0; c < sz; ++c) items.push_back({vals(c), edge(c), static_cast<int>(b), static_cast<int>(c)});
        if (want_vectors) out.block_vectors.push_back(std::move(vecs));
    }
    std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.value < b.value; });
    for (const auto& it : items) {
        out.values.push_back(it.value);
        if (edge_mask) out.edge_weight.push_back(it.edge);
        out.origin.emplace_back(it.block, it.col);
    }
    return out;
}

NumericSpectrum numeric_spectrum(const SpMat& h, const std::vector<int>& occupation, int n_max, bool want_vectors) {
    NumericSpectrum s;
    s.hermiticity = frob(SpMat(h - SpMat(h.adjoint())));
    if (s.hermiticity > 1e-10)
        throw std::runtime_error("Hamiltonian is not Hermitian (residual " + fmt_double(s.hermiticity) + ")");
    std::vector<double> mask(occupation.size());
    for (size_t i = 0; i < occupation.size(); ++i) mask[i] = occupation[i] > n_max - 2 ? 1.0 : 0.0;
    s.eig = block_eigensolve(h, want_vectors, 1e-12, &mask);
    s.values = s.eig.values;
    s.edge_weight = s.eig.edge_weight;
    s.blocks = static_cast<int>(s.eig.blocks.size());
    for (int k = 0; k < h.outerSize(); ++k)
        for (SpMat::InnerIterator it(h, k); it; ++it)
            if (it.row() == k) s.trace += it.value().real();
    return s;
}

NumericSpectrum numeric_spectrum(const OscillatorModel& model, bool want_vectors) {
    const GradedOperator h = build_hamiltonian(model);
    return numeric_spectrum(h.matrix, total_occupation(model.dim, model.cutoff, model.spinor_dim()), model.cutoff.n_max,
                            want_vectors);
}

// ---- matching ----

namespace {

std::vector<AnalyticLevel> aggregate(std::vector<AnalyticLevel> in) {
    std::stable_sort(in.begin(), in.end(), [](const auto& a, const auto& b) { return a.energy < b.energy; });
    std::vector<AnalyticLevel> out;
    for (auto& l : in) {
        if (!out.empty() && same_level(out.back().energy, l.energy)) {
            out.back().multiplicity += l.multiplicity;
            out.back().labels += ";" + l.labels;
        } else {
            out.push_back(std::move(l));
        }
    }
    return out;
}

std::string half(int twice) {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
}

std::string num_label(double v) {
    std::ostringstream o;
    o.precision(6);
    o << v;
    return o.str();
}

// Joint eigenvalues of N and C_LS on the sectors with N <= n_max - 2.
std::vector<AnalyticLevel> levels_2d(const OscillatorModel& model, const OperatorRegistry& reg) {
    const int limit = model.cutoff.n_max - 2;
    const SpMat v = column_selector(reg.occupation(), limit + 1);
    const SpMat n = SpMat(v.adjoint()) * reg["N"] * v;
    const SpMat c = SpMat(v.adjoint()) * reg["C_LS"] * v;
    const BlockEigen en = block_eigensolve(n, true);
    const double m = model.mass, w = model.omega;
    std::vector<AnalyticLevel> out;
    for (size_t a = 0; a < en.values.size();) {
        size_t e = a + 1;
        while (e < en.values.size() && same_level(en.values[a], en.values[e])) ++e;
        const double nu = en.values[a];
        if (nu <= limit + 1e-9) {
            Mat q(v.cols(), static_cast<Eigen::Index>(e - a));
            for (size_t k = a; k < e; ++k) q.col(static_cast<Eigen::Index>(k - a)) = en.vector(k);
            const Mat cs = q.adjoint() * (c * q);
            Eigen::SelfAdjointEigenSolver<Mat> ec(0.5 * (cs + cs.adjoint()), Eigen::EigenvaluesOnly);
            for (Eigen::Index k = 0; k < ec.eigenvalues().size(); ++k) {
                const double cv = ec.eigenvalues()(k);
                AnalyticLevel l;
                l.energy = std::sqrt(2 * m * w * (nu + cv) + m * w + m * m);
                l.multiplicity = 1;
                l.labels = "N=" + num_label(std::round(nu * 2) / 2) + ",C=" + num_label(std::round(cv * 2) / 2);
                out.push_back(l);
            }
        }
        a = e;
    }
    // merge identical labels
    std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.labels < y.labels; });
    std::vector<AnalyticLevel> merged;
    for (auto& l : out) {
        if (!merged.empty() && merged.back().labels == l.labels) merged.back().multiplicity += 1;
        else merged.push_back(l);
    }
    return merged;
}

}  // namespace

std::vector<AnalyticLevel> analytic_levels(const OscillatorModel& model, const OperatorRegistry& reg) {
    const double m = model.mass, w = model.omega;
    const int window = model.cutoff.n_max - 2;
    std::vector<AnalyticLevel> out;
    if (window < 0) throw ConfigError("cutoff too small for the trust window");
    switch (model.dim) {
        case 1: {
            const int g = model.spinor_dim() / 2;
            out.push_back({m, g, "n=0"});
            for (int n = 1; n <= window; ++n) {
                const double e = std::sqrt(m * m + 2.0 * n * m * w);
                out.push_back({e, g, "n=" + std::to_string(n) + ",+"});
                out.push_back({-e, g, "n=" + std::to_string(n) + ",-"});
            }
            break;
        }
        case 2: out = levels_2d(model, reg); break;
        case 3:
            for (const auto& l : analytic_spectrum_3d(m, w, window))
                out.push_back({l.energy, l.multiplicity,
                               "n=" + std::to_string(l.n) + ",j=" + half(l.j2) + (l.energy < 0 ? ",-" : ",+") +
                                   (l.odd ? ",odd" : ",even")});
            break;
        default: throw ConfigError("dim must be 1, 2 or 3");
    }
    return aggregate(std::move(out));
}

SpectrumReport match_spectra(const std::vector<AnalyticLevel>& analytic, const NumericSpectrum& numeric, double tol,
                             double edge_tol, bool abs_energy) {
    SpectrumReport r;
    r.analytic = aggregate(analytic);
    r.numeric = numeric.values;
    r.edge_weight = numeric.edge_weight;
    r.abs_energy = abs_energy;
    std::vector<double> trusted;
    for (size_t i = 0; i < numeric.values.size(); ++i) {
        const double ew = i < numeric.edge_weight.size() ? numeric.edge_weight[i] : 0.0;
        if (ew < edge_tol) trusted.push_back(abs_energy ? std::abs(numeric.values[i]) : numeric.values[i]);
    }
    std::sort(trusted.begin(), trusted.end());
    r.trusted_count = static_cast<int>(trusted.size());

    const double window = std::max(tol, 1e-6);
    std::vector<std::vector<double>> assigned(r.analytic.size());
    for (double t : trusted) {
        size_t best = r.analytic.size();
        double dist = 0.0;
        for (size_t k = 0; k < r.analytic.size(); ++k) {
            const double d = std::abs(r.analytic[k].energy - t);
            if (best == r.analytic.size() || d < dist) {
                best = k;
                dist = d;
            }
        }
        if (best < r.analytic.size() && dist <= window) assigned[best].push_back(t);
        else r.unmatched.push_back(t);
    }
    r.max_error = 0.0;
    for (size_t k = 0; k < r.analytic.size(); ++k) {
        SpectrumMatch mt;
        mt.analytic = r.analytic[k].energy;
        mt.multiplicity = r.analytic[k].multiplicity;
        mt.labels = r.analytic[k].labels;
        mt.numeric_count = static_cast<int>(assigned[k].size());
        double sum = 0.0;
        for (double t : assigned[k]) {
            sum += t;
            mt.abs_err = std::max(mt.abs_err, std::abs(t - mt.analytic));
        }
        mt.numeric = assigned[k].empty() ? std::nan("") : sum / static_cast<double>(assigned[k].size());
        if (mt.numeric_count != mt.multiplicity) r.multiplicities_ok = false;
        r.max_error = std::max(r.max_error, mt.abs_err);
        r.matches.push_back(mt);
    }
    r.pass = r.multiplicities_ok && r.unmatched.empty() && r.max_error <= tol;
    return r;
}

SpectrumReport spectrum_report(const OscillatorModel& model, double tol, double edge_tol) {
    const OperatorRegistry reg = build_registry(model);
    const NumericSpectrum ns = numeric_spectrum(reg.at("H").matrix, reg.occupation(), reg.n_max());
    return match_spectra(analytic_levels(model, reg), ns, tol, edge_tol, model.dim == 2);
}

json to_json(const SpectrumReport& r) {
    json j;
    j["pass"] = r.pass;
    j["abs_energy"] = r.abs_energy;
    j["trusted_count"] = r.trusted_count;
    j["max_error"] = r.max_error;
    j["multiplicities_ok"] = r.multiplicities_ok;
    json m = json::array();
    for (const auto& x : r.matches) {
        json e;
        e["E_analytic"] = x.analytic;
        e["E_numeric"] = std::isnan(x.numeric) ? json(nullptr) : json(x.numeric);
        e["abs_err"] = x.abs_err;
        e["multiplicity"] = x.multiplicity;
        e["numeric_count"] = x.numeric_count;
        e["labels"] = x.labels;
        m.push_back(e);
    }
    j["matches"] = m;
    j["unmatched"] = r.unmatched;
    return j;
}

std::string to_csv(const SpectrumReport& r) {
    std::ostringstream o;
    o.precision(15);
    o << "E_analytic,E_numeric,abs_err,multiplicity,labels\n";
    for (const auto& x : r.matches) {
        o << x.analytic << ',';
        if (!std::isnan(x.numeric)) o << x.numeric;
        o << ',' << x.abs_err << ',' << x.multiplicity << ",\"" << x.labels << "\"\n";
    }
    return o.str();
}

// ---- 1D eigenvectors ----

Vec vacuum_1d(const OperatorRegistry& reg) {
    const SpMat& bm = reg["b-"];
    const SpMat& sm = reg["s-"];
    SpMat k = SpMat(bm.adjoint()) * bm + SpMat(sm.adjoint()) * sm + 0.5 * (reg["Id"] - reg["beta"]);
    const BlockEigen e = block_eigensolve(k, true);
    if (e.values.empty() || std::abs(e.values.front()) > 1e-10) throw std::runtime_error("no 1D vacuum found");
    Vec v = e.vector(0);
    Eigen::Index top = 0;
    v.cwiseAbs().maxCoeff(&top);
    v *= std::abs(v(top)) / v(top);
    return v.normalized();
}

Vec raise_eigenvector_1d(const OperatorRegistry& reg, const Vec& psi, double E, int sign) {
    const auto& occ = reg.occupation();
    double edge = 0.0;
    for (Eigen::Index i = 0; i < psi.size(); ++i)
        if (occ[static_cast<size_t>(i)] >= reg.n_max()) edge += std::norm(psi(i));
    if (edge > 1e-16 * std::max(1.0, psi.squaredNorm())) throw ConfigError("edge-supported input state");
    const double c2 = 2.0 * reg.mass() * reg.omega();
    const double f = E + (sign >= 0 ? 1.0 : -1.0) * std::sqrt(E * E + c2);
    Vec out = f * (reg["b+"] * psi) + std::sqrt(c2) * (reg["s+"] * psi);
    return out.normalized();
}

VerificationReport vacuum_report_1d(const OperatorRegistry& reg, int raises) {
    VerificationReport r;
    r.name = "1d vacuum";
    const Vec vac = vacuum_1d(reg);
    const double m = reg.mass();
    auto add = [&](const std::string& id, const std::string& group, double res, double tol) {
        CheckResult c;
        c.id = id;
        c.group = group;
        c.residual = res;
        c.tol = tol;
        r.add(c);
    };
    add("beta vac = vac", "vacuum", (reg["beta"] * vac - vac).norm(), 1e-12);
    add("H0 vac = 0", "vacuum", (reg["H0"] * vac).norm(), 1e-12);
    add("H vac = m vac", "vacuum", (reg["H"] * vac - m * vac).norm(), 1e-12);
    const double c2 = 2.0 * m * reg.omega();
    for (int sign : {1, -1}) {
        Vec psi = vac;
        double e = m;
        for (int k = 1; k <= raises && k < reg.n_max() - 1; ++k) {
            psi = raise_eigenvector_1d(reg, psi, e, sign);
            e = sign * std::sqrt(e * e + c2);
            add("raise^" + std::to_string(k) + (sign > 0 ? " (+)" : " (-)") + " E=" + fmt_double(e, 6), "raise",
                (reg["H"] * psi - e * psi).norm(), 1e-7);
        }
    }
    return r;
}

}  // namespace dosc
