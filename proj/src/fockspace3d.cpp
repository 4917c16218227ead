#include "dosc/fockspace3d.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "dosc/algebra.hpp"
#include "dosc/fock.hpp"
#include "dosc/oscillator.hpp"
#include "dosc/spectrum.hpp"

namespace dosc {

bool FockLabel3D::valid() const {
    if (n < 0 || l < 0 || l > n) return false;
    if (j2 != 2 * l + 1 && j2 != 2 * l - 1) return false;
    if (j2 < 1) return false;
    if (std::abs(j3x2) > j2 || (j3x2 - j2) % 2 != 0) return false;
    return true;
}

const Vec* FockBasis3D::find(const FockLabel3D& l) const {
    auto it = vectors.find(l);
    return it == vectors.end() ? nullptr : &it->second;
}

namespace {

std::string label_str(const FockLabel3D& l) {
    auto h = [](int t) { return std::to_string(t) + "/2"; };
    return "|" + std::to_string(l.n) + "," + std::to_string(l.l) + "," + h(l.j2) + "," + h(l.j3x2) + ">";
}

// ||a - b|| scaled by the size of the vectors involved
double rel_diff(const Vec& a, const Vec& b, double scale) { return (a - b).norm() / std::max(1.0, scale); }

CheckResult worst_of(const std::string& id, const std::string& group, double tol) {
    CheckResult c;
    c.id = id;
    c.group = group;
    c.tol = tol;
    return c;
}

void take(CheckResult& c, double r, const std::string& where) {
    if (r >= c.residual) {
        c.residual = r;
        c.note = "worst " + where;
    }
}

}  // namespace

VacuumResult find_vacuum(const OperatorRegistry& reg) {
    SpMat k(reg.side(), reg.side());
    for (const char* x : {"b-1", "b-2", "b-3", "s-1", "s-2", "s-3", "S-"}) {
        const SpMat& m = reg[x];
        k += SpMat(m.adjoint()) * m;
    }
    const BlockEigen e = block_eigensolve(k, true);
    VacuumResult r;
    for (double v : e.values)
        if (std::abs(v) < 1e-10) ++r.kernel_dim;
    if (r.kernel_dim == 0) throw std::runtime_error("joint kernel is empty");
    Vec v = e.vector(0);
    Eigen::Index top = 0;
    v.cwiseAbs().maxCoeff(&top);
    v *= std::abs(v(top)) / v(top);
    r.state = v.normalized();
    return r;
}

FockBasis3D build_basis(const OperatorRegistry& reg, int n_build) {
    if (n_build < 0) throw ConfigError("n_build must be >= 0");
    if (n_build > reg.n_max() - 2)
        throw ConfigError("n_build " + std::to_string(n_build) + " exceeds n_max - 2 = " + std::to_string(reg.n_max() - 2));
    FockBasis3D b;
    b.n_build = n_build;
    const VacuumResult vac = find_vacuum(reg);
    if (vac.kernel_dim != 1)
        throw std::runtime_error("vacuum kernel has dimension " + std::to_string(vac.kernel_dim));
    b.vacuum = vac.state;
    const SpMat z = reg["b+1"] + I * reg["b+2"];
    const SpMat& sp = reg["S+"];
    const SpMat& jm = reg["J-"];
    const SpMat& tp = reg["T+"];
    auto zpow = [&](Vec v, int k) {
        for (int i = 0; i < k; ++i) v = z * v;
        return v;
    };
    for (int l = 0; l <= n_build; ++l) {
        std::vector<std::pair<int, Vec>> hws;
        hws.emplace_back(2 * l + 1, zpow(sp * b.vacuum, l));
        if (l >= 1) hws.emplace_back(2 * l - 1, zpow(b.vacuum, l) + zpow(reg["b+3"] * (sp * b.vacuum), l - 1));
        for (auto& [j2, hw] : hws) {
            Vec w = hw;
            for (int j3 = j2; j3 >= -j2; j3 -= 2) {
                Vec u = w;
                for (int n = l; n <= n_build; ++n) {
                    b.vectors[{n, l, j2, j3}] = u;
                    u = tp * u;
                }
                w = jm * w;
            }
        }
    }
    return b;
}

VerificationReport verify_basis(const OperatorRegistry& reg, const FockBasis3D& basis) {
    VerificationReport rep;
    rep.name = "fock basis";
    const double tol = 1e-9;
    CheckResult cn = worst_of("N eigenvalue n", "eigenvalue", tol);
    CheckResult cl = worst_of("L^2 eigenvalue l(l+1)", "eigenvalue", tol);
    CheckResult cj = worst_of("J^2 eigenvalue j(j+1)", "eigenvalue", tol);
    CheckResult c3 = worst_of("J3 eigenvalue j3", "eigenvalue", tol);
    CheckResult hw = worst_of("J+ annihilates |n,l,l+1/2,l+1/2>", "highest-weight", tol);
    for (const auto& [lab, v] : basis.vectors) {
        const double s = v.norm();
        const double j = 0.5 * lab.j2, j3 = 0.5 * lab.j3x2;
        const std::string w = label_str(lab);
        take(cn, rel_diff(reg["N"] * v, static_cast<double>(lab.n) * v, s), w);
        take(cl, rel_diff(reg["Lsq"] * v, static_cast<double>(lab.l * (lab.l + 1)) * v, s), w);
        take(cj, rel_diff(reg["Jsq"] * v, j * (j + 1) * v, s), w);
        take(c3, rel_diff(reg["J3"] * v, j3 * v, s), w);
        if (lab.j2 == 2 * lab.l + 1 && lab.j3x2 == lab.j2) take(hw, (reg["J+"] * v).norm() / std::max(1.0, s), w);
    }
    for (auto* c : {&cn, &cl, &cj, &c3, &hw}) rep.add(*c);

    // linear independence: QR rank of the stacked, normalised vectors
    Mat stack(reg.side(), static_cast<Eigen::Index>(basis.vectors.size()));
    Eigen::Index col = 0;
    for (const auto& [lab, v] : basis.vectors) stack.col(col++) = v.normalized();
    Eigen::ColPivHouseholderQR<Mat> qr(stack);
    qr.setThreshold(1e-8);
    CheckResult rank = worst_of("rank of stacked basis vectors", "independence", 0.5);
    rank.residual = static_cast<double>(stack.cols() - qr.rank());
    rank.note = std::to_string(qr.rank()) + " of " + std::to_string(stack.cols());
    rep.add(rank);

    // per-n dimension count against the N = n eigenspace
    const SpMat sel = column_selector(reg.occupation(), basis.n_build + 1);
    const SpMat nr = SpMat(sel.adjoint()) * reg["N"] * sel;
    const BlockEigen en = block_eigensolve(nr, false);
    for (int n = 0; n <= basis.n_build; ++n) {
        int dim = 0, count = 0;
        for (double x : en.values)
            if (std::abs(x - n) < 1e-9) ++dim;
        for (const auto& [lab, v] : basis.vectors)
            if (lab.n == n) ++count;
        CheckResult c = worst_of("dimension n=" + std::to_string(n), "dimension", 0.5);
        c.residual = std::abs(dim - count);
        c.note = std::to_string(count) + " labels, eigenspace dimension " + std::to_string(dim);
        rep.add(c);
    }
    rep.meta["labels"] = basis.vectors.size();
    rep.meta["n_build"] = basis.n_build;
    return rep;
}

VerificationReport verify_actions(const OperatorRegistry& reg, const FockBasis3D& basis, double tol) {
    VerificationReport rep;
    rep.name = "fock actions";
    const SpMat& spl = reg["Ss+"];
    const SpMat& smi = reg["Ss-"];
    const SpMat& sc = reg["Sc"];
    const SpMat& bpl = reg["Bs+"];
    const SpMat& bmi = reg["Bs-"];
    std::map<std::string, CheckResult> by;
    std::vector<std::string> order;
    auto record = [&](const std::string& item, int n, double r, const FockLabel3D& lab) {
        const std::string id = item + " n=" + std::to_string(n);
        if (!by.count(id)) {
            by[id] = worst_of(id, item, tol);
            by[id].note = "";
            order.push_back(id);
        }
        take(by[id], r, label_str(lab));
    };
    for (const auto& [lab, v] : basis.vectors) {
        const int par = (lab.n - lab.l) % 2 == 0 ? 1 : -1;
        const double s = v.norm();
        const Vec zero = Vec::Zero(v.size());
        // (i) S+ and (ii) S-
        {
            const FockLabel3D up{lab.n + 1, lab.l, lab.j2, lab.j3x2};
            const Vec* t = basis.find(up);
            if (par < 0) record("(i) S+s", lab.n, rel_diff(spl * v, zero, s), lab);
            else if (t) record("(i) S+s", lab.n, rel_diff(spl * v, *t, std::max(s, t->norm())), lab);
            const FockLabel3D dn{lab.n - 1, lab.l, lab.j2, lab.j3x2};
            const Vec* d = basis.find(dn);
            if (par > 0) record("(ii) S-s", lab.n, rel_diff(smi * v, zero, s), lab);
            else if (d) record("(ii) S-s", lab.n, rel_diff(smi * v, *d, std::max(s, d->norm())), lab);
        }
        // (iii) Sc
        record("(iii) Sc", lab.n, rel_diff(sc * v, (-0.5 * par) * v, s), lab);
        // (iv) B+s and (v) B-s
        const bool upper = lab.j2 == 2 * lab.l + 1;  // j = l + 1/2
        {
            const FockLabel3D t{lab.n + 1, upper ? lab.l + 1 : lab.l - 1, lab.j2, lab.j3x2};
            if (const Vec* tv = basis.find(t)) record("(iv) B+s", lab.n, rel_diff(bpl * v, *tv, std::max(s, tv->norm())), lab);
        }
        {
            const double j = 0.5 * lab.j2;
            const double coef = upper ? lab.n - j + 0.5 * par : lab.n + j + 1 + 0.5 * par;
            const FockLabel3D t{lab.n - 1, upper ? lab.l + 1 : lab.l - 1, lab.j2, lab.j3x2};
            if (!t.valid()) {
                record("(v) B-s", lab.n, rel_diff(bmi * v, zero, s), lab);
            } else if (const Vec* tv = basis.find(t)) {
                record("(v) B-s", lab.n, rel_diff(bmi * v, coef * *tv, std::max(s, std::abs(coef) * tv->norm())), lab);
            }
        }
    }
    for (const auto& id : order) rep.add(by[id]);
    rep.meta["labels"] = basis.vectors.size();
    return rep;
}

VerificationReport injectivity_report(const OperatorRegistry& reg, unsigned seed, double tol) {
    VerificationReport rep;
    rep.name = "injectivity";
    rep.meta["seed"] = seed;
    // rank of T+ on the depth-3 interior
    {
        const int depth = 3;
        const SpMat v = column_selector(reg.occupation(), reg.n_max() - depth);
        const SpMat tv = reg["T+"] * v;
        const Mat g = Mat(SpMat(tv.adjoint()) * tv);
        Eigen::SelfAdjointEigenSolver<Mat> es(g, Eigen::EigenvaluesOnly);
        const double top = es.eigenvalues().maxCoeff();
        int rank = 0;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            if (es.eigenvalues()(i) > 1e-16 * top) ++rank;
        CheckResult c = worst_of("rank(T+ P) = rank(P)", "injectivity", 0.5);
        c.depth = depth;
        c.residual = static_cast<double>(v.cols() - rank);
        c.note = std::to_string(rank) + " of " + std::to_string(v.cols()) + ", smallest singular value " +
                 fmt_double(std::sqrt(std::max(0.0, es.eigenvalues().minCoeff())));
        rep.add(c);
    }
    // commutants
    std::vector<Relation> rels;
    auto add = [&](const std::string& lhs, const std::string& rhs) {
        Relation r;
        r.lhs = parse_sexpr(lhs);
        r.rhs = parse_sexpr(rhs);
        r.id = lhs;
        r.group = "commutant";
        rels.push_back(std::move(r));
    };
    for (const char* x : {"Bs+*Bs+", "Ss+", "Ss-", "T+"}) add(std::string("(comm Lsq ") + x + ")", "0");
    for (const char* j : {"J1", "J2", "J3"})
        for (const char* x : {"Bs+", "Ss+", "T+"}) add(std::string("(comm ") + j + " " + x + ")", "0");
    add("(comm Jsq T+)", "0");
    VerifyOptions opt;
    opt.tol = tol;
    opt.unprojected = false;
    rep.merge(verify_relations("commutants", rels, reg, opt));

    // positivity of N - Sc + Id
    {
        std::mt19937 gen(seed);
        std::normal_distribution<double> nd;
        const SpMat a = reg["N-Sc"] + reg["Id"];
        double lo = 1e300;
        for (int k = 0; k < 20; ++k) {
            Vec psi(reg.side());
            for (Eigen::Index i = 0; i < psi.size(); ++i) psi(i) = cplx(nd(gen), nd(gen));
            psi.normalize();
            lo = std::min(lo, psi.dot(a * psi).real());
        }
        CheckResult c = worst_of("<psi|N - Sc + Id|psi> > 0 (20 random states)", "positivity", 0.5);
        c.residual = lo > 0 ? 0.0 : 1.0;
        c.note = "minimum " + fmt_double(lo, 6);
        rep.add(c);
    }

    // <<S+s,(T+)^k>> is 0 for even k and (T+)^{k+1} for odd k; needs depth 2(k+1)
    {
        const int kmax = 4;
        const int need = 2 * (kmax + 1);
        OperatorRegistry big;
        const OperatorRegistry* r = &reg;
        if (reg.n_max() < need) {
            big = build_ladders_3d(OscillatorModel::make(3, reg.mass(), reg.omega(), need));
            r = &big;
        }
        std::vector<Relation> tr;
        for (int k = 1; k <= kmax; ++k) {
            std::string word = "(*";
            for (int i = 0; i < k; ++i) word += " T+";
            Relation x;
            x.lhs = parse_sexpr("(br Ss+ " + word + "))");
            x.rhs = parse_sexpr(k % 2 ? word + " T+)" : "0");
            x.id = "<<S+s,(T+)^" + std::to_string(k) + ">>";
            x.group = "T-power";
            tr.push_back(std::move(x));
        }
        VerificationReport t = verify_relations("T powers", tr, *r, opt);
        t.meta = json::object();
        rep.merge(t);
        rep.meta["t_power_n_max"] = r->n_max();
    }
    return rep;
}

std::pair<Vec, Vec> eigenvectors_3d(const OperatorRegistry& reg, const FockBasis3D& basis, int n, int j2, int j3x2) {
    const Vec* lo = basis.find({n, (j2 - 1) / 2, j2, j3x2});
    if (!lo) throw ConfigError("label missing from basis: n=" + std::to_string(n) + " j2=" + std::to_string(j2));
    const Vec* hi = basis.find({n, (j2 + 1) / 2, j2, j3x2});
    const double m = reg.mass(), w = reg.omega(), c = std::sqrt(2 * m * w);
    const double e = theorem_energy(n, j2, m, w);
    const bool odd = ((2 * n - j2 + 1) / 2) % 2 != 0;
    if (!hi) {
        // single l-branch: only the +E state exists
        if (odd) throw std::runtime_error("odd branch needs both l values");
        return {c * *lo, Vec()};
    }
    auto make = [&](double E) -> Vec {
        if (odd) return (E - m) * *lo + c * *hi;
        return c * *lo + (E - m) * *hi;
    };
    return {make(e), make(-e)};
}

json basis_line(const FockLabel3D& l, const Vec& v, double drop) {
    json j;
    j["n"] = l.n;
    j["l"] = l.l;
    j["j2"] = l.j2;
    j["j3x2"] = l.j3x2;
    j["norm"] = v.norm();
    json c = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) > drop) c.push_back({i, v(i).real(), v(i).imag()});
    j["coefficients"] = c;
    return j;
}

}  // namespace dosc
