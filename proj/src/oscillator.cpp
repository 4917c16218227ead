#include "dosc/oscillator.hpp"

#include <cmath>

namespace dosc {

namespace {

// Extra per-mode occupation used while assembling products. Every stored matrix is
// the compression of an operator built in the padded space, so products of up to
// `kPad` ladder factors per mode carry no truncation artefacts.
constexpr int kPad = 4;

Degree dg(const char* s) { return Degree::parse(s); }

struct Builder {
    const OscillatorModel& model;
    FockCutoff big;
    int d;
    SpMat id;
    SpMat beta;
    std::vector<SpMat> alpha, bm, bp, x, p, sm, sp;
    OperatorRegistry reg;

    explicit Builder(const OscillatorModel& m)
        : model(m), big{m.cutoff.n_max + kPad}, d(m.dim),
          reg(m.side(), total_occupation(m.dim, m.cutoff, m.spinor_dim()), m.cutoff.n_max, m.mass, m.omega) {
        const auto mode = build_mode_ops(big);
        const int side = m.spinor_dim() * static_cast<int>(std::pow(big.n_max + 1, d));
        id.resize(side, side);
        id.setIdentity();
        beta = embed_spinor(m.rep.beta(), d, big);
        const double c = std::sqrt(2.0 * m.mass * m.omega);
        for (int j = 0; j < d; ++j) {
            alpha.push_back(embed_spinor(m.rep.alpha(j), d, big));
            SpMat lo = embed(mode.lower, j + 1, d, big, m.spinor_dim());
            bm.push_back(-lo);
            bp.push_back(SpMat(-lo.adjoint()));
            x.push_back(-(bm[j] + bp[j]) / c);
            p.push_back((-I * (c / 2.0)) * (bp[j] - bm[j]));
            sm.push_back((-0.5 * I) * (beta * alpha[j] + alpha[j]));
            sp.push_back((-0.5 * I) * (beta * alpha[j] - alpha[j]));
        }
    }

    SpMat spin(const Mat& s) const { return embed_spinor(s, d, big); }

    SpMat hamiltonian() const {
        const double m = model.mass, w = model.omega;
        SpMat h = m * beta;
        for (int j = 0; j < d; ++j) h += alpha[j] * (p[j] - (I * m * w) * SpMat(beta * x[j]));
        return h;
    }

    SpMat hsch() const {
        const double m = model.mass, w = model.omega;
        SpMat h(id.rows(), id.cols());
        for (int j = 0; j < d; ++j) h += (1.0 / (2.0 * m)) * SpMat(p[j] * p[j]) + (0.5 * m * w * w) * SpMat(x[j] * x[j]);
        return h;
    }

    void add(const std::string& label, const SpMat& big_op, std::optional<Degree> deg = std::nullopt) {
        reg.add(label, compress(big_op, d, big, model.cutoff, model.spinor_dim()), std::move(deg));
    }
};

std::string pm(int z) { return z > 0 ? "+" : "-"; }

}  // namespace

int OscillatorModel::default_n_max(int dim) {
    switch (dim) {
        case 1: return 40;
        case 2: return 16;
        case 3: return 8;
        default: throw ConfigError("dim must be 1, 2 or 3");
    }
}

OscillatorModel OscillatorModel::make(int dim, double mass, double omega, int n_max, Flavor flavor) {
    if (dim < 1 || dim > 3) throw ConfigError("dim must be 1, 2 or 3");
    if (!(mass > 0)) throw ConfigError("mass must be positive");
    if (!(omega > 0)) throw ConfigError("omega must be positive");
    OscillatorModel m;
    m.dim = dim;
    m.mass = mass;
    m.omega = omega;
    m.cutoff.n_max = n_max < 0 ? default_n_max(dim) : n_max;
    if (m.cutoff.n_max < 1) throw ConfigError("n_max must be >= 1");
    m.rep = flavor == Flavor::dirac4 ? dirac_representation(dim) : minimal_representation(dim);
    return m;
}

int OscillatorModel::boson_dim() const { return static_cast<int>(std::pow(cutoff.n_max + 1, dim)); }

GradedOperator build_hamiltonian(const OscillatorModel& model) {
    Builder b(model);
    GradedOperator h;
    h.label = "H";
    h.matrix = compress(b.hamiltonian(), model.dim, b.big, model.cutoff, model.spinor_dim());
    prune(h.matrix);
    h.reach = 1;
    return h;
}

OperatorRegistry build_ladders_1d(const OscillatorModel& model) {
    if (model.dim != 1) throw ConfigError("build_ladders_1d needs dim 1");
    Builder b(model);
    const double m = model.mass;
    SpMat H = b.hamiltonian();
    b.add("Id", b.id, dg("00"));
    b.add("beta", b.beta, dg("00"));
    b.add("H", H);
    b.add("Hsq", H * H, dg("00"));
    b.add("H0", H - m * b.beta, dg("01"));
    b.add("Hsch", b.hsch(), dg("00"));
    b.add("Sc", -0.5 * b.beta, dg("00"));
    b.add("N", SpMat(b.bp[0] * b.bm[0] + b.sp[0] * b.sm[0]), dg("00"));
    b.add("b-", b.bm[0], dg("10"));
    b.add("b+", b.bp[0], dg("10"));
    b.add("s-", b.sm[0], dg("11"));
    b.add("s+", b.sp[0], dg("11"));
    b.add("b-*b-", b.bm[0] * b.bm[0], dg("00"));
    b.add("b+*b+", b.bp[0] * b.bp[0], dg("00"));
    for (int e : {-1, 1})
        for (int z : {-1, 1}) {
            const SpMat& bb = e < 0 ? b.bm[0] : b.bp[0];
            const SpMat& ss = z < 0 ? b.sm[0] : b.sp[0];
            b.add("b" + pm(e) + "*s" + pm(z), bb * ss, dg("01"));
        }
    return std::move(b.reg);
}

OperatorRegistry build_ladders_2d(const OscillatorModel& model) {
    if (model.dim != 2) throw ConfigError("build_ladders_2d needs dim 2");
    Builder b(model);
    const double m = model.mass, w = model.omega;
    SpMat H = b.hamiltonian();
    const SpMat& B = b.beta;
    b.add("Id", b.id, dg("00"));
    b.add("beta", B, dg("00"));
    b.add("H", H);
    b.add("Hsq", H * H, dg("00"));
    b.add("H0", H - m * B);
    SpMat hs = b.hsch();
    b.add("Hsch", hs, dg("00"));
    b.add("Sc", -0.5 * B, dg("00"));
    for (int j = 0; j < 2; ++j) {
        const std::string k = std::to_string(j + 1);
        b.add("b-" + k, b.bm[j], dg("10"));
        b.add("b+" + k, b.bp[j], dg("10"));
        b.add("s-" + k, b.sm[j], dg("11"));
        b.add("s+" + k, b.sp[j], dg("11"));
    }
    SpMat N = b.bp[0] * b.bm[0] + b.bp[1] * b.bm[1] + 0.5 * SpMat(b.sp[0] * b.sm[0] + b.sp[1] * b.sm[1]);
    SpMat L0 = b.x[0] * b.p[1] - b.x[1] * b.p[0];
    const Mat S0 = spin_matrices(model.rep)[0];
    SpMat s0 = b.spin(S0);
    SpMat bs0 = B * s0;
    SpMat C = -2.0 * SpMat(B * L0 * s0) - 0.5 * B;
    b.add("N", N, dg("00"));
    b.add("L0", L0, dg("00"));
    b.add("S0", s0, dg("00"));
    b.add("betaS0", bs0, dg("00"));
    b.add("J", L0 + s0);
    b.add("C_LS", C, dg("00"));

    // a and c ladders
    const double r = 1.0 / std::sqrt(2.0);
    SpMat K[2] = {B * b.alpha[0] * b.alpha[1], B * b.alpha[1] * b.alpha[0]};
    SpMat am[2], ap[2], cm[2], cp[2];
    for (int j = 0; j < 2; ++j) {
        const int k = (j + 1) % 2;
        am[j] = r * (b.bm[j] + K[j] * b.bm[k]);
        ap[j] = r * (b.bp[j] - K[j] * b.bp[k]);
        cm[j] = r * (b.bm[j] - K[j] * b.bm[k]);
        cp[j] = r * (b.bp[j] + K[j] * b.bp[k]);
        const std::string n = std::to_string(j + 1);
        b.add("a-" + n, am[j], dg("10"));
        b.add("a+" + n, ap[j], dg("10"));
        b.add("c-" + n, cm[j], dg("10"));
        b.add("c+" + n, cp[j], dg("10"));
    }

    // chiral combinations, suffix _p for the + algebra and _m for the - algebra
    for (int sg : {1, -1}) {
        const std::string sfx = sg > 0 ? "_p" : "_m";
        std::map<std::string, SpMat> lad;
        for (int z : {1, -1}) {
            const SpMat& s1 = z > 0 ? b.sp[0] : b.sm[0];
            const SpMat& s2 = z > 0 ? b.sp[1] : b.sm[1];
            const SpMat& a1 = z > 0 ? ap[0] : am[0];
            const SpMat& a2 = z > 0 ? ap[1] : am[1];
            const SpMat& c1 = z > 0 ? cp[0] : cm[0];
            const SpMat& c2 = z > 0 ? cp[1] : cm[1];
            const cplx f = -static_cast<double>(sg * z) * 0.5 * I;
            lad["s" + pm(z)] = 0.5 * s1 + f * s2;
            lad["a" + pm(z)] = 0.5 * a1 + f * a2;
            lad["c" + pm(z)] = 0.5 * c1 - f * c2;
        }
        b.add("H" + sfx, 0.5 * hs + static_cast<double>(sg) * SpMat(hs * bs0), dg("00"));
        b.add("C" + sfx, 0.5 * C + 0.25 * B - (0.5 * sg) * L0, dg("00"));
        b.add("Sc" + sfx, -0.25 * B - (0.5 * sg) * s0, dg("00"));
        for (const auto& [name, mat] : lad) {
            const char* deg = name[0] == 's' ? "11" : "10";
            b.add(name + sfx, mat, dg(deg));
        }
        auto prod = [&](const std::string& x, const std::string& y, const char* deg) {
            b.add(x + sfx + "*" + y + sfx, lad.at(x) * lad.at(y), dg(deg));
        };
        for (const char* l : {"a", "c"}) {
            const std::string L = l;
            prod(L + "-", L + "-", "00");
            prod(L + "+", L + "+", "00");
        }
        for (int e : {-1, 1})
            for (int z : {-1, 1}) prod("a" + pm(e), "c" + pm(z), "00");
        for (const char* l : {"a", "c"})
            for (int e : {-1, 1})
                for (int z : {-1, 1}) prod(std::string(l) + pm(e), "s" + pm(z), "01");
    }
    (void)w;
    return std::move(b.reg);
}

OperatorRegistry build_ladders_3d(const OscillatorModel& model) {
    if (model.dim != 3) throw ConfigError("build_ladders_3d needs dim 3");
    Builder b(model);
    const double m = model.mass, w = model.omega, c = std::sqrt(2.0 * m * w);
    SpMat H = b.hamiltonian();
    const SpMat& B = b.beta;
    b.add("Id", b.id, dg("00"));
    b.add("beta", B);
    b.add("H", H);
    b.add("Hsq", H * H);
    b.add("H0", H - m * B);
    b.add("Sc", -0.5 * B, dg("00"));
    for (int j = 0; j < 3; ++j) {
        const std::string k = std::to_string(j + 1);
        b.add("b-" + k, b.bm[j]);
        b.add("b+" + k, b.bp[j]);
        b.add("s-" + k, b.sm[j]);
        b.add("s+" + k, b.sp[j]);
    }
    const auto& x = b.x;
    const auto& p = b.p;
    SpMat L[3] = {x[1] * p[2] - x[2] * p[1], x[2] * p[0] - x[0] * p[2], x[0] * p[1] - x[1] * p[0]};
    const auto spins = spin_matrices(model.rep);
    SpMat S[3] = {b.spin(spins[0]), b.spin(spins[1]), b.spin(spins[2])};
    SpMat LS(b.id.rows(), b.id.cols()), L2 = LS, J2 = LS, S2 = LS;
    for (int j = 0; j < 3; ++j) {
        const std::string k = std::to_string(j + 1);
        b.add("L" + k, L[j]);
        b.add("S" + k, S[j]);
        b.add("J" + k, L[j] + S[j]);
        LS += L[j] * S[j];
        L2 += L[j] * L[j];
        S2 += S[j] * S[j];
        SpMat Jj = L[j] + S[j];
        J2 += Jj * Jj;
    }
    b.add("L+", L[0] + I * L[1]);
    b.add("L-", L[0] - I * L[1]);
    b.add("S+", S[0] + I * S[1]);
    b.add("S-", S[0] - I * S[1]);
    b.add("J+", L[0] + I * L[1] + S[0] + I * S[1]);
    b.add("J-", L[0] - I * L[1] + S[0] - I * S[1]);
    b.add("LS", LS);
    b.add("Lsq", L2);
    b.add("Ssq", S2);
    b.add("Jsq", J2);

    SpMat N = b.bp[0] * b.bm[0] + b.bp[1] * b.bm[1] + b.bp[2] * b.bm[2] +
              (1.0 / 3.0) * SpMat(b.sp[0] * b.sm[0] + b.sp[1] * b.sm[1] + b.sp[2] * b.sm[2]);
    SpMat C = -2.0 * SpMat(B * LS) - B;
    b.add("N", N, dg("00"));
    b.add("C_LS", C, dg("11"));
    b.add("N+Id", N + b.id, dg("00"));
    b.add("N-Sc", N + 0.5 * B, dg("00"));

    SpMat Bm(b.id.rows(), b.id.cols()), Bp = Bm, Sm = Bm, Sp = Bm;
    for (int j = 0; j < 3; ++j) {
        Bm += 2.0 * SpMat(b.bm[j] * S[j]);
        Bp += 2.0 * SpMat(b.bp[j] * S[j]);
        Sm += (2.0 / 3.0) * SpMat(b.sm[j] * S[j]);
        Sp += (2.0 / 3.0) * SpMat(b.sp[j] * S[j]);
    }
    b.add("Bs-", Bm, dg("01"));
    b.add("Bs+", Bp, dg("01"));
    b.add("Ss-", Sm, dg("10"));
    b.add("Ss+", Sp, dg("10"));
    b.add("Bs-*Bs-", Bm * Bm, dg("00"));
    b.add("Bs+*Bs+", Bp * Bp, dg("00"));
    b.add("T+", SpMat(Bp * Bp * Sm) + Sp, dg("10"));
    b.add("T-", SpMat(Bm * Bm * Sp) + Sm, dg("10"));

    // z2cubed components
    const char* hdeg[3] = {"001", "010", "100"};
    const char* bdeg[3] = {"110", "101", "011"};
    SpMat Hj[3];
    for (int j = 0; j < 3; ++j) {
        const std::string k = std::to_string(j + 1);
        Hj[j] = c * SpMat(b.bp[j] * b.sm[j] + b.bm[j] * b.sp[j]);
        b.add("H" + k, Hj[j], dg(hdeg[j]));
        b.add("bH" + k, B * Hj[j], dg(hdeg[j]));
        b.add("N" + k, SpMat(b.bp[j] * b.bm[j] + b.sp[j] * b.sm[j]), dg("000"));
        b.add("Bs-" + k, 2.0 * SpMat(b.bm[j] * S[j]), dg(bdeg[j]));
        b.add("Bs+" + k, 2.0 * SpMat(b.bp[j] * S[j]), dg(bdeg[j]));
        b.add("LS" + k, L[j] * S[j], dg(bdeg[j]));
    }
    for (int j = 0; j < 3; ++j) {
        const int k = (j + 1) % 3, l = (j + 2) % 3;
        b.add("HxH" + std::to_string(j + 1), (1.0 / (4.0 * m * w)) * SpMat(Hj[k] * Hj[l] - Hj[l] * Hj[k]), dg(bdeg[j]));
    }
    return std::move(b.reg);
}

OperatorRegistry build_registry(const OscillatorModel& model) {
    switch (model.dim) {
        case 1: return build_ladders_1d(model);
        case 2: return build_ladders_2d(model);
        case 3: return build_ladders_3d(model);
        default: throw ConfigError("dim must be 1, 2 or 3");
    }
}

}  // namespace dosc
