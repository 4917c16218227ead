#include <random>
#include <string>

#include "dosc/oscillator.hpp"

namespace dosc {

namespace {

std::string pm(int z) { return z > 0 ? "+" : "-"; }
std::string sgn(int z) { return z > 0 ? "1" : "-1"; }

struct Table {
    std::vector<Relation> rels;

    Relation& add(const std::string& group, const std::string& id, const std::string& lhs, const std::string& rhs,
                  const std::string& printed = "") {
        Relation r;
        r.group = group;
        r.id = id;
        r.lhs = parse_sexpr(lhs);
        r.rhs = parse_sexpr(rhs);
        if (!printed.empty()) r.printed = parse_sexpr(printed);
        rels.push_back(std::move(r));
        return rels.back();
    }
    // [a,b] or {a,b}
    Relation& br(const std::string& group, const std::string& kind, const std::string& a, const std::string& b,
                 const std::string& rhs, const std::string& printed = "") {
        const std::string id = kind == "comm" ? "[" + a + "," + b + "]" : "{" + a + "," + b + "}";
        return add(group, id, "(" + kind + " " + a + " " + b + ")", rhs, printed);
    }
};

const char* kC1 = "(sqrt (* 2 m omega))";
const char* kC2 = "(sqrt (* 4 m omega))";

std::vector<Relation> identities_1d() {
    Table t;
    const std::string c = kC1;
    for (const char* h : {"H", "H0"}) {
        for (int z : {-1, 1}) {
            const std::string b = "b" + pm(z), s = "s" + pm(z);
            t.br("interleave", "acomm", h, s, "(* " + c + " " + b + ")");
            t.br("interleave", "comm", h, b, "(* " + sgn(z) + " " + c + " " + s + ")");
        }
    }
    t.br("interleave", "acomm", "H0", "H0", "(+ (* 4 m Hsch) (* 4 m omega Sc))");
    t.br("interleave", "comm", "Hsch", "H0", "(* omega " + c + " (- (* b+ s-) (* b- s+)))",
         "(* " + c + " (- (* b+ s-) (* b- s+)))");
    t.br("interleave", "comm", "Sc", "H0", "(* -1 " + c + " (- (* b+ s-) (* b- s+)))");
    for (int z : {-1, 1}) {
        t.br("ladder", "comm", "Hsq", "b" + pm(z), "(* " + sgn(z) + " 2 m omega b" + pm(z) + ")");
        t.br("ladder", "comm", "Hsq", "s" + pm(z), "(* " + sgn(z) + " 2 m omega s" + pm(z) + ")");
    }
    t.add("h-square", "H^2 = 2m Hsch + 2mw Sc + m^2", "Hsq", "(+ (* 2 m Hsch) (* 2 m omega Sc) (* m m Id))",
          "(+ (* 2 m Hsch) (* -2 m omega Sc) (* m m Id))");
    t.add("h-square", "H = c(b+s- + b-s+) - 2m Sc", "H", "(- (* " + c + " (+ (* b+ s-) (* b- s+))) (* 2 m Sc))");
    t.add("h-square", "H0 = c(b+s- + b-s+)", "H0", "(* " + c + " (+ (* b+ s-) (* b- s+)))");
    t.add("h-square", "H0 = H - m beta", "H0", "(- H (* m beta))");
    return t.rels;
}

std::vector<Relation> identities_2d() {
    Table t;
    const std::string c = kC2;
    for (const char* x : {"N", "C_LS", "J", "betaS0"}) t.br("commutant", "comm", "H", x, "0");
    for (int j = 1; j <= 2; ++j) {
        const std::string J = std::to_string(j);
        for (int z : {-1, 1}) {
            const std::string s = "s" + pm(z) + J, a = "a" + pm(z) + J, cc = "c" + pm(z) + J, n = sgn(z);
            t.br("ladder", "comm", "Hsq", s, "(* " + n + " 4 m omega " + s + ")");
            t.br("ladder", "comm", "Hsq", a, "(* " + n + " 4 m omega " + a + ")");
            t.br("ladder", "comm", "H", cc, "0");
            t.br("ladder", "comm", "N", a, "(* " + n + " " + a + ")");
            t.br("ladder", "comm", "C_LS", a, "(* " + n + " " + a + ")");
            t.br("ladder", "comm", "N", cc, "(* " + n + " " + cc + ")");
            t.br("ladder", "comm", "C_LS", cc, "(* " + sgn(-z) + " " + cc + ")");
            t.br("interleave", "comm", "H", a, "(* " + n + " " + c + " " + s + ")");
            t.br("interleave", "acomm", "H", s, "(* " + c + " " + a + ")");
        }
        t.br("presentation", "acomm", "s-" + J, "s+" + J, "Id");
        t.br("presentation", "comm", "a-" + J, "a+" + J, "Id");
        t.br("presentation", "comm", "c-" + J, "c+" + J, "Id");
        t.br("presentation", "comm", "s+" + J, "s-" + J, "(* -1 beta)");
        t.br("presentation", "acomm", "a+" + J, "a-" + J, "(+ N C_LS beta (* 0.5 Id))");
        t.br("presentation", "acomm", "c+" + J, "c-" + J, "(+ N (* -1 C_LS) (* 0.5 Id))");
        t.add("presentation", "H = c(a+s- + a-s+) - 2m Sc (j=" + J + ")", "H",
              "(- (* " + c + " (+ (* a+" + J + " s-" + J + ") (* a-" + J + " s+" + J + "))) (* 2 m Sc))");
    }
    t.add("presentation", "N = sum(b+b- + s+s-/2)", "N",
          "(+ (* b+1 b-1) (* b+2 b-2) (* 0.5 s+1 s-1) (* 0.5 s+2 s-2))");
    t.add("presentation", "N = sum(a+a- + c+c- + s+s-)/2", "N",
          "(* 0.5 (+ (* a+1 a-1) (* a+2 a-2) (* c+1 c-1) (* c+2 c-2) (* s+1 s-1) (* s+2 s-2)))");
    t.add("h-square", "H^2 = 2mw{a-1,a+1} - 2mw[s-1,s+1] + m^2", "Hsq",
          "(+ (* 2 m omega (acomm a-1 a+1)) (* -2 m omega (comm s-1 s+1)) (* m m Id))");
    t.add("h-square", "H^2 = 2mw(N + C) + mw + m^2", "Hsq",
          "(+ (* 2 m omega (+ N C_LS)) (* (+ (* m omega) (* m m)) Id))");
    t.add("h-square", "H^2 = 2m Hsch + 2mw C + 2mw Sc + m^2", "Hsq",
          "(+ (* 2 m Hsch) (* 2 m omega C_LS) (* 2 m omega Sc) (* m m Id))");
    t.add("h-square", "Hsch = w(N + beta/2 + 1/2)", "Hsch", "(* omega (+ N (* 0.5 beta) (* 0.5 Id)))");
    // chiral components as one-sided projections
    for (int sg : {1, -1}) {
        const std::string sfx = sg > 0 ? "_p" : "_m";
        const std::string proj = "(+ (* 0.5 Id) (* " + sgn(sg) + " betaS0))";
        for (const char* x : {"s", "a", "c"})
            for (int z : {-1, 1}) {
                const std::string l = std::string(x) + pm(z);
                t.add("recomposition", l + sfx + " = " + l + "1 P" + sfx, l + sfx, "(* " + l + "1 " + proj + ")");
            }
        t.add("recomposition", "H" + sfx + " = Hsch P" + sfx, "H" + sfx, "(* Hsch " + proj + ")");
    }
    t.add("recomposition", "H_p + H_m = Hsch", "(+ H_p H_m)", "Hsch");
    t.add("recomposition", "Sc_p + Sc_m = Sc", "(+ Sc_p Sc_m)", "Sc");
    return t.rels;
}

std::vector<Relation> identities_3d() {
    Table t;
    const std::string c = kC1;
    for (const char* x : {"N", "C_LS", "Jsq", "J3"}) t.br("commutant", "comm", "H", x, "0");
    t.br("commutant", "comm", "Hsq", "Lsq", "0");
    t.br("commutant", "comm", "Hsq", "beta", "0");
    t.add("commutant", "S^2 = 3/4", "Ssq", "(* 0.75 Id)");
    const char* cm[] = {"N", "C_LS", "Jsq", "Lsq", "J3", "beta"};
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b) t.br("commutant", "comm", cm[a], cm[b], "0");

    for (int z : {-1, 1}) {
        const std::string B = "Bs" + pm(z), S = "Ss" + pm(z), n = sgn(z);
        t.br("ladder", "comm", "N", B, "(* " + n + " " + B + ")");
        t.br("ladder", "comm", "N", S, "(* " + n + " " + S + ")");
        t.br("ladder", "comm", "beta", B, "0");
        t.br("ladder", "acomm", "beta", S, "0");
        t.br("ladder", "comm", "Lsq", S, "0");
        for (const char* x : {B.c_str(), S.c_str()}) {
            for (const char* j : {"J1", "J2", "J3"}) t.br("ladder", "comm", j, x, "0");
            t.br("ladder", "acomm", "C_LS", x, "0");
        }
    }

    t.add("h-square", "H^2 = 2mw(N + C + 1) + m^2", "Hsq", "(+ (* 2 m omega (+ N C_LS Id)) (* m m Id))");
    t.add("h-square", "H = c(B+S- + B-S+) - 2m Sc", "H", "(- (* " + c + " (+ (* Bs+ Ss-) (* Bs- Ss+))) (* 2 m Sc))");
    t.add("h-square", "(T+)^2 = (B+)^2", "(* T+ T+)", "Bs+*Bs+");
    t.add("h-square", "(T-)^2 = (B-)^2", "(* T- T-)", "Bs-*Bs-");

    const std::string h2 = "(+ (* 2 m omega (+ N Id)) (* m m) (* 2 m omega C_LS))";
    const std::string hbar = "(+ (* 2 m omega (- N C_LS)) (* 2 m omega Id) (* m m Id))";
    for (int z : {-1, 1}) {
        for (const std::string& x : {"Bs" + pm(z), "Ss" + pm(z)}) {
            t.add("braid", "<<H^2," + x + ">> = H^2 X - X Hbar^2", "(br " + h2 + " " + x + ")",
                  "(- (* Hsq " + x + ") (* " + x + " " + hbar + "))");
            auto& r = t.add("braid", "<<H^2," + x + ">>", "(br " + h2 + " " + x + ")",
                            "(* " + sgn(z) + " 2 m omega " + x + ")");
            r.printed = parse_sexpr("(* " + sgn(z) + " 2 m " + x + ")");
        }
    }

    t.add("recomposition", "H = H1 + H2 + H3 + m beta", "H", "(+ H1 H2 H3 (* m beta))");
    t.add("recomposition", "N = N1 + N2 + N3 + beta - 1", "N", "(+ N1 N2 N3 beta (* -1 Id))");
    for (int z : {-1, 1}) {
        const std::string B = "Bs" + pm(z);
        t.add("recomposition", B + " = sum " + B + "j", B, "(+ " + B + "1 " + B + "2 " + B + "3)");
    }
    for (int j = 1; j <= 3; ++j) {
        const std::string J = std::to_string(j), K = std::to_string(j % 3 + 1), L = std::to_string((j + 1) % 3 + 1);
        t.add("recomposition", "HxH" + J + " = i(b+" + K + "b-" + L + " + b+" + L + "b-" + K + ")S" + J, "HxH" + J,
              "(* i (+ (* b+" + K + " b-" + L + ") (* b+" + L + " b-" + K + ")) S" + J + ")");
        t.add("recomposition", "bH" + J + " = beta H" + J, "bH" + J, "(* beta H" + J + ")");
    }
    return t.rels;
}

}  // namespace

std::vector<Relation> model_identities(int dim) {
    switch (dim) {
        case 1: return identities_1d();
        case 2: return identities_2d();
        case 3: return identities_3d();
        default: throw ConfigError("dim must be 1, 2 or 3");
    }
}

std::vector<Relation> witnesses_2d(bool printed) {
    Table t;
    const std::string rhs = printed ? "(* -2 betaS0)" : "(* 2 i betaS0)";
    t.br("witness", "acomm", "s-1", "s+2", rhs);
    t.br("witness", "comm", "a-1", "a+2", rhs);
    t.add("witness", "-[c-1,c+2]", "(* -1 (comm c-1 c+2))", rhs);
    return t.rels;
}

VerificationReport adjoint_report(const OperatorRegistry& reg, int dim) {
    VerificationReport r;
    r.name = "adjoint";
    std::vector<std::string> stems;
    std::vector<std::string> idx;
    if (dim == 1) {
        stems = {"b", "s"};
        idx = {""};
    } else if (dim == 2) {
        stems = {"b", "s", "a", "c"};
        idx = {"1", "2"};
    } else if (dim == 3) {
        stems = {"b", "s", "Bs", "Ss"};
        idx = {"1", "2", "3"};
    } else {
        throw ConfigError("dim must be 1, 2 or 3");
    }
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& s : stems)
        for (const auto& i : idx) pairs.emplace_back(s + "-" + i, s + "+" + i);
    if (dim == 2)
        for (const char* x : {"s", "a", "c"})
            for (const char* sfx : {"_p", "_m"}) pairs.emplace_back(std::string(x) + "-" + sfx, std::string(x) + "+" + sfx);
    if (dim == 3)
        for (const char* x : {"Bs", "Ss", "T"}) pairs.emplace_back(std::string(x) + "-", std::string(x) + "+");
    for (const auto& [lo, hi] : pairs) {
        if (!reg.contains(lo) || !reg.contains(hi)) continue;
        CheckResult c;
        c.id = "(" + lo + ")^dagger = " + hi;
        c.group = "adjoint";
        c.residual = frob(SpMat(SpMat(reg[lo].adjoint()) - reg[hi]));
        c.tol = 1e-12;
        r.add(c);
    }
    return r;
}

VerificationReport chiral_projector_report(const OperatorRegistry& reg, int states, unsigned seed, double tol) {
    if (!reg.contains("betaS0")) throw ConfigError("chiral projector check needs the 2D registry");
    VerificationReport r;
    r.name = "chiral projector";
    r.meta["seed"] = seed;
    r.meta["states"] = states;
    const int depth = 2;  // largest generator reach
    if (reg.n_max() < depth) throw ConfigError("cutoff too small for requested depth");
    const SpMat v = column_selector(reg.occupation(), reg.n_max() - depth);
    const SpMat& bs0 = reg["betaS0"];
    const SpMat id = reg["Id"];
    std::mt19937 gen(seed);
    std::normal_distribution<double> nd;
    EvalContext ctx{&reg, nullptr};
    for (int sg : {1, -1}) {
        // states with beta S0 = sg/2, killed by the opposite algebra
        const SpMat proj = 0.5 * id + static_cast<double>(sg) * bs0;
        Mat x(v.cols(), states);
        for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = cplx(nd(gen), nd(gen));
        Mat psi = proj * (v * x);
        for (Eigen::Index c = 0; c < psi.cols(); ++c) psi.col(c).normalize();
        const SpMat ps = psi.sparseView();
        const AlgebraSpec& spec = builtin_spec(sg > 0 ? "pso-(3|4)" : "pso+(3|4)");
        const std::string half = sg > 0 ? "+1/2" : "-1/2";
        {
            CheckResult c;
            c.id = "beta S0 psi = " + half + " psi";
            c.group = "chiral projector";
            c.tol = tol;
            c.residual = (Mat(bs0 * ps) - 0.5 * sg * psi).colwise().norm().maxCoeff();
            r.add(c);
        }
        for (const auto& g : spec.generators) {
            CheckResult c;
            c.id = g.label + " on beta S0 = " + half;
            c.group = "chiral projector";
            c.tol = tol;
            c.depth = depth;
            c.residual = Mat(apply(parse_sexpr(g.label), ctx, ps)).colwise().norm().maxCoeff();
            r.add(c);
        }
    }
    return r;
}

}  // namespace dosc
