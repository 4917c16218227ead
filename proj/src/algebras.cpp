#include "dosc/algebra.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "dosc/fock.hpp"

namespace dosc {

namespace {

std::string pm(int z) { return z > 0 ? "+" : "-"; }

std::string nstr(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

// "(comm a b)" -> "[a,b]", "(acomm a b)" -> "{a,b}"
std::string bracket_id(const std::string& kind, const std::string& a, const std::string& b) {
    if (kind == "comm") return "[" + a + "," + b + "]";
    if (kind == "acomm") return "{" + a + "," + b + "}";
    return "<<" + a + "," + b + ">>";
}

struct SpecBuilder {
    AlgebraSpec s;

    SpecBuilder(std::string name, int dim, size_t k, Closure c) {
        s.name = std::move(name);
        s.dim = dim;
        s.k = k;
        s.closure = c;
    }
    void gens(const char* deg, std::initializer_list<std::string> labels) {
        for (const auto& l : labels) s.generators.push_back({l, Degree::parse(deg)});
    }
    Relation& rel(const std::string& kind, const std::string& a, const std::string& b, const std::string& rhs,
                  const std::string& printed = "", bool expanded = false) {
        Relation r;
        r.id = bracket_id(kind, a, b);
        r.lhs = parse_sexpr("(" + kind + " " + a + " " + b + ")");
        r.rhs = parse_sexpr(rhs);
        if (!printed.empty()) r.printed = parse_sexpr(printed);
        r.expanded = expanded;
        s.relations.push_back(std::move(r));
        return s.relations.back();
    }
    Relation& eq(const std::string& id, const std::string& lhs, const std::string& rhs) {
        Relation r;
        r.id = id;
        r.lhs = parse_sexpr(lhs);
        r.rhs = parse_sexpr(rhs);
        s.relations.push_back(std::move(r));
        return s.relations.back();
    }
};

AlgebraSpec bfa11() {
    SpecBuilder b("bfa(1|1)", 1, 1, Closure::span);
    b.gens("0", {"Id", "b-", "b+"});
    b.gens("1", {"s-", "s+"});
    b.rel("comm", "b-", "b+", "Id");
    b.rel("acomm", "s-", "s+", "Id");
    b.rel("acomm", "s-", "s-", "0");
    b.rel("acomm", "s+", "s+", "0");
    for (int e : {-1, 1})
        for (int z : {-1, 1}) b.rel("comm", "b" + pm(e), "s" + pm(z), "0", "", !(e < 0 && z < 0));
    return b.s;
}

AlgebraSpec pso32() {
    SpecBuilder b("pso(3|2)", 1, 2, Closure::span);
    b.gens("00", {"Hsch", "Sc", "b-*b-", "b+*b+"});
    b.gens("01", {"b-*s-", "b+*s+", "b-*s+", "b+*s-"});
    b.gens("10", {"b-", "b+"});
    b.gens("11", {"s-", "s+"});
    b.rel("acomm", "b-", "b+", "(* (/ 2 omega) Hsch)", "(* 2 Hsch)");
    b.rel("comm", "s-", "s+", "(* -2 Sc)");
    for (int e : {-1, 1})
        for (int z : {-1, 1})
            b.rel("acomm", "b" + pm(e), "s" + pm(z), "(* 2 b" + pm(e) + "*s" + pm(z) + ")", "", !(e < 0 && z < 0));
    b.rel("comm", "Hsch", "Sc", "0");
    for (int z : {-1, 1}) {
        const std::string bz = "b" + pm(z), sz = "s" + pm(z), c = nstr(z);
        b.rel("comm", "Hsch", bz, "(* " + c + " omega " + bz + ")");
        b.rel("comm", "Hsch", sz, "0");
        b.rel("comm", "Sc", bz, "0");
        b.rel("comm", "Sc", sz, "(* " + c + " " + sz + ")");
    }
    for (int e : {-1, 1})
        for (int z : {-1, 1})
            for (int x : {-1, 1}) {
                const std::string bs = "b" + pm(e) + "*s" + pm(z);
                b.rel("comm", bs, "b" + pm(x), "(* " + nstr(0.5 * (x - e)) + " s" + pm(z) + ")", "", true);
                b.rel("acomm", bs, "s" + pm(x), "(* " + nstr(0.5 * std::abs(x - z)) + " b" + pm(e) + ")", "", true);
            }
    return b.s;
}

AlgebraSpec bfa21() {
    SpecBuilder b("bfa(2|1)", 2, 1, Closure::span);
    b.gens("0", {"Id", "a-1", "a+1", "c-1", "c+1"});
    b.gens("1", {"s-1", "s+1"});
    b.rel("comm", "a-1", "a+1", "Id");
    b.rel("comm", "c-1", "c+1", "Id");
    b.rel("acomm", "s-1", "s+1", "Id");
    b.rel("acomm", "s-1", "s-1", "0");
    b.rel("acomm", "s+1", "s+1", "0");
    for (int e : {-1, 1})
        for (int z : {-1, 1}) {
            b.rel("comm", "a" + pm(e) + "1", "c" + pm(z) + "1", "0", "", true);
            b.rel("comm", "a" + pm(e) + "1", "s" + pm(z) + "1", "0", "", true);
            b.rel("comm", "c" + pm(e) + "1", "s" + pm(z) + "1", "0", "", true);
        }
    return b.s;
}

AlgebraSpec pso34(int sg) {
    const std::string x = sg > 0 ? "_p" : "_m";
    SpecBuilder b(sg > 0 ? "pso+(3|4)" : "pso-(3|4)", 2, 2, Closure::span);
    auto L = [&](const std::string& l) { return l + x; };
    auto P = [&](const std::string& l, const std::string& r) { return l + x + "*" + r + x; };
    b.gens("00", {L("H"), L("C"), L("Sc"), P("a-", "a-"), P("a+", "a+"), P("c-", "c-"), P("c+", "c+"),
                  P("a-", "c-"), P("a+", "c+"), P("a-", "c+"), P("a+", "c-")});
    for (const char* l : {"a", "c"})
        for (int e : {-1, 1})
            for (int z : {-1, 1}) b.s.generators.push_back({P(l + pm(e), "s" + pm(z)), Degree::parse("01")});
    b.gens("10", {L("a-"), L("a+"), L("c-"), L("c+")});
    b.gens("11", {L("s-"), L("s+")});

    const std::string H = L("H"), C = L("C"), Sc = L("Sc");
    b.rel("comm", H, C, "0");
    b.rel("comm", H, Sc, "0");
    b.rel("comm", C, Sc, "0");
    for (int z : {-1, 1}) {
        const std::string a = L("a" + pm(z)), c = L("c" + pm(z)), s = L("s" + pm(z)), n = nstr(z);
        b.rel("comm", H, a, "(* " + n + " omega " + a + ")");
        b.rel("comm", C, a, "(* " + n + " " + a + ")");
        b.rel("comm", H, c, "(* " + n + " omega " + c + ")");
        b.rel("comm", C, c, "(* " + nstr(-z) + " " + c + ")");
        b.rel("comm", C, s, "0");
        b.rel("comm", Sc, s, "(* " + n + " " + s + ")");
        b.rel("comm", Sc, a, "0");
        b.rel("comm", Sc, c, "0");
        b.rel("comm", H, s, "0");
    }
    b.rel("acomm", L("a-"), L("a+"), "(+ (/ " + H + " omega) " + C + ")");
    b.rel("acomm", L("c-"), L("c+"), "(- (/ " + H + " omega) " + C + ")");
    b.rel("comm", L("s-"), L("s+"), "(* -2 " + Sc + ")");
    for (int e : {-1, 1})
        for (int z : {-1, 1}) {
            const bool first = e < 0 && z < 0;
            b.rel("acomm", L("a" + pm(e)), L("c" + pm(z)), "(* 2 " + P("a" + pm(e), "c" + pm(z)) + ")", "", !first);
            b.rel("acomm", L("a" + pm(e)), L("s" + pm(z)), "(* 2 " + P("a" + pm(e), "s" + pm(z)) + ")", "", !first);
            b.rel("acomm", L("c" + pm(e)), L("s" + pm(z)), "(* 2 " + P("c" + pm(e), "s" + pm(z)) + ")", "", true);
        }
    for (const char* l : {"a", "c"}) {
        const std::string o = std::string(l) == "a" ? "c" : "a";
        for (int e : {-1, 1})
            for (int z : {-1, 1})
                for (int q : {-1, 1}) {
                    const std::string ls = P(l + pm(e), "s" + pm(z));
                    b.rel("comm", ls, L(l + pm(q)), "(* " + nstr(0.5 * (q - e)) + " " + L("s" + pm(z)) + ")", "", true);
                    b.rel("acomm", ls, L("s" + pm(q)),
                          "(* " + nstr(0.5 * std::abs(q - z)) + " " + L(l + pm(e)) + ")", "", true);
                    b.rel("comm", ls, L(o + pm(q)), "0", "", true);
                }
    }
    return b.s;
}

AlgebraSpec osp12_sl2() {
    SpecBuilder b("osp(1|2)+sl(2)", 3, 1, Closure::span);
    b.gens("0", {"N+Id", "Sc", "Ss-", "Ss+", "Bs-*Bs-", "Bs+*Bs+"});
    b.gens("1", {"Bs-", "Bs+"});
    b.rel("comm", "N+Id", "Sc", "0");
    for (int z : {-1, 1}) {
        const std::string B = "Bs" + pm(z), S = "Ss" + pm(z), B2 = B + "*" + B, n = nstr(z);
        b.rel("comm", "N+Id", B, "(* " + n + " " + B + ")");
        b.rel("comm", "N+Id", B2, "(* " + nstr(2 * z) + " " + B2 + ")");
        b.rel("comm", "N+Id", S, "(* " + n + " " + S + ")");
        b.rel("comm", "Sc", S, "(* " + n + " " + S + ")");
        b.rel("comm", "Sc", B, "0");
        b.rel("comm", "Sc", B2, "0");
        b.rel("acomm", B, B, "(* 2 " + B2 + ")");
        const std::string Bo = "Bs" + pm(-z), Bo2 = Bo + "*" + Bo;
        b.rel("comm", Bo2, B, "(* " + nstr(2 * z) + " " + Bo + ")");
        for (int q : {-1, 1}) {
            b.rel("comm", S, "Bs" + pm(q), "0");
            b.rel("comm", S, "Bs" + pm(q) + "*Bs" + pm(q), "0");
        }
    }
    b.rel("comm", "Ss-", "Ss+", "(* -2 Sc)");
    b.rel("acomm", "Bs-", "Bs+", "(- (* 2 N+Id) (* 2 Sc))");
    b.rel("comm", "Bs-*Bs-", "Bs+*Bs+", "(- (* 4 N+Id) (* 4 Sc))");
    return b.s;
}

AlgebraSpec osp01_sl10() {
    SpecBuilder b("osp01(1|2)+sl10(1|1)", 3, 2, Closure::span);
    b.gens("00", {"N-Sc", "Id", "Bs-*Bs-", "Bs+*Bs+"});
    b.gens("01", {"Bs-", "Bs+"});
    b.gens("10", {"Ss-", "Ss+"});
    for (int z : {-1, 1}) {
        const std::string B = "Bs" + pm(z), S = "Ss" + pm(z), B2 = B + "*" + B, n = nstr(z);
        b.rel("comm", "N-Sc", B, "(* " + n + " " + B + ")");
        b.rel("comm", "N-Sc", B2, "(* " + nstr(2 * z) + " " + B2 + ")");
        b.rel("comm", "N-Sc", S, "0");
        b.rel("acomm", S, S, "0");
        b.rel("acomm", B, B, "(* 2 " + B2 + ")");
        const std::string Bo = "Bs" + pm(-z), Bo2 = Bo + "*" + Bo;
        b.rel("comm", Bo2, B, "(* " + nstr(2 * z) + " " + Bo + ")");
        for (int q : {-1, 1}) {
            b.rel("comm", "Bs" + pm(q), S, "0");
            b.rel("comm", "Bs" + pm(q) + "*Bs" + pm(q), S, "0");
        }
    }
    b.rel("acomm", "Ss-", "Ss+", "Id");
    b.rel("acomm", "Bs-", "Bs+", "(+ (* 2 N-Sc) (* 2 Id))");
    b.rel("comm", "Bs-*Bs-", "Bs+*Bs+", "(+ (* 4 N-Sc) (* 4 Id))");
    return b.s;
}

AlgebraSpec osp01_gl10_a11() {
    SpecBuilder b("osp01(1|2)+gl10(1|1)+a11", 3, 2, Closure::remaining_zero);
    b.gens("00", {"N", "Id", "Sc", "Bs-*Bs-", "Bs+*Bs+"});
    b.gens("01", {"Bs-", "Bs+"});
    b.gens("10", {"Ss-", "Ss+"});
    b.gens("11", {"C_LS"});
    for (int z : {-1, 1}) {
        const std::string B = "Bs" + pm(z), S = "Ss" + pm(z), B2 = B + "*" + B, n = nstr(z);
        b.rel("comm", "N", B, "(* " + n + " " + B + ")");
        b.rel("comm", "N", B2, "(* " + nstr(2 * z) + " " + B2 + ")");
        b.rel("comm", "N", S, "(* " + n + " " + S + ")");
        b.rel("comm", "Sc", S, "(* " + n + " " + S + ")");
        const std::string Bo = "Bs" + pm(-z), Bo2 = Bo + "*" + Bo;
        b.rel("comm", Bo2, B, "(* " + nstr(2 * z) + " " + Bo + ")");
        b.rel("acomm", B, B, "(* 2 " + B2 + ")").unprinted = true;
    }
    b.rel("acomm", "Ss-", "Ss+", "Id");
    b.rel("comm", "Bs-*Bs-", "Bs+*Bs+", "(+ (* 4 N) (* -4 Sc) (* 4 Id))");
    b.rel("acomm", "Bs-", "Bs+", "(+ (* 2 N) (* -2 Sc) (* 2 Id))");
    return b.s;
}

int levi(int j, int k) {  // eps_{jkl} for the remaining l, 1-based j != k
    return ((k - j + 3) % 3 == 1) ? 1 : -1;
}

AlgebraSpec z2cubed() {
    SpecBuilder b("z2cubed", 3, 3, Closure::remaining_zero);
    b.gens("000", {"Id", "N1", "N2", "N3"});
    b.gens("111", {"beta", "Ss-", "Ss+"});
    const char* hdeg[3] = {"001", "010", "100"};
    const char* bdeg[3] = {"110", "101", "011"};
    for (int j = 0; j < 3; ++j) {
        const std::string J = std::to_string(j + 1);
        b.gens(hdeg[j], {"H" + J, "bH" + J});
    }
    for (int j = 0; j < 3; ++j) {
        const std::string J = std::to_string(j + 1);
        b.gens(bdeg[j], {"Bs-" + J, "Bs+" + J, "HxH" + J, "LS" + J});
    }
    const std::string c = "(sqrt (* 2 m omega))";
    const std::string four = "(* 4 m omega ";
    b.rel("acomm", "Ss-", "Ss+", "Id");
    b.rel("acomm", "beta", "beta", "(* 2 Id)").unprinted = true;
    for (int j = 1; j <= 3; ++j) {
        const std::string J = std::to_string(j);
        b.rel("comm", "Bs-" + J, "Bs+" + J, "Id");
        for (int k = 1; k <= 3; ++k) {
            const std::string K = std::to_string(k);
            const bool d = j == k;
            const bool ex = !(j == 1 && k == 1);
            b.rel("comm", "N" + J, "H" + K, d ? "0" : "(* -1 bH" + K + ")", "", ex);
            b.rel("comm", "N" + J, "bH" + K, d ? "0" : "(* -1 H" + K + ")", "", ex);
            b.rel("comm", "N" + J, "Bs-" + K, d ? "(* -1 Bs-" + K + ")" : "0", "", ex);
            b.rel("comm", "N" + J, "Bs+" + K, d ? "Bs+" + K : "0", "", ex);
            const std::string lc = d ? "0" : nstr(levi(j, k));
            const std::string pc = d ? "0" : "1";
            b.rel("comm", "N" + J, "HxH" + K, "(* " + lc + " LS" + K + ")", "(* " + pc + " LS" + K + ")", ex);
            b.rel("comm", "N" + J, "LS" + K, "(* " + lc + " HxH" + K + ")", "(* " + pc + " HxH" + K + ")", ex);
        }
        b.rel("comm", "N" + J, "Ss-", "(* -1 Ss-)", "", j > 1);
        b.rel("comm", "N" + J, "Ss+", "Ss+", "", j > 1);
        b.rel("acomm", "H" + J, "Ss-", "(* " + c + " Bs-" + J + ")", "", j > 1);
        b.rel("acomm", "bH" + J, "Ss-", "(* -1 " + c + " Bs-" + J + ")", "", j > 1);
        b.rel("acomm", "H" + J, "Ss+", "(* " + c + " Bs+" + J + ")", "", j > 1);
        b.rel("acomm", "bH" + J, "Ss+", "(* " + c + " Bs+" + J + ")", "", j > 1);
        b.rel("comm", "H" + J, "Bs-" + J, "(* -1 " + c + " Ss-)", "", j > 1);
        b.rel("comm", "bH" + J, "Bs-" + J, "(* -1 " + c + " Ss-)", "", j > 1);
        b.rel("comm", "H" + J, "Bs+" + J, "(* " + c + " Ss+)", "", j > 1);
        b.rel("comm", "bH" + J, "Bs+" + J, "(* -1 " + c + " Ss+)", "", j > 1);
        b.rel("acomm", "H" + J, "H" + J, four + "N" + J + ")", "", j > 1);
        b.rel("acomm", "bH" + J, "bH" + J, "(* -4 m omega N" + J + ")", four + "N" + J + ")", j > 1);
        const std::string N1 = std::to_string(j % 3 + 1), N2 = std::to_string((j + 1) % 3 + 1);
        b.rel("comm", "LS" + J, "HxH" + J, "(* 0.5 (- N" + N1 + " N" + N2 + "))", "", j > 1);
    }
    for (int j = 1; j <= 3; ++j)
        for (int k = 1; k <= 3; ++k) {
            if (j == k) continue;
            const std::string J = std::to_string(j), K = std::to_string(k), L = std::to_string(6 - j - k);
            const std::string e = nstr(levi(j, k));
            const bool ex = !(j == 1 && k == 2);
            // sum_l eps_{jkl} X_l and sum_l eps_{jkl}^2 X_l
            auto S = [&](double f, const std::string& x) { return "(* " + nstr(f) + " " + e + " " + x + L + ")"; };
            auto S2 = [&](double f, const std::string& x) { return "(* " + nstr(f) + " " + x + L + ")"; };
            auto S4 = [&](double f, const std::string& x, bool sq) {
                return "(* " + nstr(f) + " m omega " + (sq ? "" : e + " ") + x + L + ")";
            };
            b.rel("comm", "H" + J, "H" + K, S4(4, "HxH", false), "", ex);
            b.rel("comm", "bH" + J, "bH" + K, S4(-4, "HxH", false), "", ex);
            b.rel("comm", "H" + J, "bH" + K, S4(4, "LS", true), S4(4, "LS", false), ex);
            b.rel("acomm", "H" + J, "HxH" + K, S(0.5, "bH"), "", ex);
            b.rel("acomm", "bH" + J, "LS" + K, S2(-0.5, "bH"), S(-0.5, "bH"), ex);
            b.rel("acomm", "H" + J, "LS" + K, S2(-0.5, "H"), S(-0.5, "H"), ex);
            b.rel("acomm", "bH" + J, "HxH" + K, S(0.5, "H"), "", ex);
            b.rel("acomm", "HxH" + J, "Bs-" + K, S(0.5, "Bs-"), "", ex);
            b.rel("acomm", "LS" + J, "Bs-" + K, S2(-0.5, "Bs-"), S(-0.5, "Bs-"), ex);
            b.rel("acomm", "HxH" + J, "Bs+" + K, S(-0.5, "Bs+"), "", ex);
            b.rel("acomm", "LS" + J, "Bs+" + K, S2(-0.5, "Bs+"), S(-0.5, "Bs+"), ex);
            b.rel("acomm", "LS" + J, "HxH" + K, S2(0.5, "HxH"), S(0.5, "HxH"), ex);
            b.rel("acomm", "LS" + J, "LS" + K, S2(-0.5, "LS"), S(-0.5, "LS"), ex);
            b.rel("acomm", "HxH" + J, "HxH" + K, S2(-0.5, "LS"), S(-0.5, "LS"), ex);
        }
    // Inhomogeneous Hamiltonian against the summed ladders.
    const std::string Hs = "(+ H1 H2 H3 (* m beta))";
    b.eq("<<H,Bs->>", "(br " + Hs + " (+ Bs-1 Bs-2 Bs-3))", "(* -3 " + c + " Ss-)");
    b.eq("<<H,Bs+>>", "(br " + Hs + " (+ Bs+1 Bs+2 Bs+3))", "(* 3 " + c + " Ss+)").printed =
        parse_sexpr("(* 3 " + c + " Ss-)");
    b.eq("<<H,Ss->>", "(br " + Hs + " Ss-)", "(* " + c + " (+ Bs-1 Bs-2 Bs-3))");
    b.eq("<<H,Ss+>>", "(br " + Hs + " Ss+)", "(* " + c + " (+ Bs+1 Bs+2 Bs+3))");
    return b.s;
}

bool has_key(const json& j, const char* k) { return j.contains(k) && !j.at(k).is_null(); }

}  // namespace

std::map<std::string, Degree> AlgebraSpec::degree_map() const {
    std::map<std::string, Degree> m;
    for (const auto& g : generators) m[g.label] = g.degree;
    return m;
}

const Generator* AlgebraSpec::find(const std::string& label) const {
    for (const auto& g : generators)
        if (g.label == label) return &g;
    return nullptr;
}

std::vector<AlgebraSpec> builtin_specs() {
    return {bfa11(), pso32(), bfa21(), pso34(1), pso34(-1), osp12_sl2(), osp01_sl10(), osp01_gl10_a11(), z2cubed()};
}

const AlgebraSpec& builtin_spec(const std::string& name) {
    static const std::vector<AlgebraSpec> all = builtin_specs();
    for (const auto& s : all)
        if (s.name == name) return s;
    std::string known;
    for (const auto& s : all) known += " " + s.name;
    throw ConfigError("unknown algebra " + name + "; known:" + known);
}

json spec_to_json(const AlgebraSpec& s) {
    json j;
    j["name"] = s.name;
    j["dim"] = s.dim;
    j["k"] = s.k;
    j["closure"] = s.closure == Closure::span ? "span" : "remaining_zero";
    json g = json::array();
    for (const auto& x : s.generators) g.push_back({{"label", x.label}, {"degree", x.degree.str()}});
    j["generators"] = g;
    json r = json::array();
    for (const auto& x : s.relations) {
        json e;
        e["id"] = x.id;
        e["lhs"] = to_string(x.lhs);
        e["rhs"] = to_string(x.rhs);
        if (x.printed) e["printed"] = to_string(*x.printed);
        if (x.min_depth) e["min_depth"] = x.min_depth;
        if (x.expanded) e["expanded"] = true;
        if (x.unprinted) e["unprinted"] = true;
        if (!x.note.empty()) e["note"] = x.note;
        r.push_back(e);
    }
    j["relations"] = r;
    return j;
}

AlgebraSpec spec_from_json(const json& j) {
    try {
        AlgebraSpec s;
        s.name = j.at("name").get<std::string>();
        s.dim = j.value("dim", 1);
        s.k = j.at("k").get<size_t>();
        const std::string c = j.value("closure", std::string("span"));
        if (c == "span") s.closure = Closure::span;
        else if (c == "remaining_zero") s.closure = Closure::remaining_zero;
        else throw ConfigError("unknown closure mode " + c);
        for (const auto& g : j.at("generators")) {
            Generator x{g.at("label").get<std::string>(), Degree::parse(g.at("degree").get<std::string>())};
            if (x.degree.size() != s.k) throw ConfigError("generator " + x.label + " has degree of wrong length");
            s.generators.push_back(std::move(x));
        }
        for (const auto& e : j.at("relations")) {
            Relation r;
            r.lhs = parse_sexpr(e.at("lhs").get<std::string>());
            r.rhs = parse_sexpr(e.at("rhs").get<std::string>());
            r.id = e.value("id", to_string(r.lhs));
            if (has_key(e, "printed")) r.printed = parse_sexpr(e.at("printed").get<std::string>());
            r.min_depth = e.value("min_depth", 0);
            r.expanded = e.value("expanded", false);
            r.unprinted = e.value("unprinted", false);
            r.note = e.value("note", std::string());
            s.relations.push_back(std::move(r));
        }
        return s;
    } catch (const json::exception& ex) {
        throw ConfigError(std::string("bad algebra json: ") + ex.what());
    }
}

// ---- verification ----

namespace {

int pick_depth(int reach, int extra, const OperatorRegistry& reg) {
    const int d = std::max(reach, extra);
    if (reg.n_max() - d < 0)
        throw ConfigError("cutoff too small for requested depth " + std::to_string(d) + " (n_max " +
                          std::to_string(reg.n_max()) + ")");
    return d;
}

SpMat identity(int n) {
    SpMat m(n, n);
    m.setIdentity();
    return m;
}

// Inner product <a,b> = sum conj(a) b over the stored entries.
cplx inner(const SpMat& a, const SpMat& b) { return a.conjugate().cwiseProduct(b).sum(); }

// Distance of v from span{basis}.
double span_residual(const SpMat& v, const std::vector<SpMat>& basis) {
    if (basis.empty()) return frob(v);
    const auto n = static_cast<Eigen::Index>(basis.size());
    Mat g(n, n);
    Vec rhs(n);
    for (Eigen::Index a = 0; a < n; ++a) {
        rhs(a) = inner(basis[static_cast<size_t>(a)], v);
        for (Eigen::Index b = 0; b < n; ++b) g(a, b) = inner(basis[static_cast<size_t>(a)], basis[static_cast<size_t>(b)]);
    }
    Vec c = g.completeOrthogonalDecomposition().solve(rhs);
    SpMat r = v;
    for (Eigen::Index a = 0; a < n; ++a) r -= c(a) * basis[static_cast<size_t>(a)];
    return frob(r);
}

std::optional<std::pair<std::string, std::string>> bracket_pair(const Expr& lhs) {
    using K = Expr::Kind;
    if ((lhs.kind == K::Comm || lhs.kind == K::Acomm || lhs.kind == K::Br) && lhs.args[0].kind == K::Sym &&
        lhs.args[1].kind == K::Sym) {
        auto a = lhs.args[0].sym, b = lhs.args[1].sym;
        if (b < a) std::swap(a, b);
        return std::pair{a, b};
    }
    return std::nullopt;
}

void bracket_type_walk(const Expr& e, const EvalContext& ctx, std::vector<std::string>& bad) {
    using K = Expr::Kind;
    if (e.kind == K::Comm || e.kind == K::Acomm) {
        auto da = degree_of(e.args[0], ctx), db = degree_of(e.args[1], ctx);
        if (da && db && da->size() && db->size()) {
            const int eps = commutation_factor(*da, *db);
            if ((eps == 1) != (e.kind == K::Comm)) bad.push_back(to_string(e));
        }
    }
    for (const auto& a : e.args) bracket_type_walk(a, ctx, bad);
}

}  // namespace

CheckResult check_relation(const Relation& r, const EvalContext& ctx, const VerifyOptions& opt) {
    const OperatorRegistry& reg = *ctx.reg;
    const Expr& rhs = (opt.use_printed && r.printed) ? *r.printed : r.rhs;
    const int reach = std::max(reach_of(r.lhs, ctx), reach_of(rhs, ctx));
    CheckResult c;
    c.id = r.id;
    c.group = !r.group.empty() ? r.group : r.expanded ? "expanded" : "relation";
    c.tol = opt.tol;
    c.depth = pick_depth(reach, std::max(r.min_depth, opt.min_depth), reg);
    const SpMat v = column_selector(reg.occupation(), reg.n_max() - c.depth);
    SpMat d = apply(r.lhs, ctx, v) - apply(rhs, ctx, v);
    c.residual = frob(d);
    if (opt.unprojected) {
        const SpMat id = identity(reg.side());
        c.unprojected = frob(SpMat(apply(r.lhs, ctx, id) - apply(rhs, ctx, id)));
    }
    c.note = r.note;
    return c;
}

VerificationReport verify_relations(const std::string& name, const std::vector<Relation>& rels,
                                    const OperatorRegistry& reg, const VerifyOptions& opt,
                                    const std::map<std::string, Degree>* degrees) {
    VerificationReport rep;
    rep.name = name;
    EvalContext ctx{&reg, degrees};
    for (const auto& r : rels) {
        if (opt.use_printed && r.unprinted) continue;
        rep.add(check_relation(r, ctx, opt));
    }
    return rep;
}

VerificationReport verify_algebra(const AlgebraSpec& spec, const OperatorRegistry& reg, const VerifyOptions& opt) {
    const auto degrees = spec.degree_map();
    for (const auto& g : spec.generators) (void)reg.at(g.label);
    VerificationReport rep = verify_relations(spec.name, spec.relations, reg, opt, &degrees);
    rep.meta["algebra"] = spec.name;
    rep.meta["generators"] = spec.generators.size();
    rep.meta["relations"] = rep.checks.size();
    rep.meta["printed"] = opt.use_printed;
    EvalContext ctx{&reg, &degrees};

    if (opt.bracket_types) {
        std::vector<std::string> bad;
        for (const auto& r : spec.relations) bracket_type_walk(r.lhs, ctx, bad);
        CheckResult c;
        c.id = "bracket types";
        c.group = "bracket-type";
        c.residual = static_cast<double>(bad.size());
        c.tol = 0.5;
        for (const auto& b : bad) c.note += (c.note.empty() ? "" : "; ") + b;
        rep.add(c);
    }

    if (opt.closure) {
        std::set<std::pair<std::string, std::string>> covered;
        for (const auto& r : spec.relations) {
            if (opt.use_printed && r.unprinted) continue;
            if (auto p = bracket_pair(r.lhs)) covered.insert(*p);
        }
        const auto& gs = spec.generators;
        std::map<int, SpMat> selectors;
        auto sel = [&](int depth) -> const SpMat& {
            auto it = selectors.find(depth);
            if (it == selectors.end())
                it = selectors.emplace(depth, column_selector(reg.occupation(), reg.n_max() - depth)).first;
            return it->second;
        };
        size_t checked = 0;
        for (size_t a = 0; a < gs.size(); ++a)
            for (size_t b = a; b < gs.size(); ++b) {
                auto key = std::minmax(gs[a].label, gs[b].label);
                if (spec.closure == Closure::remaining_zero && covered.count({key.first, key.second})) continue;
                const auto& xa = reg.at(gs[a].label);
                const auto& xb = reg.at(gs[b].label);
                const int depth = pick_depth(xa.reach + xb.reach, opt.min_depth, reg);
                const SpMat& v = sel(depth);
                const int eps = commutation_factor(gs[a].degree, gs[b].degree);
                SpMat w = xa.matrix * SpMat(xb.matrix * v) - static_cast<double>(eps) * SpMat(xb.matrix * SpMat(xa.matrix * v));
                prune(w, 1e-15);
                CheckResult c;
                c.id = bracket_id("br", gs[a].label, gs[b].label);
                c.group = "closure";
                c.depth = depth;
                c.tol = opt.tol;
                if (spec.closure == Closure::remaining_zero) {
                    c.residual = frob(w);
                    c.note = "expected zero";
                } else {
                    const Degree target = gs[a].degree + gs[b].degree;
                    std::vector<SpMat> basis;
                    for (const auto& g : gs)
                        if (g.degree == target) basis.push_back(reg.at(g.label).matrix * v);
                    // the span fit is relative to the size of the bracket
                    c.tol = opt.tol * std::max(1.0, frob(w));
                    c.residual = span_residual(w, basis);
                    c.note = "in span of degree " + target.str();
                }
                rep.add(c);
                ++checked;
            }
        rep.meta["closure_pairs"] = checked;
    }
    return rep;
}

VerificationReport colour_jacobi_sweep(const AlgebraSpec& spec, const OperatorRegistry& reg, double tol,
                                       int min_depth) {
    VerificationReport rep;
    rep.name = spec.name + " jacobi";
    const auto& gs = spec.generators;
    const size_t n = gs.size();
    std::vector<const GradedOperator*> ops;
    for (const auto& g : gs) ops.push_back(&reg.at(g.label));

    // Full pair brackets G[a][b] = <<a,b>>; G[b][a] = -eps G[a][b].
    std::vector<std::vector<SpMat>> G(n, std::vector<SpMat>(n));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a; b < n; ++b) {
            const int e = commutation_factor(gs[a].degree, gs[b].degree);
            SpMat m = ops[a]->matrix * ops[b]->matrix - static_cast<double>(e) * SpMat(ops[b]->matrix * ops[a]->matrix);
            m.prune(cplx(0.0), 1e-300);
            G[a][b] = m;
            if (b != a) G[b][a] = static_cast<double>(-e) * m;
        }

    struct DepthCache {
        SpMat v;
        std::vector<SpMat> xv;                // X V
        std::vector<std::vector<SpMat>> gv;   // G V
    };
    std::map<int, DepthCache> caches;
    auto cache = [&](int depth) -> DepthCache& {
        auto it = caches.find(depth);
        if (it != caches.end()) return it->second;
        DepthCache c;
        c.v = column_selector(reg.occupation(), reg.n_max() - depth);
        for (size_t a = 0; a < n; ++a) c.xv.push_back(ops[a]->matrix * c.v);
        c.gv.assign(n, std::vector<SpMat>(n));
        for (size_t a = 0; a < n; ++a)
            for (size_t b = 0; b < n; ++b) c.gv[a][b] = G[a][b] * c.v;
        return caches.emplace(depth, std::move(c)).first->second;
    };

    double worst = 0.0;
    std::string worst_id;
    size_t triples = 0, bad = 0;
    for (size_t x = 0; x < n; ++x) {
        double worst_x = 0.0;
        int depth_x = 0;
        for (size_t y = 0; y < n; ++y)
            for (size_t z = 0; z < n; ++z) {
                const int depth = pick_depth(ops[x]->reach + ops[y]->reach + ops[z]->reach, min_depth, reg);
                depth_x = std::max(depth_x, depth);
                DepthCache& c = cache(depth);
                const Degree &dx = gs[x].degree, &dy = gs[y].degree, &dz = gs[z].degree;
                // <<x,<<y,z>>>> - <<<<x,y>>,z>> - eps(x,y) <<y,<<x,z>>>>
                SpMat t = ops[x]->matrix * c.gv[y][z];
                t -= static_cast<double>(commutation_factor(dx, dy + dz)) * SpMat(G[y][z] * c.xv[x]);
                t -= G[x][y] * c.xv[z];
                t += static_cast<double>(commutation_factor(dx + dy, dz)) * SpMat(ops[z]->matrix * c.gv[x][y]);
                const double exy = commutation_factor(dx, dy);
                t -= exy * SpMat(ops[y]->matrix * c.gv[x][z]);
                t += exy * static_cast<double>(commutation_factor(dy, dx + dz)) * SpMat(G[x][z] * c.xv[y]);
                const double r = frob(t);
                ++triples;
                if (r >= tol) ++bad;
                if (r > worst_x) worst_x = r;
                if (r > worst) {
                    worst = r;
                    worst_id = gs[x].label + "," + gs[y].label + "," + gs[z].label;
                }
            }
        CheckResult c;
        c.id = "jacobi " + gs[x].label + ",*,*";
        c.group = "jacobi";
        c.residual = worst_x;
        c.tol = tol;
        c.depth = depth_x;
        rep.add(c);
    }
    rep.meta["triples"] = triples;
    rep.meta["failing_triples"] = bad;
    rep.meta["worst_triple"] = worst_id;
    rep.meta["worst_residual"] = worst;
    return rep;
}

RemarkRank remark_rank(const OperatorRegistry& reg, int count) {
    if (count < 1) throw ConfigError("count must be >= 1");
    const SpMat& bm = reg["Bs-"];
    const SpMat& bp = reg["Bs+"];
    const SpMat& sm = reg["Ss-"];
    const SpMat& sp = reg["Ss+"];
    const SpMat up = bp * sm + sm * bp;    // {B+s,S-s}
    const SpMat down = bm * sp + sp * bm;  // {B-s,S+s}
    std::vector<SpMat> xs{bm};
    for (int k = 1; k < count; ++k) {
        const SpMat& g = (k % 2) ? up : down;
        const SpMat& x = xs.back();
        xs.push_back(SpMat(g * x - x * g));
    }
    // Compare on columns where every x_k is exact.
    const int depth = pick_depth(count + 1, 0, reg);
    const SpMat v = column_selector(reg.occupation(), reg.n_max() - depth);
    std::vector<SpMat> cols;
    for (const auto& x : xs) cols.push_back(x * v);
    const auto n = static_cast<Eigen::Index>(cols.size());
    Mat g(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b) g(a, b) = inner(cols[static_cast<size_t>(a)], cols[static_cast<size_t>(b)]);
    Eigen::SelfAdjointEigenSolver<Mat> es(g);
    RemarkRank r;
    r.generated = static_cast<int>(n);
    const double top = std::max(es.eigenvalues().maxCoeff(), 1e-300);
    for (Eigen::Index a = n - 1; a >= 0; --a) {
        const double ev = std::max(es.eigenvalues()(a), 0.0);
        r.singular_values.push_back(std::sqrt(ev));
        if (ev > 1e-16 * top) ++r.rank;
    }
    return r;
}

}  // namespace dosc
