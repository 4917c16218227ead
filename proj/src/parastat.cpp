#include <cmath>
#include <map>
#include <optional>

#include "dosc/oscillator.hpp"

namespace dosc {

namespace {

std::string pm(int z) { return z > 0 ? "+" : "-"; }
std::string numstr(double v) {
    std::string s = std::to_string(v);
    return s;
}

struct Family {
    std::string name;
    std::string f, b;                       // label stems, empty when absent
    std::vector<std::string> fi, bi;        // index suffixes
    std::map<std::string, std::optional<bool>> expect;  // schema -> expected outcome
};

std::vector<Family> families(int dim) {
    using E = std::map<std::string, std::optional<bool>>;
    const std::optional<bool> T = true, F = false, U = std::nullopt;
    switch (dim) {
        case 1:
            return {{"1d", "s", "b", {""}, {""},
                     E{{"fermion", T}, {"boson", T}, {"parafermion", T}, {"paraboson", T},
                       {"parafermion_like", T}, {"paraboson_like", T}, {"number_like", T}, {"number_like_b", T},
                       {"rel_parafermion", U}, {"rel_paraboson", T}}}};
        case 2:
            return {
                {"2d-s", "s", "", {"1", "2"}, {},
                 E{{"fermion", F}, {"parafermion", F}, {"parafermion_like", T}, {"number_like", T}}},
                {"2d-a", "", "a", {}, {"1", "2"},
                 E{{"boson", F}, {"paraboson", F}, {"paraboson_like", T}, {"number_like_b", T}}},
                {"2d-c", "", "c", {}, {"1", "2"},
                 E{{"boson", F}, {"paraboson", F}, {"paraboson_like", T}, {"number_like_b", T}}},
                {"2d-s1a1", "s", "a", {"1"}, {"1"}, E{{"rel_paraboson", T}}},
                {"2d-s1c1", "s", "c", {"1"}, {"1"}, E{{"rel_paraboson", T}}},
            };
        case 3:
            return {
                {"3d-s", "s", "", {"1", "2", "3"}, {},
                 E{{"fermion", F}, {"parafermion", F}, {"parafermion_like", T}}},
                {"3d-spin", "Ss", "Bs", {""}, {""},
                 E{{"fermion", T}, {"paraboson", T}, {"boson", F}, {"rel_parafermion", F}, {"rel_paraboson", F}}},
            };
        default: throw ConfigError("dim must be 1, 2 or 3");
    }
}

struct Schemas {
    std::map<std::string, std::vector<Relation>> by_name;
    std::vector<std::string> order;

    void add(const std::string& schema, const std::string& lhs, const std::string& rhs) {
        if (!by_name.count(schema)) order.push_back(schema);
        Relation r;
        r.lhs = parse_sexpr(lhs);
        r.rhs = parse_sexpr(rhs);
        r.id = lhs;
        r.group = schema;
        by_name[schema].push_back(std::move(r));
    }
};

std::string scaled(double c, const std::string& x) {
    if (c == 0.0) return "0";
    return "(* " + numstr(c) + " " + x + ")";
}

std::string sum2(const std::string& a, const std::string& b) {
    if (a == "0") return b;
    if (b == "0") return a;
    return "(+ " + a + " " + b + ")";
}

Schemas build(const Family& fam) {
    Schemas s;
    const std::vector<int> S{1, -1};
    auto d = [](const std::string& a, const std::string& b) { return a == b ? 1.0 : 0.0; };
    auto Fo = [&](const std::string& i, int z) { return fam.f + pm(z) + i; };
    auto Bo = [&](const std::string& i, int z) { return fam.b + pm(z) + i; };
    auto C = [](const std::string& a, const std::string& b) { return "(comm " + a + " " + b + ")"; };
    auto A = [](const std::string& a, const std::string& b) { return "(acomm " + a + " " + b + ")"; };

    if (!fam.f.empty()) {
        for (const auto& i : fam.fi)
            for (const auto& j : fam.fi) {
                s.add("fermion", A(Fo(i, 1), Fo(j, -1)), scaled(d(i, j), "Id"));
                s.add("fermion", A(Fo(i, 1), Fo(j, 1)), "0");
                s.add("fermion", A(Fo(i, -1), Fo(j, -1)), "0");
            }
        for (const auto& i : fam.fi)
            for (const auto& j : fam.fi)
                for (const auto& k : fam.fi) {
                    for (int z : S)
                        for (int e : S)
                            for (int x : S)
                                s.add("parafermion", C(C(Fo(i, z), Fo(j, e)), Fo(k, x)),
                                      sum2(scaled(std::abs(x - e) * d(j, k), Fo(i, z)),
                                           scaled(-std::abs(x - z) * d(i, k), Fo(j, e))));
                    std::string r = sum2(scaled(-2 * d(i, j), Fo(k, -1)), scaled(2 * d(j, k), Fo(i, -1)));
                    r = sum2(r, scaled(-2 * d(k, i), Fo(j, -1)));
                    s.add("parafermion_like", C(C(Fo(i, 1), Fo(j, -1)), Fo(k, -1)), r);
                    s.add("parafermion_like", C(C(Fo(i, -1), Fo(j, -1)), Fo(k, -1)), "0");
                }
        for (const auto& j : fam.fi)
            for (const auto& k : fam.fi) s.add("number_like", C(C(Fo(j, 1), Fo(j, -1)), Fo(k, -1)), scaled(-2, Fo(k, -1)));
    }
    if (!fam.b.empty()) {
        for (const auto& i : fam.bi)
            for (const auto& j : fam.bi) {
                s.add("boson", C(Bo(i, -1), Bo(j, 1)), scaled(d(i, j), "Id"));
                s.add("boson", C(Bo(i, 1), Bo(j, 1)), "0");
                s.add("boson", C(Bo(i, -1), Bo(j, -1)), "0");
            }
        for (const auto& i : fam.bi)
            for (const auto& j : fam.bi)
                for (const auto& k : fam.bi) {
                    for (int z : S)
                        for (int e : S)
                            for (int x : S)
                                s.add("paraboson", C(A(Bo(i, z), Bo(j, e)), Bo(k, x)),
                                      sum2(scaled((x - e) * d(j, k), Bo(i, z)), scaled((x - z) * d(i, k), Bo(j, e))));
                    std::string r = sum2(scaled(-2 * d(i, j), Bo(k, -1)), scaled(2 * d(j, k), Bo(i, -1)));
                    r = sum2(r, scaled(-2 * d(k, i), Bo(j, -1)));
                    s.add("paraboson_like", C(A(Bo(i, 1), Bo(j, -1)), Bo(k, -1)), r);
                    s.add("paraboson_like", C(A(Bo(i, -1), Bo(j, -1)), Bo(k, -1)), "0");
                }
        for (const auto& j : fam.bi)
            for (const auto& k : fam.bi)
                s.add("number_like_b", C(A(Bo(j, 1), Bo(j, -1)), Bo(k, -1)), scaled(-2, Bo(k, -1)));
    }
    if (!fam.f.empty() && !fam.b.empty()) {
        for (int z : S)
            for (int e : S)
                for (int x : S) {
                    for (const auto& i : fam.fi)
                        for (const auto& j : fam.fi)
                            for (const auto& k : fam.bi) {
                                s.add("rel_parafermion", C(C(Fo(i, z), Fo(j, e)), Bo(k, x)), "0");
                                s.add("rel_paraboson", C(C(Fo(i, z), Fo(j, e)), Bo(k, x)), "0");
                            }
                    for (const auto& i : fam.fi)
                        for (const auto& j : fam.bi)
                            for (const auto& k : fam.fi) {
                                s.add("rel_parafermion", C(C(Fo(i, z), Bo(j, e)), Fo(k, x)),
                                      scaled(-std::abs(x - z) * d(i, k), Bo(j, e)));
                                s.add("rel_paraboson", A(A(Fo(i, z), Bo(j, e)), Fo(k, x)),
                                      scaled(std::abs(x - z) * d(i, k), Bo(j, e)));
                            }
                    for (const auto& i : fam.bi)
                        for (const auto& j : fam.bi)
                            for (const auto& k : fam.fi) {
                                s.add("rel_parafermion", C(A(Bo(i, z), Bo(j, e)), Fo(k, x)), "0");
                                s.add("rel_paraboson", C(A(Bo(i, z), Bo(j, e)), Fo(k, x)), "0");
                            }
                    for (const auto& i : fam.fi)
                        for (const auto& j : fam.bi)
                            for (const auto& k : fam.bi) {
                                s.add("rel_parafermion", A(C(Fo(i, z), Bo(j, e)), Bo(k, x)),
                                      scaled((x - e) * d(j, k), Fo(i, z)));
                                s.add("rel_paraboson", C(A(Fo(i, z), Bo(j, e)), Bo(k, x)),
                                      scaled((x - e) * d(j, k), Fo(i, z)));
                            }
                }
    }
    return s;
}

}  // namespace

std::vector<std::string> parastat_families(int dim) {
    std::vector<std::string> out;
    for (const auto& f : families(dim)) out.push_back(f.name);
    return out;
}

VerificationReport parastatistics_audit(const OperatorRegistry& reg, int dim, const std::string& family,
                                        double tol) {
    for (const auto& fam : families(dim)) {
        if (fam.name != family) continue;
        VerificationReport rep;
        rep.name = "parastatistics " + family;
        const Schemas s = build(fam);
        EvalContext ctx{&reg, nullptr};
        VerifyOptions opt;
        opt.tol = tol;
        opt.unprojected = false;
        for (const auto& name : s.order) {
            CheckResult worst;
            worst.id = family + " " + name;
            worst.group = "parastatistics";
            worst.tol = tol;
            std::string worst_rel;
            for (const auto& r : s.by_name.at(name)) {
                CheckResult c = check_relation(r, ctx, opt);
                if (c.residual >= worst.residual) {
                    worst.residual = c.residual;
                    worst.depth = c.depth;
                    worst_rel = r.id;
                }
            }
            auto it = fam.expect.find(name);
            worst.expected = it == fam.expect.end() ? std::nullopt : it->second;
            worst.note = std::to_string(s.by_name.at(name).size()) + " relations; worst " + worst_rel;
            rep.add(worst);
        }
        rep.meta["family"] = family;
        return rep;
    }
    throw ConfigError("unknown parastatistics family " + family + " for dim " + std::to_string(dim));
}

VerificationReport parastatistics_audit_all(const OperatorRegistry& reg, int dim, double tol) {
    VerificationReport rep;
    rep.name = "parastatistics";
    for (const auto& f : parastat_families(dim)) rep.merge(parastatistics_audit(reg, dim, f, tol));
    return rep;
}

}  // namespace dosc
