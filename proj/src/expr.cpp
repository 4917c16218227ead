#include "dosc/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

namespace dosc {

Expr Expr::number(double v) {
    Expr e;
    e.kind = Kind::Num;
    e.num = v;
    return e;
}

Expr Expr::symbol(std::string s) {
    Expr e;
    e.kind = Kind::Sym;
    e.sym = std::move(s);
    return e;
}

Expr Expr::node(Kind k, std::vector<Expr> a) {
    Expr e;
    e.kind = k;
    e.args = std::move(a);
    return e;
}

// ---- parsing ----

namespace {

struct Lexer {
    std::string_view s;
    size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        skip();
        return pos >= s.size();
    }
    char peek() {
        skip();
        return pos < s.size() ? s[pos] : '\0';
    }
    std::string atom() {
        skip();
        size_t b = pos;
        while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) && s[pos] != '(' && s[pos] != ')') ++pos;
        return std::string(s.substr(b, pos - b));
    }
};

bool looks_numeric(const std::string& t) {
    if (t.empty()) return false;
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    return i < t.size() && (std::isdigit(static_cast<unsigned char>(t[i])) || t[i] == '.');
}

Expr parse_one(Lexer& lx) {
    const char c = lx.peek();
    if (c == '\0') throw ConfigError("unexpected end of s-expression");
    if (c == ')') throw ConfigError("unexpected ')' in s-expression");
    if (c != '(') {
        std::string t = lx.atom();
        if (looks_numeric(t)) {
            double v = 0;
            auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
            if (ec != std::errc() || p != t.data() + t.size()) throw ConfigError("bad number: " + t);
            return Expr::number(v);
        }
        return Expr::symbol(t);
    }
    ++lx.pos;  // '('
    const std::string head = lx.atom();
    std::vector<Expr> args;
    while (lx.peek() != ')') {
        if (lx.done()) throw ConfigError("missing ')' in s-expression");
        args.push_back(parse_one(lx));
    }
    ++lx.pos;  // ')'
    using K = Expr::Kind;
    auto need = [&](size_t lo, size_t hi) {
        if (args.size() < lo || args.size() > hi) throw ConfigError("wrong arity for " + head);
    };
    if (head == "+") { need(1, 1000); return Expr::node(K::Add, std::move(args)); }
    if (head == "-") {
        need(1, 2);
        if (args.size() == 1) return Expr::node(K::Neg, std::move(args));
        return Expr::node(K::Add, {args[0], Expr::node(K::Neg, {args[1]})});
    }
    if (head == "*") { need(1, 1000); return Expr::node(K::Mul, std::move(args)); }
    if (head == "/") { need(2, 2); return Expr::node(K::Div, std::move(args)); }
    if (head == "sqrt") { need(1, 1); return Expr::node(K::Sqrt, std::move(args)); }
    if (head == "comm") { need(2, 2); return Expr::node(K::Comm, std::move(args)); }
    if (head == "acomm") { need(2, 2); return Expr::node(K::Acomm, std::move(args)); }
    if (head == "br") { need(2, 2); return Expr::node(K::Br, std::move(args)); }
    throw ConfigError("unknown s-expression head: " + head);
}

std::string fmt_num(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

}  // namespace

Expr parse_sexpr(std::string_view text) {
    Lexer lx{text};
    Expr e = parse_one(lx);
    if (!lx.done()) throw ConfigError("trailing text after s-expression");
    return e;
}

std::string to_string(const Expr& e) {
    using K = Expr::Kind;
    auto list = [&](const char* head) {
        std::string s = "(";
        s += head;
        for (const auto& a : e.args) s += " " + to_string(a);
        return s + ")";
    };
    switch (e.kind) {
        case K::Num: return fmt_num(e.num);
        case K::Sym: return e.sym;
        case K::Add: return list("+");
        case K::Neg: return list("-");
        case K::Mul: return list("*");
        case K::Div: return list("/");
        case K::Sqrt: return list("sqrt");
        case K::Comm: return list("comm");
        case K::Acomm: return list("acomm");
        case K::Br: return list("br");
    }
    return {};
}

// ---- building ----

Expr sym(const std::string& s) { return Expr::symbol(s); }
Expr num(double v) { return Expr::number(v); }
Expr operator+(Expr a, Expr b) {
    if (a.kind == Expr::Kind::Add) {
        a.args.push_back(std::move(b));
        return a;
    }
    return Expr::node(Expr::Kind::Add, {std::move(a), std::move(b)});
}
Expr operator-(Expr a) { return Expr::node(Expr::Kind::Neg, {std::move(a)}); }
Expr operator-(Expr a, Expr b) { return std::move(a) + (-std::move(b)); }
Expr operator*(Expr a, Expr b) {
    if (a.kind == Expr::Kind::Mul) {
        a.args.push_back(std::move(b));
        return a;
    }
    return Expr::node(Expr::Kind::Mul, {std::move(a), std::move(b)});
}
Expr operator*(double c, Expr a) { return Expr::node(Expr::Kind::Mul, {num(c), std::move(a)}); }
Expr comm(Expr a, Expr b) { return Expr::node(Expr::Kind::Comm, {std::move(a), std::move(b)}); }
Expr acomm(Expr a, Expr b) { return Expr::node(Expr::Kind::Acomm, {std::move(a), std::move(b)}); }
Expr br(Expr a, Expr b) { return Expr::node(Expr::Kind::Br, {std::move(a), std::move(b)}); }
Expr sqrt_e(Expr a) { return Expr::node(Expr::Kind::Sqrt, {std::move(a)}); }
Expr div_e(Expr a, Expr b) { return Expr::node(Expr::Kind::Div, {std::move(a), std::move(b)}); }
Expr sum_of(std::vector<Expr> terms) {
    if (terms.empty()) return num(0);
    if (terms.size() == 1) return terms.front();
    return Expr::node(Expr::Kind::Add, std::move(terms));
}

// ---- evaluation ----

std::optional<Degree> EvalContext::degree_of_label(const std::string& s) const {
    if (degrees) {
        auto it = degrees->find(s);
        if (it != degrees->end()) return it->second;
    }
    if (reg && reg->contains(s)) return reg->at(s).degree;
    return std::nullopt;
}

namespace {

bool scalar_symbol(const std::string& s) { return s == "i" || s == "m" || s == "omega"; }

// Empty Degree acts as the zero of any length.
std::optional<Degree> add_deg(const std::optional<Degree>& a, const std::optional<Degree>& b) {
    if (!a || !b) return std::nullopt;
    if (a->size() == 0) return b;
    if (b->size() == 0) return a;
    return *a + *b;
}

bool is_zero_degree(const Degree& d) {
    return std::all_of(d.bits.begin(), d.bits.end(), [](auto v) { return v == 0; });
}

using Terms = std::vector<std::pair<cplx, const Expr*>>;

// Split e into homogeneous-looking terms c * X.
void split_terms(const Expr& e, cplx c, const EvalContext& ctx, Terms& out) {
    using K = Expr::Kind;
    if (is_scalar(e)) {
        out.emplace_back(c * eval_scalar(e, ctx), nullptr);
        return;
    }
    switch (e.kind) {
        case K::Add:
            for (const auto& a : e.args) split_terms(a, c, ctx, out);
            return;
        case K::Neg:
            split_terms(e.args[0], -c, ctx, out);
            return;
        case K::Mul: {
            cplx f = c;
            const Expr* op = nullptr;
            int nops = 0;
            for (const auto& a : e.args) {
                if (is_scalar(a)) f *= eval_scalar(a, ctx);
                else { op = &a; ++nops; }
            }
            if (nops == 1) {
                split_terms(*op, f, ctx, out);
                return;
            }
            break;
        }
        case K::Div:
            split_terms(e.args[0], c / eval_scalar(e.args[1], ctx), ctx, out);
            return;
        default: break;
    }
    out.emplace_back(c, &e);
}

}  // namespace

bool is_scalar(const Expr& e) {
    using K = Expr::Kind;
    switch (e.kind) {
        case K::Num: return true;
        case K::Sym: return scalar_symbol(e.sym);
        case K::Comm:
        case K::Acomm:
        case K::Br: return false;
        default:
            return std::all_of(e.args.begin(), e.args.end(), [](const Expr& a) { return is_scalar(a); });
    }
}

cplx eval_scalar(const Expr& e, const EvalContext& ctx) {
    using K = Expr::Kind;
    switch (e.kind) {
        case K::Num: return e.num;
        case K::Sym:
            if (e.sym == "i") return I;
            if (!ctx.reg) throw ConfigError("model parameters unavailable for " + e.sym);
            if (e.sym == "m") return ctx.reg->mass();
            if (e.sym == "omega") return ctx.reg->omega();
            throw ConfigError("not a scalar: " + e.sym);
        case K::Add: {
            cplx s = 0;
            for (const auto& a : e.args) s += eval_scalar(a, ctx);
            return s;
        }
        case K::Neg: return -eval_scalar(e.args[0], ctx);
        case K::Mul: {
            cplx s = 1;
            for (const auto& a : e.args) s *= eval_scalar(a, ctx);
            return s;
        }
        case K::Div: return eval_scalar(e.args[0], ctx) / eval_scalar(e.args[1], ctx);
        case K::Sqrt: return std::sqrt(eval_scalar(e.args[0], ctx));
        default: throw ConfigError("not a scalar expression: " + to_string(e));
    }
}

std::optional<Degree> degree_of(const Expr& e, const EvalContext& ctx) {
    using K = Expr::Kind;
    if (is_scalar(e)) return Degree{};
    switch (e.kind) {
        case K::Sym: return ctx.degree_of_label(e.sym);
        case K::Neg: return degree_of(e.args[0], ctx);
        case K::Div: return degree_of(e.args[0], ctx);
        case K::Mul: {
            std::optional<Degree> d = Degree{};
            for (const auto& a : e.args) d = add_deg(d, degree_of(a, ctx));
            return d;
        }
        case K::Comm:
        case K::Acomm:
        case K::Br: return add_deg(degree_of(e.args[0], ctx), degree_of(e.args[1], ctx));
        case K::Add: {
            std::optional<Degree> d;
            bool has_scalar = false;
            for (const auto& a : e.args) {
                auto da = degree_of(a, ctx);
                if (!da) return std::nullopt;
                if (da->size() == 0) { has_scalar = true; continue; }
                if (d && *d != *da) return std::nullopt;
                d = da;
            }
            if (!d) return Degree{};
            if (has_scalar && !is_zero_degree(*d)) return std::nullopt;
            return d;
        }
        default: return std::nullopt;
    }
}

int reach_of(const Expr& e, const EvalContext& ctx) {
    using K = Expr::Kind;
    if (is_scalar(e)) return 0;
    switch (e.kind) {
        case K::Sym:
            if (!ctx.reg) throw ConfigError("no registry");
            return ctx.reg->at(e.sym).reach;
        case K::Add: {
            int r = 0;
            for (const auto& a : e.args) r = std::max(r, reach_of(a, ctx));
            return r;
        }
        case K::Neg:
        case K::Div: return reach_of(e.args[0], ctx);
        case K::Mul: {
            int r = 0;
            for (const auto& a : e.args) r += reach_of(a, ctx);
            return r;
        }
        case K::Comm:
        case K::Acomm:
        case K::Br: return reach_of(e.args[0], ctx) + reach_of(e.args[1], ctx);
        default: return 0;
    }
}

void collect_labels(const Expr& e, std::vector<std::string>& out) {
    if (e.kind == Expr::Kind::Sym) {
        if (!scalar_symbol(e.sym) && std::find(out.begin(), out.end(), e.sym) == out.end()) out.push_back(e.sym);
        return;
    }
    for (const auto& a : e.args) collect_labels(a, out);
}

SpMat apply(const Expr& e, const EvalContext& ctx, const SpMat& v) {
    using K = Expr::Kind;
    if (is_scalar(e)) return eval_scalar(e, ctx) * v;
    switch (e.kind) {
        case K::Sym: {
            SpMat r = ctx.reg->at(e.sym).matrix * v;
            return r;
        }
        case K::Add: {
            SpMat r = apply(e.args[0], ctx, v);
            for (size_t i = 1; i < e.args.size(); ++i) r += apply(e.args[i], ctx, v);
            return r;
        }
        case K::Neg: return -apply(e.args[0], ctx, v);
        case K::Div: return apply(e.args[0], ctx, v) / eval_scalar(e.args[1], ctx);
        case K::Mul: {
            cplx c = 1;
            SpMat r = v;
            for (auto it = e.args.rbegin(); it != e.args.rend(); ++it) {
                if (is_scalar(*it)) c *= eval_scalar(*it, ctx);
                else r = apply(*it, ctx, r);
            }
            if (c != cplx(1)) r *= c;
            return r;
        }
        case K::Comm:
        case K::Acomm: {
            const double s = e.kind == K::Comm ? -1.0 : 1.0;
            SpMat ab = apply(e.args[0], ctx, apply(e.args[1], ctx, v));
            SpMat ba = apply(e.args[1], ctx, apply(e.args[0], ctx, v));
            ab += s * ba;
            return ab;
        }
        case K::Br: {
            // Split both sides into homogeneous terms and bracket termwise.
            Terms ta, tb;
            split_terms(e.args[0], 1.0, ctx, ta);
            split_terms(e.args[1], 1.0, ctx, tb);
            SpMat r(v.rows(), v.cols());
            for (const auto& [ca, xa] : ta) {
                if (!xa) continue;  // scalars commute with everything
                auto da = degree_of(*xa, ctx);
                if (!da) throw ConfigError("bracket of inhomogeneous term: " + to_string(*xa));
                for (const auto& [cb, xb] : tb) {
                    if (!xb) continue;
                    auto db = degree_of(*xb, ctx);
                    if (!db) throw ConfigError("bracket of inhomogeneous term: " + to_string(*xb));
                    const int eps = (da->size() == 0 || db->size() == 0) ? 1 : commutation_factor(*da, *db);
                    SpMat ab = apply(*xa, ctx, apply(*xb, ctx, v));
                    SpMat ba = apply(*xb, ctx, apply(*xa, ctx, v));
                    ab -= static_cast<double>(eps) * ba;
                    r += (ca * cb) * ab;
                }
            }
            return r;
        }
        default: throw ConfigError("cannot apply expression: " + to_string(e));
    }
}

}  // namespace dosc
