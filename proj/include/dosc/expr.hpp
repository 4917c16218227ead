#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dosc/graded.hpp"

namespace dosc {

// Operator expressions written as s-expressions, e.g.
//   (acomm b- b+)            (* 2 (/ 1 omega) Hsch)
//   (br (+ H1 H2) Bs-)       (comm (comm s+1 s-1) s-2)
// Scalars: numbers, i, m, omega, and + - * / sqrt over scalars.
// Any other symbol is an operator label. (* ...) multiplies left to right,
// scalars commute out. comm/acomm are explicit; br picks the bracket from degrees.
struct Expr {
    enum class Kind { Num, Sym, Add, Neg, Mul, Div, Sqrt, Comm, Acomm, Br };
    Kind kind = Kind::Num;
    double num = 0.0;
    std::string sym;
    std::vector<Expr> args;

    static Expr number(double v);
    static Expr symbol(std::string s);
    static Expr node(Kind k, std::vector<Expr> a);
};

Expr parse_sexpr(std::string_view text);
std::string to_string(const Expr& e);

// Building helpers.
Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator-(Expr a);
Expr operator*(Expr a, Expr b);
Expr operator*(double c, Expr a);
Expr comm(Expr a, Expr b);
Expr acomm(Expr a, Expr b);
Expr br(Expr a, Expr b);
Expr sym(const std::string& s);
Expr num(double v);
Expr sqrt_e(Expr a);
Expr div_e(Expr a, Expr b);
Expr sum_of(std::vector<Expr> terms);  // zero terms gives 0

// Evaluation context: labels resolve in the registry, degrees may be overridden by an AlgebraSpec.
struct EvalContext {
    const OperatorRegistry* reg = nullptr;
    const std::map<std::string, Degree>* degrees = nullptr;

    std::optional<Degree> degree_of_label(const std::string& s) const;
};

bool is_scalar(const Expr& e);
cplx eval_scalar(const Expr& e, const EvalContext& ctx);
std::optional<Degree> degree_of(const Expr& e, const EvalContext& ctx);
int reach_of(const Expr& e, const EvalContext& ctx);
// Every operator label referenced by e.
void collect_labels(const Expr& e, std::vector<std::string>& out);

// e applied to the column block v (side x r).
SpMat apply(const Expr& e, const EvalContext& ctx, const SpMat& v);

}  // namespace dosc
