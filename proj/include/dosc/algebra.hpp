#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dosc/expr.hpp"
#include "dosc/report.hpp"

namespace dosc {

struct Relation {
    std::string id;
    Expr lhs;
    Expr rhs;
    int min_depth = 0;
    bool expanded = false;          // instance of an "etc." entry
    std::optional<Expr> printed;    // rhs as printed, when it differs from the verified rhs
    bool unprinted = false;         // holds but is missing from the printed table
    std::string group;              // report group; empty means "relation" or "expanded"
    std::string note;
};

struct Generator {
    std::string label;
    Degree degree;
};

enum class Closure {
    span,           // brackets of generators lie in the span of their degree sector
    remaining_zero  // pairs absent from the relation list bracket to zero
};

struct AlgebraSpec {
    std::string name;
    int dim = 1;         // spatial dimension of the realisation
    size_t k = 1;        // grading length
    std::vector<Generator> generators;
    std::vector<Relation> relations;
    Closure closure = Closure::span;

    std::map<std::string, Degree> degree_map() const;
    const Generator* find(const std::string& label) const;
};

std::vector<AlgebraSpec> builtin_specs();
const AlgebraSpec& builtin_spec(const std::string& name);  // throws ConfigError

json spec_to_json(const AlgebraSpec& s);
AlgebraSpec spec_from_json(const json& j);

struct VerifyOptions {
    double tol = 1e-10;
    int min_depth = 0;
    bool unprojected = true;
    bool use_printed = false;  // check printed forms instead of the verified ones
    bool closure = true;
    bool bracket_types = true;
};

// Residual ||(lhs - rhs) P_d||_F with d = max(reach, relation and option minimum).
CheckResult check_relation(const Relation& r, const EvalContext& ctx, const VerifyOptions& opt);

VerificationReport verify_relations(const std::string& name, const std::vector<Relation>& rels,
                                    const OperatorRegistry& reg, const VerifyOptions& opt,
                                    const std::map<std::string, Degree>* degrees = nullptr);

VerificationReport verify_algebra(const AlgebraSpec& spec, const OperatorRegistry& reg,
                                  const VerifyOptions& opt = {});

VerificationReport colour_jacobi_sweep(const AlgebraSpec& spec, const OperatorRegistry& reg,
                                       double tol = 1e-10, int min_depth = 3);

// x1 = B-s, x_{k+1} = [{B+s,S-s}, x_k] or [{B-s,S+s}, x_k] alternately; rank of the vectorised x_k.
struct RemarkRank {
    int generated = 0;
    int rank = 0;
    std::vector<double> singular_values;
};
RemarkRank remark_rank(const OperatorRegistry& reg3d, int count = 5);

}  // namespace dosc
