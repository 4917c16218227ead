#pragma once

#include <map>
#include <string>
#include <tuple>

#include "dosc/algebra.hpp"
#include "dosc/oscillator.hpp"

namespace testutil {

// Registries are expensive in 3D, so each test binary builds them once.
inline const dosc::OperatorRegistry& registry(int dim, int n_max = -1, double m = 1.0, double w = 1.0) {
    static std::map<std::tuple<int, int, double, double>, dosc::OperatorRegistry> cache;
    const auto key = std::tuple(dim, n_max, m, w);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, dosc::build_registry(dosc::OscillatorModel::make(dim, m, w, n_max))).first;
    return it->second;
}

inline dosc::CheckResult check(const dosc::OperatorRegistry& reg, const std::string& lhs, const std::string& rhs,
                               int min_depth = 0) {
    dosc::Relation r;
    r.id = lhs;
    r.lhs = dosc::parse_sexpr(lhs);
    r.rhs = dosc::parse_sexpr(rhs);
    r.min_depth = min_depth;
    dosc::EvalContext ctx{&reg, nullptr};
    dosc::VerifyOptions opt;
    return dosc::check_relation(r, ctx, opt);
}

inline double residual(const dosc::OperatorRegistry& reg, const std::string& lhs, const std::string& rhs,
                       int min_depth = 0) {
    return check(reg, lhs, rhs, min_depth).residual;
}

}  // namespace testutil
