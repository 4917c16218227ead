#include "dosc/graded.hpp"

#include <algorithm>

namespace dosc {

Degree Degree::parse(const std::string& s) {
    if (s.empty()) throw ConfigError("empty degree string");
    std::vector<std::uint8_t> b;
    for (char c : s) {
        if (c != '0' && c != '1') throw ConfigError("degree must be a string of 0/1: " + s);
        b.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return Degree(std::move(b));
}

std::string Degree::str() const {
    std::string s;
    for (auto v : bits) s.push_back(static_cast<char>('0' + v));
    return s;
}

Degree Degree::operator+(const Degree& o) const {
    if (o.size() != size()) throw ConfigError("degree length mismatch");
    Degree r = *this;
    for (size_t i = 0; i < size(); ++i) r.bits[i] ^= o.bits[i];
    return r;
}

int commutation_factor(const Degree& a, const Degree& b) {
    if (a.size() != b.size()) throw ConfigError("degree length mismatch: " + a.str() + " vs " + b.str());
    int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a.bits[i] * b.bits[i];
    return (s % 2) ? -1 : 1;
}

SpMat colour_bracket(const GradedOperator& x, const GradedOperator& y) {
    if (!x.degree || !y.degree)
        throw ConfigError("colour bracket needs homogeneous operators (" + x.label + ", " + y.label + ")");
    const double e = commutation_factor(*x.degree, *y.degree);
    SpMat r = x.matrix * y.matrix;
    SpMat r2 = y.matrix * x.matrix;
    r -= e * r2;
    return r;
}

OperatorRegistry::OperatorRegistry(int side, std::vector<int> occupation, int n_max, double mass, double omega)
    : side_(side), n_max_(n_max), mass_(mass), omega_(omega), occupation_(std::move(occupation)) {}

void OperatorRegistry::add(const std::string& label, SpMat m, std::optional<Degree> degree) {
    if (m.rows() != side_ || m.cols() != side_) throw ConfigError("operator " + label + " has wrong side");
    if (ops_.count(label)) throw ConfigError("duplicate label " + label);
    prune(m);
    GradedOperator op;
    op.reach = reach_of(m);
    op.matrix = std::move(m);
    op.degree = std::move(degree);
    op.label = label;
    ops_.emplace(label, std::move(op));
    order_.push_back(label);
}

const GradedOperator& OperatorRegistry::at(const std::string& label) const {
    auto it = ops_.find(label);
    if (it == ops_.end()) throw ConfigError("unknown operator label: " + label);
    return it->second;
}

int OperatorRegistry::reach_of(const SpMat& m) const {
    int r = 0;
    for (int k = 0; k < m.outerSize(); ++k)
        for (SpMat::InnerIterator it(m, k); it; ++it)
            r = std::max(r, occupation_[static_cast<size_t>(it.row())] - occupation_[static_cast<size_t>(k)]);
    return r;
}

}  // namespace dosc
