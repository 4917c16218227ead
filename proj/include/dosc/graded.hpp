#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dosc/types.hpp"

namespace dosc {

struct Degree {
    std::vector<std::uint8_t> bits;

    Degree() = default;
    explicit Degree(std::vector<std::uint8_t> b) : bits(std::move(b)) {}
    static Degree parse(const std::string& s);  // "01", "110", ...
    static Degree zero(size_t k) { return Degree(std::vector<std::uint8_t>(k, 0)); }

    size_t size() const { return bits.size(); }
    std::string str() const;
    Degree operator+(const Degree& o) const;
    bool operator==(const Degree& o) const { return bits == o.bits; }
    bool operator!=(const Degree& o) const { return bits != o.bits; }
    bool operator<(const Degree& o) const { return bits < o.bits; }
};

// (-1)^{sum a_i b_i}
int commutation_factor(const Degree& a, const Degree& b);

struct GradedOperator {
    SpMat matrix;
    std::optional<Degree> degree;  // nullopt: inhomogeneous or unlabelled
    std::string label;
    int reach = 0;                 // largest increase of total boson occupation
};

// XY - eps(degX, degY) YX. Throws for inhomogeneous input.
SpMat colour_bracket(const GradedOperator& x, const GradedOperator& y);

// Operators of one model, keyed by label, in insertion order.
class OperatorRegistry {
public:
    OperatorRegistry() = default;
    OperatorRegistry(int side, std::vector<int> occupation, int n_max, double mass, double omega);

    void add(const std::string& label, SpMat m, std::optional<Degree> degree = std::nullopt);
    bool contains(const std::string& label) const { return ops_.count(label) != 0; }
    const GradedOperator& at(const std::string& label) const;
    const SpMat& operator[](const std::string& label) const { return at(label).matrix; }
    const std::vector<std::string>& labels() const { return order_; }

    int side() const { return side_; }
    int n_max() const { return n_max_; }
    double mass() const { return mass_; }
    double omega() const { return omega_; }
    const std::vector<int>& occupation() const { return occupation_; }

    // Largest occupation increase in the nonzero pattern of m.
    int reach_of(const SpMat& m) const;

private:
    int side_ = 0;
    int n_max_ = 0;
    double mass_ = 1.0;
    double omega_ = 1.0;
    std::vector<int> occupation_;
    std::map<std::string, GradedOperator> ops_;
    std::vector<std::string> order_;
};

}  // namespace dosc
