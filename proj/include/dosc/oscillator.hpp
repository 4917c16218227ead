#pragma once

#include <string>
#include <vector>

#include "dosc/algebra.hpp"
#include "dosc/clifford.hpp"
#include "dosc/fock.hpp"
#include "dosc/graded.hpp"

namespace dosc {

struct OscillatorModel {
    int dim = 1;
    double mass = 1.0;
    double omega = 1.0;
    FockCutoff cutoff{};
    CliffordRep rep;

    static OscillatorModel make(int dim, double mass = 1.0, double omega = 1.0, int n_max = -1,
                                Flavor flavor = Flavor::dirac4);
    static int default_n_max(int dim);  // 40, 16, 8

    int spinor_dim() const { return rep.rep_dim; }
    int boson_dim() const;  // (n_max+1)^dim
    int side() const { return spinor_dim() * boson_dim(); }
};

GradedOperator build_hamiltonian(const OscillatorModel& model);

OperatorRegistry build_ladders_1d(const OscillatorModel& model);
OperatorRegistry build_ladders_2d(const OscillatorModel& model);
OperatorRegistry build_ladders_3d(const OscillatorModel& model);
OperatorRegistry build_registry(const OscillatorModel& model);  // dispatch on dim

// Identities of the realisation outside the algebra tables: interleave relations,
// H^2 decompositions, commutants, recompositions, braid brackets, witnesses.
// Groups: "interleave", "ladder", "h-square", "commutant", "presentation",
// "recomposition", "braid", "witness", "adjoint".
std::vector<Relation> model_identities(int dim);

// {s-1,s+2}, [a-1,a+2], -[c-1,c+2] against the printed value -2 beta S0,
// and the same three against the corrected value 2i beta S0.
std::vector<Relation> witnesses_2d(bool printed);

// (X-)^dagger = X+ for every ladder pair of the registry.
VerificationReport adjoint_report(const OperatorRegistry& reg, int dim);

// Every pso-(3|4) generator kills random states with beta S0 = +1/2, and pso+(3|4) those with -1/2.
VerificationReport chiral_projector_report(const OperatorRegistry& reg2d, int states = 50,
                                           unsigned seed = 20240601, double tol = 1e-10);

// Parastatistics
std::vector<std::string> parastat_families(int dim);
VerificationReport parastatistics_audit(const OperatorRegistry& reg, int dim, const std::string& family,
                                        double tol = 1e-10);
VerificationReport parastatistics_audit_all(const OperatorRegistry& reg, int dim, double tol = 1e-10);

}  // namespace dosc
