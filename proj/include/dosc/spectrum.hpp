#pragma once

#include <string>
#include <vector>

#include "dosc/graded.hpp"
#include "dosc/oscillator.hpp"
#include "dosc/report.hpp"

namespace dosc {

std::vector<double> analytic_spectrum_1d(double m, double omega, int n_levels);

struct Level3D {
    double energy = 0.0;
    int n = 0;
    int j2 = 1;          // 2j
    bool odd = false;    // n - j + 1/2 odd
    int multiplicity = 2;  // 2j+1
};
// Closed form energies; pairs with a single l-branch contribute +E only.
std::vector<Level3D> analytic_spectrum_3d(double m, double omega, int n_max_quantum);
// Closed form without the branch restriction.
double theorem_energy(int n, int j2, double m, double omega);

// Eigen-decomposition of a Hermitian sparse matrix by connected blocks.
struct BlockEigen {
    int side = 0;
    std::vector<double> values;                 // ascending
    std::vector<double> edge_weight;            // per value, when an edge mask was given
    std::vector<std::vector<int>> blocks;       // basis indices of each block
    std::vector<Mat> block_vectors;             // per block, only if requested
    std::vector<std::pair<int, int>> origin;    // (block, column) of each value

    Vec vector(size_t i) const;  // needs want_vectors
};
// Inside every degenerate cluster the eigenvectors are rotated to diagonalise the
// edge weight, so a cluster mixing trusted and edge states is split correctly.
BlockEigen block_eigensolve(SpMat h, bool want_vectors, double prune_rel = 1e-12,
                            const std::vector<double>* edge_mask = nullptr);

struct NumericSpectrum {
    std::vector<double> values;       // ascending
    std::vector<double> edge_weight;  // weight on occupation shells > n_max - 2
    double trace = 0.0;
    double hermiticity = 0.0;
    int blocks = 0;
    BlockEigen eig;
};
NumericSpectrum numeric_spectrum(const OscillatorModel& model, bool want_vectors = false);
NumericSpectrum numeric_spectrum(const SpMat& h, const std::vector<int>& occupation, int n_max,
                                 bool want_vectors = false);

struct AnalyticLevel {
    double energy = 0.0;
    int multiplicity = 0;
    std::string labels;
};

struct SpectrumMatch {
    double analytic = 0.0;
    double numeric = 0.0;
    double abs_err = 0.0;
    int multiplicity = 0;      // analytic
    int numeric_count = 0;     // trusted numeric eigenvalues at this level
    std::string labels;
};

struct SpectrumReport {
    std::vector<AnalyticLevel> analytic;
    std::vector<double> numeric;
    std::vector<double> edge_weight;
    std::vector<SpectrumMatch> matches;
    std::vector<double> unmatched;   // trusted numeric values without an analytic partner
    int trusted_count = 0;
    double max_error = 0.0;
    bool multiplicities_ok = true;
    bool abs_energy = false;  // matching on |E|
    bool pass = false;
};

SpectrumReport match_spectra(const std::vector<AnalyticLevel>& analytic, const NumericSpectrum& numeric,
                             double tol, double edge_tol, bool abs_energy = false);

// Analytic targets for the trusted window N <= n_max - 2 of a model.
std::vector<AnalyticLevel> analytic_levels(const OscillatorModel& model, const OperatorRegistry& reg);

SpectrumReport spectrum_report(const OscillatorModel& model, double tol = 1e-8, double edge_tol = 1e-8);

json to_json(const SpectrumReport& r);
std::string to_csv(const SpectrumReport& r);

// Ground state of the 1D model: the kernel of b- and s- with beta = +1.
Vec vacuum_1d(const OperatorRegistry& reg1d);

// (E +/- sqrt(E^2 + 2 m w)) b+ psi + sqrt(2 m w) s+ psi.
Vec raise_eigenvector_1d(const OperatorRegistry& reg1d, const Vec& psi, double E, int sign);

// beta vac = vac, H0 vac = 0, H vac = m vac, then `raises` steps of the raising map with each sign.
VerificationReport vacuum_report_1d(const OperatorRegistry& reg1d, int raises = 5);

}  // namespace dosc
