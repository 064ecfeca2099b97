// entanglement.hpp
// Multi-qubit concurrence: the pure-state value, the computable lower bound
// tau_N built from SO(2^(N-1)) x SO(2) generators over all one-vs-rest cuts,
// the closed-form tau curves of the GHZ channel states, PPT tests and the
// vanishing times of the closed-form curves.

#pragma once

#include <array>
#include <optional>
#include <vector>

#include "qcorr/channels.hpp"
#include "qcorr/qmat.hpp"

namespace qcorr {

// Real antisymmetric d x d generator with +1 at (p, q) and -1 at (q, p).
struct SOGenerator {
    int dimension = 0;
    int p = 0;
    int q = 0;

    Eigen::MatrixXd matrix() const;
};

// All d(d-1)/2 generators of SO(d), lexicographic in (p, q).
std::vector<SOGenerator> so_generators(int dimension);

// C(|psi>) = sqrt(1 - (1/N) sum_i Tr rho_i^2).
double pure_concurrence(const ComplexVector& psi);

struct CutTerm {
    SOGenerator generator;
    std::array<double, 4> lambdas{};  // descending, >= 0
    double c = 0.0;                   // max(0, l1 - l2 - l3 - l4)
};

struct CutTermSet {
    int cut_index = 0;
    std::vector<CutTerm> terms;

    double sum_of_squares() const;
};

// The K = 2^(N-2)(2^(N-1)-1) concurrence terms for the cut separating qubit
// `cut` from the rest. Requires N >= 3. Throws NumericalError if rho*rho~
// has an eigenvalue below -1e-8.
CutTermSet cut_terms(const DensityMatrix& rho, int cut);

struct TauResult {
    double value = 0.0;             // convention_scale * raw
    double raw = 0.0;               // sqrt((1/N) sum_n sum_k (C^n_k)^2)
    std::vector<double> per_cut;    // sqrt(sum_k (C^n_k)^2) for each n
    double convention_scale = 1.0;
};

// Multiplier that maps the raw bound onto the normalization of the
// published tau curves. Determined once by requiring tau = sqrt(2) on the
// four-qubit GHZ state (the t = 0 point of every channel).
double calibrated_convention_scale();

TauResult tau_lower_bound(const DensityMatrix& rho);
TauResult tau_lower_bound(const DensityMatrix& rho, double convention_scale);

// Closed-form tau(kappa t) of the four-qubit GHZ state per channel. Pauli-Y
// equals Pauli-X.
double analytic_tau(ChannelKind kind, double scaled_time);

// Minimum eigenvalue of the partial transpose over `subset`. Negative
// values certify entanglement across that cut.
double ppt_min_eigenvalue(const DensityMatrix& rho, const QubitSubset& subset);

// kappa*t at which analytic_tau first reaches zero, by bisection to 1e-10.
// Empty for Pauli-Z, whose curve is positive for all finite times.
std::optional<double> tau_vanishing_time(ChannelKind kind);

}  // namespace qcorr
