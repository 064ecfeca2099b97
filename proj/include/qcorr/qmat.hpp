// qmat.hpp
// Dense complex-matrix substrate over qubit registers: tensor algebra,
// partial trace/transpose, qubit permutations, Hermitian spectra and
// entropy functionals.
//
// Qubit ordering: qubit 0 is the leftmost (slowest-varying) tensor factor,
// so basis index b = sum_j bit_j * 2^(N-1-j).

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace qcorr {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr int kDefaultMaxQubits = 10;

// Eigenvalues with |lambda| below this are exactly zero for entropies and
// support checks.
inline constexpr double kZeroEigenvalue = 1e-12;

// Raised when an input violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Raised when a numerical routine breaks down (divergence, step underflow,
// eigenvalues far outside their analytic range).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Ordered set of qubit positions in [0, N).
class QubitSubset {
public:
    QubitSubset() = default;
    QubitSubset(std::initializer_list<int> indices);
    explicit QubitSubset(std::vector<int> indices);

    // All positions in [0, n).
    static QubitSubset all(int n);

    const std::vector<int>& indices() const { return indices_; }
    std::size_t size() const { return indices_.size(); }
    bool empty() const { return indices_.empty(); }
    bool contains(int q) const;

    // Throws InvalidArgument if any index is >= num_qubits.
    void check_within(int num_qubits) const;

    // Positions in [0, num_qubits) not in this subset.
    QubitSubset complement(int num_qubits) const;

private:
    std::vector<int> indices_;
};

// Hermitian, unit-trace, positive-semidefinite matrix on N qubits.
class DensityMatrix {
public:
    // Validates shape (2^N x 2^N), Hermiticity, unit trace and positivity.
    static DensityMatrix from_matrix(ComplexMatrix m, double tol = 1e-10);

    // Skips the positivity eigensolve; shape, Hermiticity and trace are
    // still checked. For results of maps known to preserve positivity.
    static DensityMatrix trusted(ComplexMatrix m, double tol = 1e-10);

    // |psi><psi| for a normalized state vector.
    static DensityMatrix pure(const ComplexVector& psi);

    // Identity / 2^N.
    static DensityMatrix maximally_mixed(int num_qubits);

    // Computational basis projector |b><b|.
    static DensityMatrix basis_state(int num_qubits, std::size_t index);

    int num_qubits() const { return num_qubits_; }
    Eigen::Index dim() const { return m_.rows(); }
    const ComplexMatrix& matrix() const { return m_; }
    cplx operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

    double purity() const;

private:
    DensityMatrix(int n, ComplexMatrix m) : num_qubits_(n), m_(std::move(m)) {}

    int num_qubits_ = 0;
    ComplexMatrix m_;
};

// Deviation measures used by the invariant checks.
double hermiticity_error(const ComplexMatrix& m);
double trace_error(const ComplexMatrix& m);

// Number of qubits for a square matrix of dimension 2^N; throws otherwise.
int qubit_count_for_dim(Eigen::Index dim);

// Pauli matrices and the 2x2 identity.
ComplexMatrix identity2();
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

// Kronecker product with a's index slowest-varying. Throws InvalidArgument
// when the result would exceed 2^max_qubits rows or columns.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b,
                     int max_qubits = kDefaultMaxQubits);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b,
                     int max_qubits = kDefaultMaxQubits);

// Embeds a single-qubit operator at position `qubit` of an n-qubit register.
ComplexMatrix embed(const ComplexMatrix& op, int qubit, int num_qubits);

// op_q * m and m * op_q for a 2x2 operator acting on one qubit, without
// forming the full 2^N operator.
ComplexMatrix apply_left(const ComplexMatrix& op, int qubit, const ComplexMatrix& m);
ComplexMatrix apply_right(const ComplexMatrix& m, const ComplexMatrix& op, int qubit);

// Reduced state on `keep` (order of `keep` is preserved in the output).
DensityMatrix partial_trace(const DensityMatrix& rho, const QubitSubset& keep);

// Output qubit j is input qubit perm[j].
DensityMatrix permute_qubits(const DensityMatrix& rho, std::span<const int> perm);

// Transposes the tensor factors listed in `subset`.
ComplexMatrix partial_transpose(const DensityMatrix& rho, const QubitSubset& subset);

// Real spectrum of a Hermitian matrix, descending.
RealVector hermitian_eigenvalues(const ComplexMatrix& m, double herm_tol = 1e-10);

// Entropy functionals, base 2.
double shannon_entropy(std::span<const double> probabilities);
double entropy_of_spectrum(const RealVector& eigenvalues);
double von_neumann_entropy(const DensityMatrix& rho);

// S(rho || sigma). Throws NumericalError when supp(rho) is not contained
// in supp(sigma) (the divergence is +infinity).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

// (1/2) ||a - b||_1.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qcorr
