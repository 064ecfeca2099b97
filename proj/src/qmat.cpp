#include "qcorr/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qcorr {

namespace {

// Bit of `qubit` inside a basis index of an n-qubit register.
inline std::size_t bit_shift(int qubit, int num_qubits) {
    return static_cast<std::size_t>(num_qubits - 1 - qubit);
}

inline std::size_t get_bit(std::size_t index, int qubit, int num_qubits) {
    return (index >> bit_shift(qubit, num_qubits)) & 1u;
}

void require_finite(const ComplexMatrix& m) {
    if (!m.allFinite()) throw InvalidArgument("matrix has non-finite entries");
}

}  // namespace

// ---------------------------------------------------------------- QubitSubset

QubitSubset::QubitSubset(std::initializer_list<int> indices)
    : QubitSubset(std::vector<int>(indices)) {}

QubitSubset::QubitSubset(std::vector<int> indices) : indices_(std::move(indices)) {
    for (std::size_t i = 0; i < indices_.size(); ++i) {
        if (indices_[i] < 0) throw InvalidArgument("qubit index must be nonnegative");
        if (i > 0 && indices_[i] <= indices_[i - 1])
            throw InvalidArgument("qubit indices must be strictly increasing");
    }
}

QubitSubset QubitSubset::all(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 0);
    return QubitSubset(std::move(v));
}

bool QubitSubset::contains(int q) const {
    return std::binary_search(indices_.begin(), indices_.end(), q);
}

void QubitSubset::check_within(int num_qubits) const {
    if (!indices_.empty() && indices_.back() >= num_qubits)
        throw InvalidArgument("qubit index " + std::to_string(indices_.back()) +
                              " out of range for " + std::to_string(num_qubits) + " qubits");
}

QubitSubset QubitSubset::complement(int num_qubits) const {
    std::vector<int> rest;
    for (int q = 0; q < num_qubits; ++q)
        if (!contains(q)) rest.push_back(q);
    return QubitSubset(std::move(rest));
}

// -------------------------------------------------------------- DensityMatrix

int qubit_count_for_dim(Eigen::Index dim) {
    if (dim < 2) throw InvalidArgument("dimension must be a power of two >= 2");
    int n = 0;
    Eigen::Index d = dim;
    while (d > 1) {
        if (d % 2 != 0) throw InvalidArgument("dimension must be a power of two");
        d /= 2;
        ++n;
    }
    return n;
}

double hermiticity_error(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) return INFINITY;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double trace_error(const ComplexMatrix& m) { return std::abs(m.trace() - cplx(1.0, 0.0)); }

DensityMatrix DensityMatrix::trusted(ComplexMatrix m, double tol) {
    if (m.rows() != m.cols()) throw InvalidArgument("density matrix must be square");
    require_finite(m);
    const int n = qubit_count_for_dim(m.rows());
    if (hermiticity_error(m) > tol) throw InvalidArgument("density matrix is not Hermitian");
    if (trace_error(m) > tol) throw InvalidArgument("density matrix trace differs from 1");
    return DensityMatrix(n, std::move(m));
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m, double tol) {
    DensityMatrix rho = trusted(std::move(m), tol);
    const RealVector ev = hermitian_eigenvalues(rho.m_, tol);
    if (ev(ev.size() - 1) < -tol)
        throw InvalidArgument("density matrix has a negative eigenvalue " +
                              std::to_string(ev(ev.size() - 1)));
    return rho;
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
    if (std::abs(psi.norm() - 1.0) > 1e-12) throw InvalidArgument("state vector is not normalized");
    const int n = qubit_count_for_dim(psi.size());
    return DensityMatrix(n, psi * psi.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
    if (num_qubits < 1) throw InvalidArgument("need at least one qubit");
    const Eigen::Index d = Eigen::Index{1} << num_qubits;
    return DensityMatrix(num_qubits, ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::basis_state(int num_qubits, std::size_t index) {
    if (num_qubits < 1) throw InvalidArgument("need at least one qubit");
    const Eigen::Index d = Eigen::Index{1} << num_qubits;
    if (static_cast<Eigen::Index>(index) >= d) throw InvalidArgument("basis index out of range");
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
    return DensityMatrix(num_qubits, std::move(m));
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

// -------------------------------------------------------------------- algebra

ComplexMatrix identity2() { return ComplexMatrix::Identity(2, 2); }

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b, int max_qubits) {
    const Eigen::Index limit = Eigen::Index{1} << max_qubits;
    if (a.rows() * b.rows() > limit || a.cols() * b.cols() > limit)
        throw InvalidArgument("tensor product exceeds the configured maximum of " +
                              std::to_string(max_qubits) + " qubits");
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b, int max_qubits) {
    return DensityMatrix::trusted(tensor(a.matrix(), b.matrix(), max_qubits));
}

ComplexMatrix embed(const ComplexMatrix& op, int qubit, int num_qubits) {
    if (qubit < 0 || qubit >= num_qubits) throw InvalidArgument("qubit index out of range");
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (int q = 0; q < num_qubits; ++q)
        out = tensor(out, q == qubit ? op : identity2(), num_qubits);
    return out;
}

ComplexMatrix apply_left(const ComplexMatrix& op, int qubit, const ComplexMatrix& m) {
    const int n = qubit_count_for_dim(m.rows());
    if (qubit < 0 || qubit >= n) throw InvalidArgument("qubit index out of range");
    const Eigen::Index mask = Eigen::Index{1} << bit_shift(qubit, n);
    ComplexMatrix out(m.rows(), m.cols());
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        if (r & mask) continue;
        const Eigen::Index r1 = r | mask;
        out.row(r) = op(0, 0) * m.row(r) + op(0, 1) * m.row(r1);
        out.row(r1) = op(1, 0) * m.row(r) + op(1, 1) * m.row(r1);
    }
    return out;
}

ComplexMatrix apply_right(const ComplexMatrix& m, const ComplexMatrix& op, int qubit) {
    const int n = qubit_count_for_dim(m.cols());
    if (qubit < 0 || qubit >= n) throw InvalidArgument("qubit index out of range");
    const Eigen::Index mask = Eigen::Index{1} << bit_shift(qubit, n);
    ComplexMatrix out(m.rows(), m.cols());
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        if (c & mask) continue;
        const Eigen::Index c1 = c | mask;
        out.col(c) = m.col(c) * op(0, 0) + m.col(c1) * op(1, 0);
        out.col(c1) = m.col(c) * op(0, 1) + m.col(c1) * op(1, 1);
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const QubitSubset& keep) {
    const int n = rho.num_qubits();
    if (keep.empty()) throw InvalidArgument("partial_trace: keep set is empty");
    keep.check_within(n);
    const int k = static_cast<int>(keep.size());
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t out_dim = std::size_t{1} << k;

    // Compress the kept bits of a full index into an index on k qubits.
    auto kept_index = [&](std::size_t idx) {
        std::size_t out = 0;
        for (int j = 0; j < k; ++j) out = (out << 1) | get_bit(idx, keep.indices()[static_cast<std::size_t>(j)], n);
        return out;
    };
    std::size_t traced_mask = 0;
    for (int q = 0; q < n; ++q)
        if (!keep.contains(q)) traced_mask |= std::size_t{1} << bit_shift(q, n);

    ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(out_dim),
                                            static_cast<Eigen::Index>(out_dim));
    for (std::size_t i = 0; i < dim; ++i) {
        const std::size_t ki = kept_index(i);
        for (std::size_t j = 0; j < dim; ++j) {
            if ((i & traced_mask) != (j & traced_mask)) continue;
            out(static_cast<Eigen::Index>(ki), static_cast<Eigen::Index>(kept_index(j))) +=
                rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return DensityMatrix::trusted(std::move(out));
}

DensityMatrix permute_qubits(const DensityMatrix& rho, std::span<const int> perm) {
    const int n = rho.num_qubits();
    if (static_cast<int>(perm.size()) != n) throw InvalidArgument("permutation has wrong length");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int p : perm) {
        if (p < 0 || p >= n || seen[static_cast<std::size_t>(p)])
            throw InvalidArgument("permutation is not a bijection");
        seen[static_cast<std::size_t>(p)] = true;
    }
    const std::size_t dim = std::size_t{1} << n;
    std::vector<Eigen::Index> source(dim);
    for (std::size_t out = 0; out < dim; ++out) {
        std::size_t in = 0;
        for (int j = 0; j < n; ++j)
            in |= get_bit(out, j, n) << bit_shift(perm[static_cast<std::size_t>(j)], n);
        source[out] = static_cast<Eigen::Index>(in);
    }
    ComplexMatrix m(rho.dim(), rho.dim());
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rho(source[i], source[j]);
    return DensityMatrix::trusted(std::move(m));
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, const QubitSubset& subset) {
    const int n = rho.num_qubits();
    subset.check_within(n);
    Eigen::Index mask = 0;
    for (int q : subset.indices()) mask |= Eigen::Index{1} << bit_shift(q, n);
    ComplexMatrix out(rho.dim(), rho.dim());
    for (Eigen::Index i = 0; i < rho.dim(); ++i) {
        for (Eigen::Index j = 0; j < rho.dim(); ++j) {
            // Swap the row and column bits of the transposed factors.
            const Eigen::Index i2 = (i & ~mask) | (j & mask);
            const Eigen::Index j2 = (j & ~mask) | (i & mask);
            out(i2, j2) = rho(i, j);
        }
    }
    return out;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m, double herm_tol) {
    if (m.rows() != m.cols()) throw InvalidArgument("hermitian_eigenvalues: matrix is not square");
    require_finite(m);
    if (hermiticity_error(m) > herm_tol) throw InvalidArgument("hermitian_eigenvalues: matrix is not Hermitian");
    const ComplexMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver did not converge");
    return solver.eigenvalues().reverse();
}

// -------------------------------------------------------------------- entropy

double shannon_entropy(std::span<const double> probabilities) {
    double s = 0.0;
    for (double p : probabilities)
        if (p > kZeroEigenvalue) s -= p * std::log2(p);
    return s;
}

double entropy_of_spectrum(const RealVector& eigenvalues) {
    return shannon_entropy(std::span<const double>(eigenvalues.data(), static_cast<std::size_t>(eigenvalues.size())));
}

double von_neumann_entropy(const DensityMatrix& rho) {
    return entropy_of_spectrum(hermitian_eigenvalues(rho.matrix()));
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) throw InvalidArgument("relative_entropy: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (sigma.matrix() + sigma.matrix().adjoint()));
    if (solver.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver did not converge");
    const RealVector& mu = solver.eigenvalues();
    const ComplexMatrix& v = solver.eigenvectors();

    // -Tr[rho log sigma] in the eigenbasis of sigma.
    double cross = 0.0;
    for (Eigen::Index k = 0; k < mu.size(); ++k) {
        const double weight = (v.col(k).adjoint() * rho.matrix() * v.col(k))(0, 0).real();
        if (mu(k) < kZeroEigenvalue) {
            if (weight > 1e-10) throw NumericalError("relative_entropy: support of rho not contained in support of sigma");
            continue;
        }
        cross -= weight * std::log2(mu(k));
    }
    return std::max(0.0, cross - von_neumann_entropy(rho));
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw InvalidArgument("trace_distance: dimension mismatch");
    const RealVector ev = hermitian_eigenvalues(a - b);
    return 0.5 * ev.cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    return trace_distance(a.matrix(), b.matrix());
}

}  // namespace qcorr
