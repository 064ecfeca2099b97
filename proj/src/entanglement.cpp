#include "qcorr/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

namespace qcorr {

namespace {

// Unclamped closed-form tau expressions.
double tau_expression(ChannelKind kind, double kt) {
    const double r2 = std::sqrt(2.0);
    switch (kind) {
        case ChannelKind::PauliX:
        case ChannelKind::PauliY:
            return r2 / 4.0 * (std::exp(-8.0 * kt) + 6.0 * std::exp(-4.0 * kt) - 3.0);
        case ChannelKind::PauliZ:
            return r2 * std::exp(-8.0 * kt);
        case ChannelKind::Isotropic:
            return r2 / 8.0 * (9.0 * std::exp(-16.0 * kt) + 6.0 * std::exp(-8.0 * kt) - 7.0);
    }
    return 0.0;
}

// Root of a decreasing function on [lo, hi] with f(lo) > 0 >= f(hi).
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Moves qubit `cut` to the last (fastest-varying) position.
DensityMatrix cut_last(const DensityMatrix& rho, int cut) {
    std::vector<int> perm;
    for (int q = 0; q < rho.num_qubits(); ++q)
        if (q != cut) perm.push_back(q);
    perm.push_back(cut);
    return permute_qubits(rho, perm);
}

}  // namespace

Eigen::MatrixXd SOGenerator::matrix() const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dimension, dimension);
    m(p, q) = 1.0;
    m(q, p) = -1.0;
    return m;
}

std::vector<SOGenerator> so_generators(int dimension) {
    if (dimension < 2) throw InvalidArgument("SO(d) generators need d >= 2");
    std::vector<SOGenerator> out;
    out.reserve(static_cast<std::size_t>(dimension * (dimension - 1) / 2));
    for (int p = 0; p < dimension; ++p)
        for (int q = p + 1; q < dimension; ++q) out.push_back({dimension, p, q});
    return out;
}

double pure_concurrence(const ComplexVector& psi) {
    const DensityMatrix rho = DensityMatrix::pure(psi);
    const int n = rho.num_qubits();
    double purity_sum = 0.0;
    for (int i = 0; i < n; ++i) purity_sum += partial_trace(rho, QubitSubset{i}).purity();
    return std::sqrt(std::max(0.0, 1.0 - purity_sum / n));
}

double CutTermSet::sum_of_squares() const {
    double s = 0.0;
    for (const auto& t : terms) s += t.c * t.c;
    return s;
}

CutTermSet cut_terms(const DensityMatrix& rho, int cut) {
    const int n = rho.num_qubits();
    if (n < 3) throw InvalidArgument("cut_terms needs at least three qubits");
    if (cut < 0 || cut >= n) throw InvalidArgument("cut index out of range");

    const ComplexMatrix r = cut_last(rho, cut).matrix();
    const ComplexMatrix r_conj = r.conjugate();
    const int d = 1 << (n - 1);
    Eigen::MatrixXd l0(2, 2);
    l0 << 0.0, 1.0, -1.0, 0.0;

    CutTermSet out;
    out.cut_index = cut;
    for (const SOGenerator& g : so_generators(d)) {
        // S = L_k (x) L_0 has four nonzero entries; form it densely anyway,
        // the matrices here are at most a few hundred wide.
        Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2 * d, 2 * d);
        const Eigen::MatrixXd lk = g.matrix();
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (lk(i, j) != 0.0) s.block(2 * i, 2 * j, 2, 2) = lk(i, j) * l0;
        const ComplexMatrix sc = s.cast<cplx>();
        const ComplexMatrix product = r * (sc * r_conj * sc);

        CutTerm term{g, {0.0, 0.0, 0.0, 0.0}, 0.0};
        if (product.cwiseAbs().maxCoeff() > 1e-300) {
            Eigen::ComplexEigenSolver<ComplexMatrix> solver(product, false);
            if (solver.info() != Eigen::Success) throw NumericalError("eigensolver failed in cut_terms");
            std::vector<double> roots;
            roots.reserve(static_cast<std::size_t>(product.rows()));
            for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
                const double ev = solver.eigenvalues()(i).real();
                if (ev < -1e-8)
                    throw NumericalError("rho*rho~ eigenvalue " + std::to_string(ev) + " is negative beyond tolerance");
                roots.push_back(std::sqrt(std::max(0.0, ev)));
            }
            std::partial_sort(roots.begin(), roots.begin() + 4, roots.end(), std::greater<>());
            std::copy_n(roots.begin(), 4, term.lambdas.begin());
            term.c = std::max(0.0, term.lambdas[0] - term.lambdas[1] - term.lambdas[2] - term.lambdas[3]);
        }
        out.terms.push_back(term);
    }
    return out;
}

double calibrated_convention_scale() {
    static const double scale = [] {
        const double raw = tau_lower_bound(ghz_state(4), 1.0).raw;
        return std::sqrt(2.0) / raw;
    }();
    return scale;
}

TauResult tau_lower_bound(const DensityMatrix& rho) {
    return tau_lower_bound(rho, calibrated_convention_scale());
}

TauResult tau_lower_bound(const DensityMatrix& rho, double convention_scale) {
    const int n = rho.num_qubits();
    TauResult res;
    res.convention_scale = convention_scale;
    double total = 0.0;
    for (int cut = 0; cut < n; ++cut) {
        const double ss = cut_terms(rho, cut).sum_of_squares();
        res.per_cut.push_back(std::sqrt(ss));
        total += ss;
    }
    res.raw = std::sqrt(total / n);
    res.value = convention_scale * res.raw;
    return res;
}

double analytic_tau(ChannelKind kind, double scaled_time) {
    if (!(scaled_time >= 0.0)) throw InvalidArgument("scaled time must be nonnegative");
    return std::max(0.0, tau_expression(kind, scaled_time));
}

double ppt_min_eigenvalue(const DensityMatrix& rho, const QubitSubset& subset) {
    const RealVector ev = hermitian_eigenvalues(partial_transpose(rho, subset));
    return ev(ev.size() - 1);
}

std::optional<double> tau_vanishing_time(ChannelKind kind) {
    if (kind == ChannelKind::PauliZ) return std::nullopt;
    return bisect([kind](double kt) { return tau_expression(kind, kt); }, 0.0, 5.0, 1e-10);
}

}  // namespace qcorr
