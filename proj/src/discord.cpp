#include "qcorr/discord.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>

namespace qcorr {

namespace {

using std::numbers::pi;

// a*log2(a) with 0 log 0 = 0.
double xlog2(double a) { return a > 0.0 ? a * std::log2(a) : 0.0; }

// Columns are the eigenvectors of projector(theta, phi, 1) and (.., 2).
ComplexMatrix measurement_basis(double theta, double phi) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const cplx e = std::polar(1.0, phi);
    ComplexMatrix u(2, 2);
    u << c, -s * e, s * std::conj(e), c;
    return u;
}

// Dephasing in a rotated basis is diagonal there, so S(Phi(m)) is the
// Shannon entropy of diag(U^dag m U).
double dephased_entropy(const ComplexMatrix& m, const MeasurementFrame& frame) {
    ComplexMatrix r = m;
    for (int j = 0; j < frame.size(); ++j) {
        const ComplexMatrix u = measurement_basis(frame[j].theta, frame[j].phi);
        r = apply_right(apply_left(u.adjoint(), j, r), u, j);
    }
    std::vector<double> p(static_cast<std::size_t>(r.rows()));
    for (Eigen::Index i = 0; i < r.rows(); ++i) p[static_cast<std::size_t>(i)] = r(i, i).real();
    return shannon_entropy(p);
}

// Objective with the rho-only quantities precomputed.
class GqdEvaluator {
public:
    explicit GqdEvaluator(const DensityMatrix& rho) : rho_(rho), entropy_(von_neumann_entropy(rho)) {
        for (int j = 0; j < rho.num_qubits(); ++j) {
            DensityMatrix m = partial_trace(rho, QubitSubset{j});
            marginal_entropy_.push_back(von_neumann_entropy(m));
            marginals_.push_back(m.matrix());
        }
    }

    double operator()(const MeasurementFrame& frame) {
        ++evals_;
        double value = dephased_entropy(rho_.matrix(), frame) - entropy_;
        for (int j = 0; j < frame.size(); ++j) {
            const MeasurementFrame local({frame[j]});
            value -= dephased_entropy(marginals_[static_cast<std::size_t>(j)], local) -
                     marginal_entropy_[static_cast<std::size_t>(j)];
        }
        return value;
    }

    long evals() const { return evals_; }

private:
    const DensityMatrix& rho_;
    double entropy_;
    std::vector<ComplexMatrix> marginals_;
    std::vector<double> marginal_entropy_;
    long evals_ = 0;
};

// Minimum of f on [a, b] by golden-section search.
std::pair<double, double> golden_section(const std::function<double(double)>& f, double a, double b,
                                         double tol) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - g * (b - a);
    double x2 = a + g * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

struct Candidate {
    double value;
    MeasurementFrame frame;
};

// Strictly lower value wins; near-ties go to the lexicographically smaller
// angle vector so results do not depend on evaluation order.
bool better(const Candidate& a, const Candidate& b) {
    constexpr double tie = 1e-14;
    if (a.value < b.value - tie) return true;
    if (b.value < a.value - tie) return false;
    return a.frame < b.frame;
}

MeasurementFrame frame_from(const std::vector<double>& x) {
    std::vector<AnglePair> a;
    for (std::size_t j = 0; j + 1 < x.size(); j += 2) a.push_back(canonical_angles(x[j], x[j + 1]));
    return MeasurementFrame(std::move(a));
}

// Coordinate descent over the 2N angles with shrinking brackets.
Candidate refine(GqdEvaluator& f, Candidate start, const OptimizerConfig& cfg) {
    std::vector<double> x;
    for (const auto& a : start.frame.angles()) {
        x.push_back(a.theta);
        x.push_back(a.phi);
    }
    Candidate best = std::move(start);
    const double tol = std::max(cfg.tolerance, 1e-12);
    for (int sweep = 0; sweep < cfg.refinement_iterations; ++sweep) {
        const double shrink = std::ldexp(1.0, -sweep);
        for (std::size_t c = 0; c < x.size(); ++c) {
            const double half_width = (c % 2 == 0 ? pi / 2.0 : pi) * shrink;
            const double x0 = x[c];
            auto along = [&](double s) {
                x[c] = s;
                return f(frame_from(x));
            };
            const auto [s_min, v_min] = golden_section(along, x0 - half_width, x0 + half_width, tol);
            x[c] = x0;
            if (v_min < best.value) {
                x[c] = s_min;
                best = Candidate{v_min, frame_from(x)};
            }
        }
    }
    return best;
}

double pauli_xy_shifted_terms(double kt) {
    const double u = std::exp(-4.0 * kt);
    const double v = std::exp(-8.0 * kt);
    return 0.5 * xlog2(1.0 - v) + (xlog2(1.0 + 6.0 * u + v) + 3.0 * xlog2(1.0 - 2.0 * u + v)) / 8.0;
}

}  // namespace

// ---------------------------------------------------------------- frames

AnglePair canonical_angles(double theta, double phi) {
    const double two_pi = 2.0 * pi;
    double t = std::fmod(theta, two_pi);
    if (t < 0.0) t += two_pi;
    // theta + pi swaps the two outcomes of the same measurement.
    if (t >= pi) t -= pi;
    if (t >= pi || t < 0.0) t = 0.0;
    double p = std::fmod(phi, two_pi);
    if (p < 0.0) p += two_pi;
    if (p >= two_pi) p = 0.0;
    return {t, p};
}

MeasurementFrame::MeasurementFrame(std::vector<AnglePair> angles) : angles_(std::move(angles)) {
    for (const auto& a : angles_)
        if (!(a.theta >= 0.0 && a.theta < pi && a.phi >= 0.0 && a.phi < 2.0 * pi))
            throw InvalidArgument("measurement angles out of range (theta in [0,pi), phi in [0,2pi))");
}

MeasurementFrame MeasurementFrame::uniform(int num_qubits, double theta, double phi) {
    if (num_qubits < 1) throw InvalidArgument("measurement frame needs at least one qubit");
    return MeasurementFrame(std::vector<AnglePair>(static_cast<std::size_t>(num_qubits), AnglePair{theta, phi}));
}

MeasurementFrame MeasurementFrame::x_frame(int num_qubits) { return uniform(num_qubits, pi / 2.0, 0.0); }

MeasurementFrame MeasurementFrame::y_frame(int num_qubits) { return uniform(num_qubits, pi / 2.0, pi / 2.0); }

void OptimizerConfig::validate() const {
    if (grid_theta < 2 || grid_phi < 2) throw InvalidArgument("optimizer grid needs at least 2 points per angle");
    if (refinement_iterations < 0) throw InvalidArgument("refinement iterations must be nonnegative");
    if (!(tolerance > 0.0)) throw InvalidArgument("optimizer tolerance must be positive");
}

// ------------------------------------------------------------ measurement

ComplexMatrix projector(double theta, double phi, int outcome) {
    if (outcome != 1 && outcome != 2) throw InvalidArgument("projector outcome must be 1 or 2");
    const ComplexMatrix u = measurement_basis(theta, phi);
    const auto v = u.col(outcome - 1);
    return v * v.adjoint();
}

DensityMatrix dephase(const DensityMatrix& rho, const MeasurementFrame& frame) {
    if (frame.size() != rho.num_qubits()) throw InvalidArgument("frame size does not match the state");
    // The product projectors factor, so the sum over outcome strings is the
    // composition of the single-qubit pinchings.
    ComplexMatrix m = rho.matrix();
    for (int j = 0; j < frame.size(); ++j) {
        const ComplexMatrix p1 = projector(frame[j].theta, frame[j].phi, 1);
        const ComplexMatrix p2 = projector(frame[j].theta, frame[j].phi, 2);
        m = apply_right(apply_left(p1, j, m), p1, j) + apply_right(apply_left(p2, j, m), p2, j);
    }
    return DensityMatrix::trusted(std::move(m));
}

double gqd_objective(const DensityMatrix& rho, const MeasurementFrame& frame) {
    if (frame.size() != rho.num_qubits()) throw InvalidArgument("frame size does not match the state");
    GqdEvaluator f(rho);
    return f(frame);
}

DiscordResult global_discord(const DensityMatrix& rho, const OptimizerConfig& cfg) {
    cfg.validate();
    if (rho.num_qubits() > kDefaultMaxQubits) throw InvalidArgument("state exceeds the qubit limit");
    const int n = rho.num_qubits();
    GqdEvaluator f(rho);
    DiscordResult res;

    const std::pair<std::string, MeasurementFrame> named[] = {
        {"z", MeasurementFrame::z_frame(n)},
        {"x", MeasurementFrame::x_frame(n)},
        {"y", MeasurementFrame::y_frame(n)},
    };
    std::vector<Candidate> starts;
    for (const auto& [name, frame] : named) {
        const double v = f(frame);
        res.branch_values[name] = v;
        starts.push_back({v, frame});
    }

    std::optional<Candidate> grid_best;
    for (int i = 0; i < cfg.grid_theta; ++i) {
        for (int k = 0; k < cfg.grid_phi; ++k) {
            const auto frame = MeasurementFrame::uniform(n, pi * i / cfg.grid_theta, 2.0 * pi * k / cfg.grid_phi);
            Candidate c{f(frame), frame};
            if (!grid_best || better(c, *grid_best)) grid_best = std::move(c);
        }
    }
    starts.insert(starts.begin(), *grid_best);

    std::optional<Candidate> best;
    for (auto& s : starts) {
        Candidate c = refine(f, s, cfg);
        if (!best || better(c, *best)) best = std::move(c);
        if (better(s, *best)) best = s;
    }
    res.value = best->value;
    res.argmin = best->frame;
    res.optimizer_evals = f.evals();
    return res;
}

double bipartite_discord(const DensityMatrix& rho, const OptimizerConfig& cfg) {
    cfg.validate();
    if (rho.num_qubits() != 2) throw InvalidArgument("bipartite_discord needs a two-qubit state");
    const double s_rho = von_neumann_entropy(rho);
    const double s_b = von_neumann_entropy(partial_trace(rho, QubitSubset{1}));

    // sum_k p_k S(rho_k) for the measurement on qubit 1.
    auto conditional_entropy = [&](double theta, double phi) {
        double s = 0.0;
        for (int outcome = 1; outcome <= 2; ++outcome) {
            const ComplexMatrix p = projector(theta, phi, outcome);
            const ComplexMatrix post = apply_right(apply_left(p, 1, rho.matrix()), p, 1);
            const double prob = post.trace().real();
            if (prob < 1e-14) continue;
            s += prob * entropy_of_spectrum(hermitian_eigenvalues(post / prob));
        }
        return s;
    };

    double best_theta = 0.0, best_phi = 0.0;
    double best = conditional_entropy(0.0, 0.0);
    for (int i = 0; i < cfg.grid_theta; ++i) {
        for (int k = 0; k < cfg.grid_phi; ++k) {
            const double th = pi * i / cfg.grid_theta;
            const double ph = 2.0 * pi * k / cfg.grid_phi;
            const double v = conditional_entropy(th, ph);
            if (v < best) {
                best = v;
                best_theta = th;
                best_phi = ph;
            }
        }
    }
    const double tol = std::max(cfg.tolerance, 1e-12);
    for (int sweep = 0; sweep < cfg.refinement_iterations; ++sweep) {
        const double shrink = std::ldexp(1.0, -sweep);
        auto [th, v1] = golden_section([&](double t) { return conditional_entropy(t, best_phi); },
                                       best_theta - pi / 2.0 * shrink, best_theta + pi / 2.0 * shrink, tol);
        if (v1 < best) {
            best = v1;
            best_theta = th;
        }
        auto [ph, v2] = golden_section([&](double p) { return conditional_entropy(best_theta, p); },
                                       best_phi - pi * shrink, best_phi + pi * shrink, tol);
        if (v2 < best) {
            best = v2;
            best_phi = ph;
        }
    }
    // I - C = [S_A + S_B - S] - [S_A - min sum_k p_k S(rho_k)]
    return std::max(0.0, s_b - s_rho + best);
}

// ------------------------------------------------------------- closed forms

double analytic_entropy_pauli_xy(double scaled_time) {
    if (!(scaled_time >= 0.0)) throw InvalidArgument("scaled time must be nonnegative");
    return 3.0 - pauli_xy_shifted_terms(scaled_time);
}

double analytic_gqd(ChannelKind kind, double scaled_time) {
    if (!(scaled_time >= 0.0)) throw InvalidArgument("scaled time must be nonnegative");
    switch (kind) {
        case ChannelKind::PauliX:
        case ChannelKind::PauliY:
            return std::min(1.0, pauli_xy_shifted_terms(scaled_time));
        case ChannelKind::PauliZ: {
            const double x = std::exp(-8.0 * scaled_time);
            return 0.5 * (xlog2(1.0 - x) + xlog2(1.0 + x));
        }
        case ChannelKind::Isotropic: {
            const double u = std::exp(-8.0 * scaled_time);
            const double v = std::exp(-16.0 * scaled_time);
            return -xlog2(1.0 + 6.0 * u + v) / 8.0 + xlog2(1.0 + 6.0 * u - 7.0 * v) / 16.0 +
                   xlog2(1.0 + 6.0 * u + 9.0 * v) / 16.0;
        }
    }
    return 0.0;
}

double pauli_z_discord_unhalved(double scaled_time) {
    const double x = std::exp(-8.0 * scaled_time);
    return 0.5 * xlog2(1.0 - x) + xlog2(1.0 + x);
}

double sudden_change_point(ChannelKind kind) {
    if (kind != ChannelKind::PauliX && kind != ChannelKind::PauliY)
        throw InvalidArgument("sudden change point is defined for the Pauli-X and Pauli-Y channels");
    // 3 - S decreases from 3 to 0; the branches cross where it equals 1.
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (pauli_xy_shifted_terms(mid) > 1.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace qcorr
