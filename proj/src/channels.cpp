#include "qcorr/channels.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace qcorr {

namespace {

constexpr int kGhzQubits = 4;
constexpr Eigen::Index kGhzDim = 16;

void require_time(double scaled_time) {
    if (!(scaled_time >= 0.0) || !std::isfinite(scaled_time))
        throw InvalidArgument("scaled time must be finite and nonnegative");
}

ComplexMatrix rk4_step(const ComplexMatrix& rho, std::span<const LindbladOperator> ops, double h) {
    const ComplexMatrix k1 = lindblad_generator(rho, ops);
    const ComplexMatrix k2 = lindblad_generator(rho + 0.5 * h * k1, ops);
    const ComplexMatrix k3 = lindblad_generator(rho + 0.5 * h * k2, ops);
    const ComplexMatrix k4 = lindblad_generator(rho + h * k3, ops);
    return rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

ComplexMatrix integrate(const ComplexMatrix& rho0, std::span<const LindbladOperator> ops, double t_final,
                        int steps) {
    const double h = t_final / steps;
    ComplexMatrix rho = rho0;
    for (int s = 0; s < steps; ++s) rho = rk4_step(rho, ops, h);
    return rho;
}

}  // namespace

std::string_view channel_name(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::PauliX: return "x";
        case ChannelKind::PauliY: return "y";
        case ChannelKind::PauliZ: return "z";
        case ChannelKind::Isotropic: return "iso";
    }
    return "?";
}

ChannelKind parse_channel(std::string_view name) {
    for (ChannelKind k : kAllChannels)
        if (channel_name(k) == name) return k;
    throw InvalidArgument("unknown channel '" + std::string(name) + "' (expected x, y, z or iso)");
}

NoiseChannel::NoiseChannel(ChannelKind k, double rate) : kind(k), kappa(rate) {
    if (!(rate > 0.0) || !std::isfinite(rate)) throw InvalidArgument("decoherence rate must be positive");
}

std::vector<LindbladOperator> lindblad_operators(const NoiseChannel& channel, int num_qubits) {
    const double s = std::sqrt(channel.kappa);
    std::vector<ComplexMatrix> paulis;
    switch (channel.kind) {
        case ChannelKind::PauliX: paulis = {pauli_x()}; break;
        case ChannelKind::PauliY: paulis = {pauli_y()}; break;
        case ChannelKind::PauliZ: paulis = {pauli_z()}; break;
        case ChannelKind::Isotropic: paulis = {pauli_x(), pauli_y(), pauli_z()}; break;
    }
    std::vector<LindbladOperator> ops;
    for (int q = 0; q < num_qubits; ++q)
        for (const auto& p : paulis) ops.push_back({q, s * p});
    return ops;
}

ChannelCoefficients coefficients(ChannelKind kind, double scaled_time) {
    require_time(scaled_time);
    ChannelCoefficients c;
    if (kind == ChannelKind::Isotropic) {
        const double e8 = std::exp(-8.0 * scaled_time);
        const double e16 = std::exp(-16.0 * scaled_time);
        c.alpha_plus = (1.0 + 6.0 * e8 + e16) / 16.0;
        c.beta_tilde = (1.0 - e16) / 16.0;
        c.gamma_tilde = (1.0 - 2.0 * e8 + e16) / 16.0;
        c.alpha_minus = 0.5 * e16;
    } else {
        const double e4 = std::exp(-4.0 * scaled_time);
        const double e8 = std::exp(-8.0 * scaled_time);
        c.alpha = (1.0 + 6.0 * e4 + e8) / 16.0;
        c.beta = (1.0 - e8) / 16.0;
        c.gamma = (1.0 - 2.0 * e4 + e8) / 16.0;
    }
    return c;
}

DensityMatrix ghz_state(int num_qubits) {
    if (num_qubits < 2) throw InvalidArgument("GHZ state needs at least two qubits");
    if (num_qubits > kDefaultMaxQubits) throw InvalidArgument("GHZ state exceeds the qubit limit");
    const Eigen::Index d = Eigen::Index{1} << num_qubits;
    ComplexVector psi = ComplexVector::Zero(d);
    psi(0) = psi(d - 1) = 1.0 / std::sqrt(2.0);
    return DensityMatrix::pure(psi);
}

DensityMatrix closed_form_state(ChannelKind kind, double scaled_time) {
    require_time(scaled_time);
    const ChannelCoefficients c = coefficients(kind, scaled_time);
    ComplexMatrix m = ComplexMatrix::Zero(kGhzDim, kGhzDim);

    switch (kind) {
        case ChannelKind::PauliX:
        case ChannelKind::PauliY: {
            // Diagonal entry by Hamming weight of the basis index; the
            // anti-diagonal partner |i><15-i| carries the same magnitude.
            // Under Y noise its sign is (-1)^weight.
            const double by_weight[] = {c.alpha, c.beta, c.gamma, c.beta, c.alpha};
            for (Eigen::Index i = 0; i < kGhzDim; ++i) {
                const int w = std::popcount(static_cast<unsigned>(i));
                const double v = by_weight[w];
                const double sign = (kind == ChannelKind::PauliY && (w % 2 == 1)) ? -1.0 : 1.0;
                m(i, i) = v;
                m(i, kGhzDim - 1 - i) = sign * v;
            }
            break;
        }
        case ChannelKind::PauliZ: {
            const double coherence = 0.5 * std::exp(-8.0 * scaled_time);
            m(0, 0) = m(kGhzDim - 1, kGhzDim - 1) = 0.5;
            m(0, kGhzDim - 1) = m(kGhzDim - 1, 0) = coherence;
            break;
        }
        case ChannelKind::Isotropic: {
            const double by_weight[] = {c.alpha_plus, c.beta_tilde, c.gamma_tilde, c.beta_tilde,
                                        c.alpha_plus};
            for (Eigen::Index i = 0; i < kGhzDim; ++i)
                m(i, i) = by_weight[std::popcount(static_cast<unsigned>(i))];
            m(0, kGhzDim - 1) = m(kGhzDim - 1, 0) = c.alpha_minus;
            break;
        }
    }
    return DensityMatrix::trusted(std::move(m), 1e-12);
}

EvolvedState closed_form_state(const NoiseChannel& channel, double scaled_time) {
    return EvolvedState{channel, scaled_time, closed_form_state(channel.kind, scaled_time)};
}

ComplexMatrix lindblad_generator(const ComplexMatrix& rho, std::span<const LindbladOperator> ops) {
    ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
    for (const auto& l : ops) {
        const ComplexMatrix ldag = l.op.adjoint();
        const ComplexMatrix ldl = ldag * l.op;
        out += apply_right(apply_left(l.op, l.qubit, rho), ldag, l.qubit);
        out -= 0.5 * (apply_left(ldl, l.qubit, rho) + apply_right(rho, ldl, l.qubit));
    }
    return out;
}

ComplexMatrix lindblad_generator(const DensityMatrix& rho, const NoiseChannel& channel) {
    const auto ops = lindblad_operators(channel, rho.num_qubits());
    return lindblad_generator(rho.matrix(), ops);
}

DensityMatrix evolve_numeric(const DensityMatrix& rho0, const NoiseChannel& channel, double t_final,
                             double step_tolerance, IntegratorReport* report) {
    require_time(t_final);
    if (!(step_tolerance > 0.0)) throw InvalidArgument("step tolerance must be positive");
    if (t_final == 0.0) {
        if (report) *report = IntegratorReport{};
        return rho0;
    }
    const auto ops = lindblad_operators(channel, rho0.num_qubits());

    const double h_max = 0.01 / (8.0 * channel.kappa);
    int steps = static_cast<int>(std::ceil(t_final / h_max));
    ComplexMatrix coarse = integrate(rho0.matrix(), ops, t_final, steps);
    for (;;) {
        const double h_fine = t_final / (2.0 * steps);
        if (h_fine < 1e-12 * t_final || steps > (1 << 22))
            throw NumericalError("evolve_numeric: step size underflow");
        ComplexMatrix fine = integrate(rho0.matrix(), ops, t_final, 2 * steps);
        // RK4 global error scales as h^4, so the fine run's error is
        // (fine - coarse) / 15.
        const double err = (fine - coarse).cwiseAbs().maxCoeff() / 15.0;
        steps *= 2;
        if (err <= step_tolerance) {
            const cplx tr = fine.trace();
            fine /= tr;
            fine = 0.5 * (fine + fine.adjoint());
            if (report) *report = IntegratorReport{steps, t_final / steps, err};
            return DensityMatrix::trusted(std::move(fine));
        }
        coarse = std::move(fine);
    }
}

}  // namespace qcorr
