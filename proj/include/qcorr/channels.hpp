// channels.hpp
// GHZ preparation, closed-form evolved states of the four-qubit GHZ state
// under local Pauli and isotropic Markovian noise, and a Runge-Kutta
// integrator of the Lindblad equation used to cross-check them.

#pragma once

#include <string_view>
#include <vector>

#include "qcorr/qmat.hpp"

namespace qcorr {

enum class ChannelKind { PauliX, PauliY, PauliZ, Isotropic };

inline constexpr ChannelKind kAllChannels[] = {ChannelKind::PauliX, ChannelKind::PauliY,
                                               ChannelKind::PauliZ, ChannelKind::Isotropic};

// Short name used on the command line and in CSV output: x, y, z, iso.
std::string_view channel_name(ChannelKind kind);
ChannelKind parse_channel(std::string_view name);

// Noise of one kind acting independently on every qubit at rate kappa.
struct NoiseChannel {
    ChannelKind kind = ChannelKind::PauliZ;
    double kappa = 1.0;

    explicit NoiseChannel(ChannelKind k, double rate = 1.0);
};

// A jump operator sqrt(kappa) * sigma acting on a single qubit.
struct LindbladOperator {
    int qubit = 0;
    ComplexMatrix op;  // 2x2, already scaled by sqrt(kappa)
};

std::vector<LindbladOperator> lindblad_operators(const NoiseChannel& channel, int num_qubits);

// Coefficients of the closed-form states. Pauli channels fill alpha, beta,
// gamma; the isotropic channel fills the *_tilde fields and alpha_minus.
struct ChannelCoefficients {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double alpha_plus = 0.0;
    double alpha_minus = 0.0;
    double beta_tilde = 0.0;
    double gamma_tilde = 0.0;
};

ChannelCoefficients coefficients(ChannelKind kind, double scaled_time);

struct EvolvedState {
    NoiseChannel channel;
    double scaled_time;
    DensityMatrix rho;
};

// (|0...0> + |1...1>)/sqrt(2) as a density matrix; n >= 2.
DensityMatrix ghz_state(int num_qubits);

// Four-qubit GHZ state after time t under the given channel, as a function
// of kappa*t. Throws InvalidArgument for negative time.
EvolvedState closed_form_state(const NoiseChannel& channel, double scaled_time);
DensityMatrix closed_form_state(ChannelKind kind, double scaled_time);

// Right-hand side of the Lindblad equation with zero Hamiltonian.
ComplexMatrix lindblad_generator(const ComplexMatrix& rho, std::span<const LindbladOperator> ops);
ComplexMatrix lindblad_generator(const DensityMatrix& rho, const NoiseChannel& channel);

struct IntegratorReport {
    int steps = 0;                // steps of the accepted (finer) run
    double step_size = 0.0;
    double richardson_error = 0.0;  // max-entry estimate of the accepted run's error
};

// Integrates d(rho)/dt from 0 to t_final with classical RK4. The initial
// step satisfies 8*kappa*h <= 0.01; the step is halved until the Richardson
// estimate falls below step_tolerance. Throws NumericalError if the step
// underflows.
DensityMatrix evolve_numeric(const DensityMatrix& rho0, const NoiseChannel& channel, double t_final,
                             double step_tolerance = 1e-10, IntegratorReport* report = nullptr);

}  // namespace qcorr
