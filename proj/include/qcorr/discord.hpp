// discord.hpp
// Global quantum discord: local von Neumann measurements parameterized by
// (theta, phi) per qubit, the dephasing maps they induce, the relative
// entropy objective and its minimization; bipartite Ollivier-Zurek discord;
// closed-form discord curves of the GHZ channel states and the location of
// the sudden change under Pauli-X/Y noise.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "qcorr/channels.hpp"
#include "qcorr/qmat.hpp"

namespace qcorr {

struct AnglePair {
    double theta = 0.0;  // [0, pi)
    double phi = 0.0;    // [0, 2 pi)

    auto operator<=>(const AnglePair&) const = default;
};

// Per-qubit measurement angles.
class MeasurementFrame {
public:
    MeasurementFrame() = default;
    explicit MeasurementFrame(std::vector<AnglePair> angles);

    // Every qubit measured with the same angles.
    static MeasurementFrame uniform(int num_qubits, double theta, double phi);
    static MeasurementFrame z_frame(int num_qubits) { return uniform(num_qubits, 0.0, 0.0); }
    static MeasurementFrame x_frame(int num_qubits);
    static MeasurementFrame y_frame(int num_qubits);

    int size() const { return static_cast<int>(angles_.size()); }
    const std::vector<AnglePair>& angles() const { return angles_; }
    const AnglePair& operator[](int j) const { return angles_[static_cast<std::size_t>(j)]; }

    auto operator<=>(const MeasurementFrame&) const = default;

private:
    std::vector<AnglePair> angles_;
};

// Maps arbitrary angles to the equivalent measurement with theta in [0, pi)
// and phi in [0, 2 pi). Outcomes may be relabelled; the dephasing map is
// unchanged.
AnglePair canonical_angles(double theta, double phi);

struct OptimizerConfig {
    int grid_theta = 21;
    int grid_phi = 16;
    int refinement_iterations = 3;
    double tolerance = 1e-9;

    void validate() const;
};

struct DiscordResult {
    double value = 0.0;
    MeasurementFrame argmin;
    std::map<std::string, double> branch_values;  // "z", "x", "y"
    long optimizer_evals = 0;
};

// Rank-1 projector for outcome 1 or 2 of the measurement along (theta, phi).
ComplexMatrix projector(double theta, double phi, int outcome);

// sum_k Pi_k rho Pi_k over all 2^N product outcome strings.
DensityMatrix dephase(const DensityMatrix& rho, const MeasurementFrame& frame);

// S(rho || Phi(rho)) - sum_j S(rho_j || Phi_j(rho_j)).
double gqd_objective(const DensityMatrix& rho, const MeasurementFrame& frame);

// Minimizes gqd_objective over measurement frames: the named z/x/y frames,
// a uniform-frame grid, then per-angle coordinate descent.
DiscordResult global_discord(const DensityMatrix& rho, const OptimizerConfig& cfg = {});

// Ollivier-Zurek discord of a two-qubit state with the measurement on the
// second qubit.
double bipartite_discord(const DensityMatrix& rho, const OptimizerConfig& cfg = {});

// Von Neumann entropy of the Pauli-X (equivalently Pauli-Y) channel state
// from its closed-form spectrum.
double analytic_entropy_pauli_xy(double scaled_time);

// Closed-form global discord of the four-qubit GHZ state under each channel.
// Pauli-X/Y take the smaller of the z-frame branch (1) and the x/y-frame
// branch (3 - S).
double analytic_gqd(ChannelKind kind, double scaled_time);

// Pauli-Z discord with the second logarithmic term not halved, i.e.
// (1/2)(1-x)log2(1-x) + (1+x)log2(1+x), x = exp(-8 kt). It evaluates to 2 at
// kt = 0 and is kept only so verification can show it disagrees with the
// optimizer.
double pauli_z_discord_unhalved(double scaled_time);

// kappa*t where the z-frame and x/y-frame branches cross (S = 2), by
// bisection to 1e-12. Only Pauli-X and Pauli-Y are accepted.
double sudden_change_point(ChannelKind kind);

}  // namespace qcorr
