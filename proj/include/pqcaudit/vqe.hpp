#pragma once

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <string_view>

#include "pqcaudit/threat_knowledge.hpp"

namespace pqcaudit {

// Weights of the diagonal two-qubit threat Hamiltonian
//   H = -wS * Z0  -  wG * Z1  +  lambda * Z0 Z1
// Qubit 0 encodes Shor exposure, qubit 1 Grover exposure; lambda couples the
// two when both attack paths co-occur in one file (stored negative so that
// co-occurrence deepens the ground state instead of lifting it).
struct ThreatWeights {
    double shor = 0.0;
    double grover = 0.0;
    double interaction = 0.0;

    bool operator==(const ThreatWeights&) const = default;
};

// Calibration constants for weight building, score scaling and banding.
struct ScoringConstants {
    double shor_weight_cap = 2.0;
    double grover_weight_cap = 1.0;
    double interaction_magnitude = 0.25;
    double reference_qubits = 2330.0;   // 256-bit curve discrete-log demand
    double energy_scale = 3.25;         // deepest energy reachable under caps
    double critical_threshold = 7.0;
    double high_threshold = 5.0;
    double medium_threshold = 3.0;

    bool operator==(const ScoringConstants&) const = default;
};

// Grover weight is reduction_bits relative to a 128-bit reference loss;
// already-broken ciphers and exposed keys are floored at 0.75.
inline constexpr double kReferenceReductionBits = 128.0;
inline constexpr double kSevereGroverFloor = 0.75;

// Product state RY(theta0) (x) RY(theta1) applied to |00>.
struct Statevector2Q {
    std::array<std::complex<double>, 4> amplitudes{};  // |00>, |01>, |10>, |11>

    double norm_squared() const;
};

Statevector2Q prepare_ry_product(double theta0, double theta1);

// Diagonal of H in the computational basis, ordered (E00, E01, E10, E11).
std::array<double, 4> hamiltonian_energies(const ThreatWeights& w);

// <psi(theta)|H|psi(theta)> evaluated on the simulated statevector.
double expectation(const ThreatWeights& w, double theta0, double theta1);

// Analytic form -wS cos(t0) - wG cos(t1) + lambda cos(t0) cos(t1);
// kept as an independent cross-check of the simulator path.
double expectation_closed_form(const ThreatWeights& w, double theta0, double theta1);

struct OptimizerConfig {
    int max_iterations = 200;
    double tolerance = 1e-8;
};

struct MinimizeResult {
    std::array<double, 2> theta{};
    double energy = 0.0;
    int evaluations = 0;
};

// Derivative-free minimisation of the expectation surface. Restarts a local
// Nelder-Mead search from all four corners of {0, pi}^2 (the basis states),
// which pins the global minimum of this bilinear-in-cosines surface.
MinimizeResult minimize(const ThreatWeights& w, const OptimizerConfig& config = {});

enum class ThreatBand { Critical, High, Medium, Low };

std::string_view to_string(ThreatBand band);
std::optional<ThreatBand> threat_band_from_string(std::string_view name);
ThreatBand band_for(double score, const ScoringConstants& constants = {});

struct ThreatScore {
    double energy = 0.0;
    double score = 0.0;
    ThreatBand band = ThreatBand::Low;
    std::array<double, 2> theta{};

    bool operator==(const ThreatScore&) const = default;
};

// Maps a ground-state energy onto the 0..10 scale:
//   score = clamp(-E_min * 10 / energy_scale, 0, 10)
// (multiplied before dividing so exact band boundaries survive rounding).
ThreatScore threat_score(double e_min, const ScoringConstants& constants = {});

// minimize + threat_score in one step; theta is filled from the optimizer.
ThreatScore score_weights(const ThreatWeights& w,
                          const OptimizerConfig& optimizer = {},
                          const ScoringConstants& constants = {});

// Builds Hamiltonian weights for one finding of the profiled class.
// cross_path_present: a finding of the opposite attack path shares the file.
ThreatWeights weights_for(const AlgorithmProfile& profile, bool cross_path_present,
                          const ScoringConstants& constants = {});

// Minimal view of a scored finding for repository aggregation.
struct RepoFinding {
    bool production = false;
    double score = 0.0;
};

// Max score over production findings; with no production findings the max
// overall is damped by 0.6; an empty list scores 0.
double repo_score(std::span<const RepoFinding> findings);

}  // namespace pqcaudit
