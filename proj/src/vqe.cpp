#include "pqcaudit/vqe.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace pqcaudit {

namespace {

constexpr double kPi = std::numbers::pi;

// Plain Nelder-Mead on a 2-D surface. Reflection/expansion/contraction
// coefficients are the textbook values; good enough because callers restart
// from every corner of the box anyway.
MinimizeResult nelder_mead_2d(const std::function<double(double, double)>& f,
                              std::array<double, 2> start, double step,
                              const OptimizerConfig& config) {
    struct Vertex {
        std::array<double, 2> x{};
        double value = 0.0;
    };

    int evaluations = 0;
    auto eval = [&](const std::array<double, 2>& x) {
        ++evaluations;
        return f(x[0], x[1]);
    };

    std::array<Vertex, 3> simplex{{
        {start, 0.0},
        {{start[0] + step, start[1]}, 0.0},
        {{start[0], start[1] + step}, 0.0},
    }};
    for (auto& v : simplex) v.value = eval(v.x);

    auto order = [&] {
        std::sort(simplex.begin(), simplex.end(),
                  [](const Vertex& a, const Vertex& b) { return a.value < b.value; });
    };
    order();

    for (int iter = 0; iter < config.max_iterations; ++iter) {
        if (simplex[2].value - simplex[0].value < config.tolerance) break;

        const std::array<double, 2> centroid{
            0.5 * (simplex[0].x[0] + simplex[1].x[0]),
            0.5 * (simplex[0].x[1] + simplex[1].x[1]),
        };
        auto blend = [&](double coeff) {
            return std::array<double, 2>{
                centroid[0] + coeff * (simplex[2].x[0] - centroid[0]),
                centroid[1] + coeff * (simplex[2].x[1] - centroid[1]),
            };
        };

        const std::array<double, 2> reflected = blend(-1.0);
        const double reflected_value = eval(reflected);
        if (reflected_value < simplex[0].value) {
            const std::array<double, 2> expanded = blend(-2.0);
            const double expanded_value = eval(expanded);
            if (expanded_value < reflected_value) {
                simplex[2] = {expanded, expanded_value};
            } else {
                simplex[2] = {reflected, reflected_value};
            }
        } else if (reflected_value < simplex[1].value) {
            simplex[2] = {reflected, reflected_value};
        } else {
            const std::array<double, 2> contracted = blend(0.5);
            const double contracted_value = eval(contracted);
            if (contracted_value < simplex[2].value) {
                simplex[2] = {contracted, contracted_value};
            } else {
                // Shrink towards the best vertex.
                for (int i = 1; i < 3; ++i) {
                    simplex[static_cast<std::size_t>(i)].x = {
                        0.5 * (simplex[0].x[0] + simplex[static_cast<std::size_t>(i)].x[0]),
                        0.5 * (simplex[0].x[1] + simplex[static_cast<std::size_t>(i)].x[1]),
                    };
                    simplex[static_cast<std::size_t>(i)].value =
                        eval(simplex[static_cast<std::size_t>(i)].x);
                }
            }
        }
        order();
    }

    return {simplex[0].x, simplex[0].value, evaluations};
}

}  // namespace

double Statevector2Q::norm_squared() const {
    double total = 0.0;
    for (const auto& a : amplitudes) total += std::norm(a);
    return total;
}

Statevector2Q prepare_ry_product(double theta0, double theta1) {
    const double c0 = std::cos(theta0 / 2.0);
    const double s0 = std::sin(theta0 / 2.0);
    const double c1 = std::cos(theta1 / 2.0);
    const double s1 = std::sin(theta1 / 2.0);
    Statevector2Q state;
    state.amplitudes = {
        std::complex<double>(c0 * c1, 0.0),  // |00>
        std::complex<double>(c0 * s1, 0.0),  // |01>
        std::complex<double>(s0 * c1, 0.0),  // |10>
        std::complex<double>(s0 * s1, 0.0),  // |11>
    };
    return state;
}

std::array<double, 4> hamiltonian_energies(const ThreatWeights& w) {
    // Z eigenvalues: |0> -> +1, |1> -> -1.
    return {
        -w.shor - w.grover + w.interaction,  // E00
        -w.shor + w.grover - w.interaction,  // E01
        +w.shor - w.grover - w.interaction,  // E10
        +w.shor + w.grover + w.interaction,  // E11
    };
}

double expectation(const ThreatWeights& w, double theta0, double theta1) {
    const Statevector2Q state = prepare_ry_product(theta0, theta1);
    const std::array<double, 4> energies = hamiltonian_energies(w);
    double value = 0.0;
    for (std::size_t i = 0; i < energies.size(); ++i) {
        value += std::norm(state.amplitudes[i]) * energies[i];
    }
    return value;
}

double expectation_closed_form(const ThreatWeights& w, double theta0, double theta1) {
    const double c0 = std::cos(theta0);
    const double c1 = std::cos(theta1);
    return -w.shor * c0 - w.grover * c1 + w.interaction * c0 * c1;
}

MinimizeResult minimize(const ThreatWeights& w, const OptimizerConfig& config) {
    if (config.max_iterations < 1) {
        throw std::invalid_argument("minimize: max_iterations must be >= 1");
    }
    if (!(config.tolerance > 0.0)) {
        throw std::invalid_argument("minimize: tolerance must be > 0");
    }

    auto surface = [&](double t0, double t1) { return expectation(w, t0, t1); };

    constexpr std::array<std::array<double, 2>, 4> corners{{
        {0.0, 0.0}, {0.0, kPi}, {kPi, 0.0}, {kPi, kPi},
    }};

    MinimizeResult best;
    best.energy = std::numeric_limits<double>::infinity();
    int total_evaluations = 0;

    for (const auto& corner : corners) {
        const double corner_energy = surface(corner[0], corner[1]);
        ++total_evaluations;
        if (corner_energy < best.energy) best = {corner, corner_energy, 0};

        MinimizeResult local = nelder_mead_2d(surface, corner, 0.5, config);
        total_evaluations += local.evaluations;
        if (local.energy < best.energy) best = local;
    }
    best.evaluations = total_evaluations;

    // The surface is bilinear in (cos t0, cos t1), so its minimum over the box
    // is attained at one of the probed corners; failing this means the
    // optimizer regressed, not that the surface is hard.
    const std::array<double, 4> energies = hamiltonian_energies(w);
    const double brute = *std::min_element(energies.begin(), energies.end());
    if (best.energy > brute + 1e-6) {
        throw std::runtime_error("minimize: did not reach the diagonal minimum (best " +
                                 std::to_string(best.energy) + " vs " +
                                 std::to_string(brute) + ")");
    }
    return best;
}

std::string_view to_string(ThreatBand band) {
    switch (band) {
        case ThreatBand::Critical: return "CRITICAL";
        case ThreatBand::High: return "HIGH";
        case ThreatBand::Medium: return "MEDIUM";
        case ThreatBand::Low: return "LOW";
    }
    return "UNKNOWN";
}

std::optional<ThreatBand> threat_band_from_string(std::string_view name) {
    if (name == "CRITICAL") return ThreatBand::Critical;
    if (name == "HIGH") return ThreatBand::High;
    if (name == "MEDIUM") return ThreatBand::Medium;
    if (name == "LOW") return ThreatBand::Low;
    return std::nullopt;
}

ThreatBand band_for(double score, const ScoringConstants& constants) {
    if (score >= constants.critical_threshold) return ThreatBand::Critical;
    if (score >= constants.high_threshold) return ThreatBand::High;
    if (score >= constants.medium_threshold) return ThreatBand::Medium;
    return ThreatBand::Low;
}

ThreatScore threat_score(double e_min, const ScoringConstants& constants) {
    ThreatScore result;
    result.energy = e_min;
    result.score = std::clamp(-e_min * 10.0 / constants.energy_scale, 0.0, 10.0);
    result.band = band_for(result.score, constants);
    return result;
}

ThreatScore score_weights(const ThreatWeights& w, const OptimizerConfig& optimizer,
                          const ScoringConstants& constants) {
    const MinimizeResult minimum = minimize(w, optimizer);
    ThreatScore result = threat_score(minimum.energy, constants);
    result.theta = minimum.theta;
    return result;
}

ThreatWeights weights_for(const AlgorithmProfile& profile, bool cross_path_present,
                          const ScoringConstants& constants) {
    ThreatWeights w;
    switch (profile.path) {
        case AttackPath::Shor: {
            if (profile.qubit_estimate <= 0) {
                throw std::invalid_argument("weights_for: Shor profile without a qubit estimate");
            }
            const double demand_ratio =
                constants.reference_qubits / static_cast<double>(profile.qubit_estimate);
            w.shor = constants.shor_weight_cap * std::min(1.0, demand_ratio);
            break;
        }
        case AttackPath::Grover: {
            const double reduction =
                static_cast<double>(profile.classical_security_bits -
                                    profile.quantum_security_bits);
            w.grover = std::min(constants.grover_weight_cap,
                                reduction / kReferenceReductionBits);
            if (profile.break_class == BreakClass::AlreadyBroken) {
                w.grover = std::max(w.grover, kSevereGroverFloor);
            }
            break;
        }
        case AttackPath::KeyExposure:
            w.grover = kSevereGroverFloor;
            break;
    }
    w.interaction = cross_path_present ? -constants.interaction_magnitude : 0.0;
    return w;
}

double repo_score(std::span<const RepoFinding> findings) {
    if (findings.empty()) return 0.0;
    double max_production = -1.0;
    double max_overall = 0.0;
    for (const RepoFinding& f : findings) {
        max_overall = std::max(max_overall, f.score);
        if (f.production) max_production = std::max(max_production, f.score);
    }
    if (max_production >= 0.0) return max_production;
    return 0.6 * max_overall;
}

}  // namespace pqcaudit
