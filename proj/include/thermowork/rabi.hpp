#pragma once

#include <cstddef>
#include <optional>

#include "thermowork/protocol.hpp"
#include "thermowork/qmath.hpp"
#include "thermowork/thermo.hpp"

namespace thermowork::rabi {

using qmath::BipartiteSpace;
using qmath::Operator;
using thermo::Temperature;

inline constexpr std::size_t kMaxFockCutoff = 1024;

// Resonant Rabi model, energies in units of ħω. Oscillator levels 0..fock_cutoff−1.
struct RabiConfig {
    double g_over_omega = 0.0;
    std::size_t fock_cutoff = 16;
    Temperature temperature = Temperature::zero();
    double convergence_tol = 1e-8;

    // Throws std::invalid_argument when g < 0, cutoff < 2 or tol <= 0.
    void validate() const;
};

struct RabiHamiltonian {
    Operator h_a;  // σ_z / 2 on the qubit, basis (e, g)
    Operator h_b;  // n̂ on the truncated oscillator
    Operator h_i;  // g σ_x ⊗ (a† + a)
    BipartiteSpace space;

    Operator total() const;
};

struct RabiPoint {
    RabiConfig config;
    double ground_energy = 0.0;  // ν₀ / ω
    double sz_mean = 0.0;
    double n_mean = 0.0;
    double hi_mean = 0.0;  // g ⟨σ_x (a† + a)⟩ at t3
    double work = 0.0;
    std::optional<double> efficiency;
    std::size_t converged_cutoff = 0;
    double top_level_population = 0.0;  // weight on the highest kept Fock level
    protocol::ProtocolReport report;     // same run in the general protocol vocabulary
};

Operator sigma_z();
Operator sigma_x();
Operator annihilation(std::size_t cutoff);  // a|n⟩ = √n |n−1⟩
Operator number(std::size_t cutoff);

RabiHamiltonian build_rabi_hamiltonian(const RabiConfig& config);

// Evaluates at exactly config.fock_cutoff without judging truncation quality.
RabiPoint evaluate_at_cutoff(const RabiConfig& config);

// As evaluate_at_cutoff, but throws ConvergenceError when the highest Fock level
// carries more than convergence_tol of the population.
RabiPoint evaluate_point(const RabiConfig& config);

// Doubles the cutoff from config.fock_cutoff until work and efficiency change by at most
// convergence_tol, up to kMaxFockCutoff.
RabiPoint auto_converge(const RabiConfig& config);

struct PerturbativeEstimate {
    double work = 0.0;
    double efficiency = 0.5;
};

// Second-order small-coupling estimate: W ≈ g²/(2ω), η ≈ 1/2.
PerturbativeEstimate perturbative_oracle(double g_over_omega);

}  // namespace thermowork::rabi
