#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "thermowork/qmath.hpp"
#include "thermowork/thermo.hpp"

namespace thermowork::protocol {

using qmath::BipartiteSpace;
using qmath::Operator;
using thermo::Temperature;

// Margin tolerance for work ≤ bound, and for the efficiency cap η ≤ 1.
inline constexpr double kBoundTol = 1e-9;
// Below this |bound| the efficiency is undefined and reported as absent.
inline constexpr double kBoundFloor = 1e-12;

struct ProtocolInput {
    Operator h_a;
    Operator h_b;
    Operator h_i;
    Temperature temperature;
    BipartiteSpace space;

    // Validates Hermiticity and that the dimensions match the bipartition.
    static ProtocolInput make(Operator h_a, Operator h_b, Operator h_i, Temperature t);
};

struct ProtocolReport {
    double work = 0.0;
    double work_local_only = 0.0;
    double bound = 0.0;
    std::optional<double> efficiency;
    double delta_f_a = 0.0;
    double delta_f_b = 0.0;
    double mi_term = 0.0;  // k_B T · S(A:B); exactly 0 at T = 0
    double hi_t2 = 0.0;
    double hi_t3 = 0.0;
    double ground_energy = 0.0;  // lowest eigenvalue of H_A + H_B + H_I
};

// One run of the thermalization cycle: local Gibbs product (interaction quenched on),
// global thermalization, interaction quenched off.
ProtocolReport run_protocol(const ProtocolInput& input);

struct ProtocolRun {
    ProtocolReport report;
    Operator rho_t3;  // global thermal state reached before the interaction is removed
};

ProtocolRun run_protocol_with_state(const ProtocolInput& input);

struct BoundCheck {
    bool holds = true;
    double margin = 0.0;  // bound − work
};

BoundCheck verify_bound(const ProtocolInput& input);
BoundCheck verify_bound(const ProtocolReport& report);

// Conjugates H_I by the subsystem swap and exchanges H_A and H_B.
ProtocolInput swap_subsystems(const ProtocolInput& input);

// Portable uniform draw in [0, 1); std distributions are not bit-stable across libraries.
double uniform01(std::mt19937_64& rng);

// Entries with real and imaginary parts uniform in [−1, 1], then Hermitian-symmetrized.
Operator random_hermitian(std::size_t dim, std::mt19937_64& rng);

struct AuditConfig {
    std::size_t count = 500;
    std::size_t d_a = 2;
    std::size_t d_b = 2;
    Temperature temperature = Temperature::of(1.0);
    std::uint64_t seed = 0;
    double max_interaction_norm = 2.0;  // spectral norm cap on H_I, units ħω
};

struct AuditViolation {
    std::size_t sample = 0;
    double margin = 0.0;
};

struct AuditSummary {
    std::size_t count = 0;
    double min_margin = 0.0;
    double median_margin = 0.0;
    double max_efficiency = 0.0;
    double max_decomposition_error = 0.0;  // |work − (ΔF_A + ΔF_B + mi_term)|
    std::vector<AuditViolation> violations;
};

ProtocolInput random_input(const AuditConfig& config, std::mt19937_64& rng);

// Seeded randomized check of work ≤ bound and η ≤ 1.
AuditSummary run_audit(const AuditConfig& config);

}  // namespace thermowork::protocol
