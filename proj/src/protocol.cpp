#include "thermowork/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "thermowork/errors.hpp"

namespace thermowork::protocol {

using qmath::Subsystem;

ProtocolInput ProtocolInput::make(Operator h_a, Operator h_b, Operator h_i, Temperature t) {
    qmath::require_hermitian(h_a, "H_A");
    qmath::require_hermitian(h_b, "H_B");
    qmath::require_hermitian(h_i, "H_I");
    BipartiteSpace space(h_a.dim(), h_b.dim());
    if (h_i.dim() != space.dim()) {
        throw DimensionError("H_I has dimension " + std::to_string(h_i.dim()) + ", expected " +
                             std::to_string(h_a.dim()) + "*" + std::to_string(h_b.dim()));
    }
    return {std::move(h_a), std::move(h_b), std::move(h_i), t, space};
}

ProtocolRun run_protocol_with_state(const ProtocolInput& in) {
    const Temperature t = in.temperature;
    const Operator id_a = Operator::identity(in.space.d_a());
    const Operator id_b = Operator::identity(in.space.d_b());

    // t1 -> t2: local thermal states, interaction switched on without touching them.
    const thermo::ThermalEnsemble local_a = thermo::gibbs_state(in.h_a, t);
    const thermo::ThermalEnsemble local_b = thermo::gibbs_state(in.h_b, t);
    const Operator rho_t2 = qmath::tensor(local_a.state, local_b.state);

    // t2 -> t3: joint thermalization under the full Hamiltonian.
    const Operator h_s = qmath::tensor(in.h_a, id_b) + qmath::tensor(id_a, in.h_b) + in.h_i;
    const thermo::ThermalEnsemble global = thermo::gibbs_state(h_s, t);
    const Operator& rho_t3 = global.state;

    const Operator rho_a = qmath::partial_trace(rho_t3, in.space, Subsystem::A);
    const Operator rho_b = qmath::partial_trace(rho_t3, in.space, Subsystem::B);

    ProtocolReport r;
    r.delta_f_a = thermo::delta_f(rho_a, local_a);
    r.delta_f_b = thermo::delta_f(rho_b, local_b);
    if (!t.is_zero()) {
        r.mi_term = t.value() * thermo::mutual_information(rho_t3, in.space);
    }
    r.hi_t2 = qmath::expectation(in.h_i, rho_t2);
    r.hi_t3 = qmath::expectation(in.h_i, rho_t3);
    r.ground_energy = global.ground_energy;

    r.work = r.delta_f_a + r.delta_f_b + r.mi_term;
    r.work_local_only = r.delta_f_a + r.delta_f_b;
    r.bound = r.hi_t2 - r.hi_t3;
    if (std::abs(r.bound) > kBoundFloor) {
        r.efficiency = r.work / r.bound;
    }
    return {r, rho_t3};
}

ProtocolReport run_protocol(const ProtocolInput& input) {
    return run_protocol_with_state(input).report;
}

BoundCheck verify_bound(const ProtocolReport& report) {
    const double margin = report.bound - report.work;
    return {margin >= -kBoundTol, margin};
}

BoundCheck verify_bound(const ProtocolInput& input) { return verify_bound(run_protocol(input)); }

ProtocolInput swap_subsystems(const ProtocolInput& in) {
    const Operator p = qmath::swap_operator(in.space);
    Operator h_i = p * in.h_i * p.adjoint();
    return {in.h_b, in.h_a, std::move(h_i), in.temperature, in.space.swapped()};
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Operator random_hermitian(std::size_t dim, std::mt19937_64& rng) {
    const auto n = static_cast<Eigen::Index>(dim);
    qmath::Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double re = 2.0 * uniform01(rng) - 1.0;
            const double im = 2.0 * uniform01(rng) - 1.0;
            m(i, j) = {re, im};
        }
    }
    return Operator(0.5 * (m + m.adjoint()));
}

ProtocolInput random_input(const AuditConfig& config, std::mt19937_64& rng) {
    Operator h_a = random_hermitian(config.d_a, rng);
    Operator h_b = random_hermitian(config.d_b, rng);
    const Operator raw = random_hermitian(config.d_a * config.d_b, rng);
    const auto spectrum = qmath::eig_hermitian(raw).eigenvalues;
    const double norm = std::max(std::abs(spectrum(0)), std::abs(spectrum(spectrum.size() - 1)));
    const double scale = config.max_interaction_norm * (1.0 - uniform01(rng)) / norm;
    return ProtocolInput::make(std::move(h_a), std::move(h_b), scale * raw, config.temperature);
}

AuditSummary run_audit(const AuditConfig& config) {
    if (config.count == 0) {
        throw std::invalid_argument("audit sample count must be at least 1");
    }
    std::mt19937_64 rng(config.seed);
    std::vector<double> margins;
    margins.reserve(config.count);

    AuditSummary summary;
    summary.count = config.count;
    summary.max_efficiency = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < config.count; ++k) {
        const ProtocolReport r = run_protocol(random_input(config, rng));
        const BoundCheck check = verify_bound(r);
        margins.push_back(check.margin);
        const bool efficiency_ok = !r.efficiency || *r.efficiency <= 1.0 + kBoundTol;
        if (!check.holds || !efficiency_ok) {
            summary.violations.push_back({k, check.margin});
        }
        if (r.efficiency) {
            summary.max_efficiency = std::max(summary.max_efficiency, *r.efficiency);
        }
        summary.max_decomposition_error =
            std::max(summary.max_decomposition_error,
                     std::abs(r.work - (r.delta_f_a + r.delta_f_b + r.mi_term)));
    }

    std::sort(margins.begin(), margins.end());
    summary.min_margin = margins.front();
    const std::size_t mid = margins.size() / 2;
    summary.median_margin =
        margins.size() % 2 == 1 ? margins[mid] : 0.5 * (margins[mid - 1] + margins[mid]);
    return summary;
}

}  // namespace thermowork::protocol
