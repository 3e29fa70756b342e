#include "thermowork/rabi.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "thermowork/errors.hpp"

namespace thermowork::rabi {

namespace {

constexpr double kEfficiencyFloor = protocol::kBoundFloor;

using qmath::Matrix;

double top_level_population(const Operator& rho, const BipartiteSpace& space) {
    const std::size_t top = space.d_b() - 1;
    double p = 0.0;
    for (std::size_t q = 0; q < space.d_a(); ++q) {
        const auto i = static_cast<Eigen::Index>(space.index(q, top));
        p += rho.matrix()(i, i).real();
    }
    return p;
}

bool same_efficiency(const std::optional<double>& a, const std::optional<double>& b, double tol) {
    if (a.has_value() != b.has_value()) {
        return false;
    }
    return !a || std::abs(*a - *b) <= tol;
}

}  // namespace

void RabiConfig::validate() const {
    if (!(g_over_omega >= 0.0) || !std::isfinite(g_over_omega)) {
        throw std::invalid_argument("g/omega must be finite and non-negative");
    }
    if (fock_cutoff < 2) {
        throw std::invalid_argument("Fock cutoff must be at least 2");
    }
    if (!(convergence_tol > 0.0)) {
        throw std::invalid_argument("convergence tolerance must be positive");
    }
}

Operator RabiHamiltonian::total() const {
    const Operator id_a = Operator::identity(space.d_a());
    const Operator id_b = Operator::identity(space.d_b());
    return qmath::tensor(h_a, id_b) + qmath::tensor(id_a, h_b) + h_i;
}

Operator sigma_z() {
    // basis (e, g): σ_z|e⟩ = +|e⟩
    Matrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return Operator(std::move(m));
}

Operator sigma_x() {
    Matrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return Operator(std::move(m));
}

Operator annihilation(std::size_t cutoff) {
    const auto n = static_cast<Eigen::Index>(cutoff);
    Matrix a = Matrix::Zero(n, n);
    for (Eigen::Index k = 1; k < n; ++k) {
        a(k - 1, k) = std::sqrt(static_cast<double>(k));
    }
    return Operator(std::move(a));
}

Operator number(std::size_t cutoff) {
    return Operator::diagonal(qmath::RealVector::LinSpaced(static_cast<Eigen::Index>(cutoff), 0.0,
                                                           static_cast<double>(cutoff - 1)));
}

RabiHamiltonian build_rabi_hamiltonian(const RabiConfig& config) {
    config.validate();
    const std::size_t n = config.fock_cutoff;
    const Operator a = annihilation(n);
    const Operator quadrature = a + a.adjoint();
    return {0.5 * sigma_z(), number(n),
            config.g_over_omega * qmath::tensor(sigma_x(), quadrature), BipartiteSpace(2, n)};
}

RabiPoint evaluate_at_cutoff(const RabiConfig& config) {
    const RabiHamiltonian h = build_rabi_hamiltonian(config);
    const Operator sz = qmath::tensor(sigma_z(), Operator::identity(config.fock_cutoff));
    const Operator n_hat = qmath::tensor(Operator::identity(2), h.h_b);

    RabiPoint p;
    p.config = config;
    p.converged_cutoff = config.fock_cutoff;

    Operator rho_t3;
    if (config.temperature.is_zero()) {
        const thermo::ThermalEnsemble ground = thermo::gibbs_state(h.total(), config.temperature);
        rho_t3 = ground.state;
        p.ground_energy = ground.ground_energy;
        p.sz_mean = qmath::expectation(sz, rho_t3);
        p.n_mean = qmath::expectation(n_hat, rho_t3);
        p.hi_mean = qmath::expectation(h.h_i, rho_t3);

        // Closed forms valid at T = 0, where the local ground states are |g⟩ and |0⟩.
        p.work = 0.5 * (1.0 + p.sz_mean) + p.n_mean;
        if (std::abs(p.hi_mean) > kEfficiencyFloor) {
            p.efficiency = -p.work / p.hi_mean;
        }

        const Operator rho_t2 = qmath::tensor(thermo::gibbs_state(h.h_a, config.temperature).state,
                                              thermo::gibbs_state(h.h_b, config.temperature).state);
        protocol::ProtocolReport& r = p.report;
        r.delta_f_a = 0.5 * (1.0 + p.sz_mean);
        r.delta_f_b = p.n_mean;
        r.mi_term = 0.0;
        r.work = p.work;
        r.work_local_only = p.work;
        r.hi_t2 = qmath::expectation(h.h_i, rho_t2);
        r.hi_t3 = p.hi_mean;
        r.bound = r.hi_t2 - r.hi_t3;
        r.efficiency = p.efficiency;
        r.ground_energy = p.ground_energy;
    } else {
        const auto input = protocol::ProtocolInput::make(h.h_a, h.h_b, h.h_i, config.temperature);
        protocol::ProtocolRun run = protocol::run_protocol_with_state(input);
        rho_t3 = std::move(run.rho_t3);
        p.report = run.report;
        p.ground_energy = run.report.ground_energy;
        p.sz_mean = qmath::expectation(sz, rho_t3);
        p.n_mean = qmath::expectation(n_hat, rho_t3);
        p.hi_mean = run.report.hi_t3;
        p.work = run.report.work;
        p.efficiency = run.report.efficiency;
    }
    p.top_level_population = top_level_population(rho_t3, h.space);
    return p;
}

RabiPoint evaluate_point(const RabiConfig& config) {
    RabiPoint p = evaluate_at_cutoff(config);
    if (p.top_level_population > config.convergence_tol) {
        throw ConvergenceError("Fock cutoff " + std::to_string(config.fock_cutoff) +
                               " too small at g/omega = " + std::to_string(config.g_over_omega) +
                               ": top level holds population " +
                               std::to_string(p.top_level_population) +
                               "; use a larger cutoff or auto convergence");
    }
    return p;
}

RabiPoint auto_converge(const RabiConfig& config) {
    config.validate();
    if (2 * config.fock_cutoff > kMaxFockCutoff) {
        throw ConvergenceError("starting Fock cutoff " + std::to_string(config.fock_cutoff) +
                               " leaves no room to double below the ceiling " +
                               std::to_string(kMaxFockCutoff));
    }
    RabiConfig current = config;
    RabiPoint previous = evaluate_at_cutoff(current);
    while (2 * current.fock_cutoff <= kMaxFockCutoff) {
        current.fock_cutoff *= 2;
        RabiPoint next = evaluate_at_cutoff(current);
        if (std::abs(next.work - previous.work) <= config.convergence_tol &&
            same_efficiency(next.efficiency, previous.efficiency, config.convergence_tol)) {
            next.converged_cutoff = current.fock_cutoff;
            return next;
        }
        previous = std::move(next);
    }
    throw ConvergenceError("no convergence at g/omega = " + std::to_string(config.g_over_omega) +
                           " below the Fock cutoff ceiling " + std::to_string(kMaxFockCutoff));
}

PerturbativeEstimate perturbative_oracle(double g_over_omega) {
    return {0.5 * g_over_omega * g_over_omega, 0.5};
}

}  // namespace thermowork::rabi
