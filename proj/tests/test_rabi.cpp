#include <doctest.h>

#include <cmath>

#include "thermowork/errors.hpp"
#include "thermowork/protocol.hpp"
#include "thermowork/rabi.hpp"

using namespace thermowork;
using qmath::Operator;
using rabi::RabiConfig;
using thermo::Temperature;

namespace {

RabiConfig config_at(double g, std::size_t cutoff = 40) {
    RabiConfig c;
    c.g_over_omega = g;
    c.fock_cutoff = cutoff;
    return c;
}

}  // namespace

TEST_CASE("ladder operator matrix elements") {
    const Operator adag = rabi::annihilation(5).adjoint();
    CHECK(adag(1, 0) == qmath::Complex(1.0));
    CHECK(std::abs(adag(2, 1) - std::sqrt(2.0)) <= 1e-15);
    const Operator n = rabi::number(5);
    CHECK(n(3, 3).real() == 3.0);
    const Operator a = rabi::annihilation(5);
    CHECK((adag * a - n).max_abs() <= 1e-14);
}

TEST_CASE("uncoupled Rabi Hamiltonian") {
    const auto h = rabi::build_rabi_hamiltonian(config_at(0.0, 8));
    CHECK(h.h_i.max_abs() == 0.0);
    CHECK(h.space.d_a() == 2);
    CHECK(h.space.d_b() == 8);
    CHECK(h.h_a(0, 0).real() == 0.5);
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(rabi::build_rabi_hamiltonian(config_at(-0.1)), std::invalid_argument);
    CHECK_THROWS_AS(rabi::build_rabi_hamiltonian(config_at(0.1, 1)), std::invalid_argument);
}

TEST_CASE("second-order ground energy shift") {
    const auto spec = qmath::eig_hermitian(rabi::build_rabi_hamiltonian(config_at(0.1)).total());
    CHECK(std::abs(spec.eigenvalues(0) - (-0.5 - 0.01 / 2.0)) <= 5e-5);
}

TEST_CASE("evaluate_point at zero coupling") {
    const rabi::RabiPoint p = rabi::evaluate_point(config_at(0.0, 16));
    CHECK(p.work == 0.0);
    CHECK_FALSE(p.efficiency.has_value());
    CHECK(p.ground_energy == doctest::Approx(-0.5));
}

TEST_CASE("evaluate_point at weak coupling agrees with perturbation theory") {
    const rabi::RabiPoint p = rabi::evaluate_point(config_at(0.01, 16));
    const auto est = rabi::perturbative_oracle(0.01);
    CHECK(std::abs(p.work - est.work) <= 0.01 * est.work);
    REQUIRE(p.efficiency.has_value());
    CHECK(std::abs(*p.efficiency - 0.5) <= 0.005);
    CHECK(*p.efficiency > 0.5);
}

TEST_CASE("perturbative oracle") {
    CHECK(rabi::perturbative_oracle(0.0).work == 0.0);
    CHECK(rabi::perturbative_oracle(0.0).efficiency == 0.5);
    CHECK(rabi::perturbative_oracle(0.02).work == doctest::Approx(2e-4).epsilon(1e-12));
    const double w = rabi::evaluate_point(config_at(0.05, 16)).work;
    CHECK(std::abs(w - rabi::perturbative_oracle(0.05).work) <= 0.03 * rabi::perturbative_oracle(0.05).work);
}

TEST_CASE("RabiPoint invariants across couplings") {
    double previous_e0 = -0.5;
    for (double g = 0.0; g <= 2.0 + 1e-12; g += 0.125) {
        const rabi::RabiPoint p = rabi::auto_converge(config_at(g, 16));
        CAPTURE(g);
        CHECK(p.ground_energy <= -0.5 + 1e-12);
        CHECK(p.ground_energy <= previous_e0 + 1e-10);
        previous_e0 = p.ground_energy;
        CHECK(std::abs(p.work - (0.5 * (1.0 + p.sz_mean) + p.n_mean)) <= 1e-10);
        CHECK(std::abs(p.work - (p.ground_energy + 0.5 - p.hi_mean)) <= 1e-9);
        if (g > 0) {
            CHECK(p.hi_mean < 0.0);
            CHECK(p.work > 1e-12);
            REQUIRE(p.efficiency.has_value());
            CHECK(*p.efficiency > 0.5);
            CHECK(*p.efficiency < 1.0);
        } else {
            CHECK(std::abs(p.work) <= 1e-12);
        }
    }
}

TEST_CASE("ground state has definite parity") {
    for (const double g : {0.3, 1.0, 1.7}) {
        const auto h = rabi::build_rabi_hamiltonian(config_at(g, 64));
        const auto ground = thermo::gibbs_state(h.total(), Temperature::zero());
        const Operator sx = qmath::tensor(rabi::sigma_x(), Operator::identity(64));
        const Operator a = rabi::annihilation(64);
        const Operator quad = qmath::tensor(Operator::identity(2), a + a.adjoint());
        CHECK(std::abs(qmath::expectation(sx, ground.state)) <= 1e-9);
        CHECK(std::abs(qmath::expectation(quad, ground.state)) <= 1e-9);
    }
}

TEST_CASE("closed form and general protocol agree at zero temperature") {
    for (const double g : {0.1, 0.5, 1.0, 1.5}) {
        const RabiConfig c = config_at(g, 64);
        const rabi::RabiPoint p = rabi::evaluate_point(c);
        const auto h = rabi::build_rabi_hamiltonian(c);
        const auto r = protocol::run_protocol(
            protocol::ProtocolInput::make(h.h_a, h.h_b, h.h_i, Temperature::zero()));
        CHECK(std::abs(p.work - r.work) <= 1e-9);
        CHECK(std::abs(p.report.bound - r.bound) <= 1e-9);
        CHECK(std::abs(p.report.hi_t2) <= 1e-15);
    }
}

TEST_CASE("auto_converge") {
    SUBCASE("moderate coupling matches a high fixed cutoff") {
        const rabi::RabiPoint conv = rabi::auto_converge(config_at(0.5, 16));
        const rabi::RabiPoint ref = rabi::evaluate_point(config_at(0.5, 200));
        CHECK(std::abs(conv.work - ref.work) <= 1e-8);
        REQUIRE(conv.efficiency.has_value());
        CHECK(std::abs(*conv.efficiency - *ref.efficiency) <= 1e-8);
    }
    SUBCASE("zero coupling converges at the first doubling") {
        const rabi::RabiPoint p = rabi::auto_converge(config_at(0.0, 16));
        CHECK(p.converged_cutoff == 32);
        CHECK(p.work == 0.0);
    }
    SUBCASE("deep strong coupling needs a large cutoff") {
        const rabi::RabiPoint p = rabi::auto_converge(config_at(2.0, 16));
        CHECK(p.converged_cutoff >= 64);
    }
    SUBCASE("the ceiling is enforced") {
        RabiConfig c = config_at(2.0, 600);
        CHECK_THROWS_AS(rabi::auto_converge(c), ConvergenceError);
    }
}

TEST_CASE("evaluate_point refuses a truncated oscillator") {
    CHECK_THROWS_AS(rabi::evaluate_point(config_at(2.0, 16)), ConvergenceError);
}

TEST_CASE("positive temperature goes through the general protocol") {
    RabiConfig c = config_at(0.5, 32);
    c.temperature = Temperature::of(0.5);
    const rabi::RabiPoint p = rabi::evaluate_point(c);
    const auto h = rabi::build_rabi_hamiltonian(c);
    const auto r = protocol::run_protocol(
        protocol::ProtocolInput::make(h.h_a, h.h_b, h.h_i, c.temperature));
    CHECK(p.work == r.work);
    CHECK(p.report.mi_term > 0.0);
    CHECK(std::abs(p.work - (p.report.delta_f_a + p.report.delta_f_b + p.report.mi_term)) <= 1e-10);
    CHECK(p.work <= p.report.bound + 1e-9);
}
