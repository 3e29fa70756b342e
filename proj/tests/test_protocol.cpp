#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "test_support.hpp"
#include "thermowork/errors.hpp"
#include "thermowork/protocol.hpp"
#include "thermowork/rabi.hpp"

using namespace thermowork;
using qmath::Operator;
using protocol::ProtocolInput;
using protocol::ProtocolReport;
using thermo::Temperature;

namespace {

ProtocolInput two_qubit_input(double g, Temperature t) {
    const Operator h = 0.5 * rabi::sigma_z();
    return ProtocolInput::make(h, h, g * qmath::tensor(rabi::sigma_x(), rabi::sigma_x()), t);
}

void check_report_invariants(const ProtocolReport& r) {
    CHECK(std::abs(r.work - (r.delta_f_a + r.delta_f_b + r.mi_term)) <= 1e-10);
    CHECK(std::abs(r.bound - (r.hi_t2 - r.hi_t3)) <= 1e-12);
    CHECK(r.work <= r.bound + 1e-9);
    CHECK(r.efficiency.has_value() == (std::abs(r.bound) > 1e-12));
    if (r.efficiency) {
        CHECK(*r.efficiency <= 1.0 + 1e-9);
        CHECK(std::abs(*r.efficiency - r.work / r.bound) <= 1e-15);
    }
}

}  // namespace

TEST_CASE("no interaction means no work") {
    std::mt19937_64 rng(1);
    for (const double t : {0.0, 1.0}) {
        const auto in = ProtocolInput::make(test::random_hermitian(2, rng),
                                            test::random_hermitian(3, rng), Operator::zero(6),
                                            Temperature::of(t));
        const ProtocolReport r = protocol::run_protocol(in);
        CHECK(std::abs(r.work) <= 1e-10);
        CHECK(r.bound == 0.0);
        CHECK_FALSE(r.efficiency.has_value());
        CHECK(std::abs(protocol::verify_bound(in).margin) <= 1e-10);
    }
}

TEST_CASE("two-qubit report matches the brute-force oracle") {
    const ProtocolReport r = protocol::run_protocol(two_qubit_input(0.5, Temperature::of(1.0)));
    const oracle::ProtocolValues o = oracle::two_qubit(0.5, 1.0);

    // values frozen from oracle::two_qubit(0.5, 1.0), cross-checked against scipy.linalg.expm
    CHECK(std::abs(o.work - 0.09712847224022636) <= 1e-14);
    CHECK(std::abs(o.bound - 0.20066794291455281) <= 1e-14);

    CHECK(std::abs(r.work - o.work) <= 1e-10);
    CHECK(std::abs(r.work_local_only - o.work_local_only) <= 1e-10);
    CHECK(std::abs(r.bound - o.bound) <= 1e-10);
    REQUIRE(r.efficiency.has_value());
    CHECK(std::abs(*r.efficiency - o.efficiency) <= 1e-10);
    CHECK(std::abs(r.delta_f_a - o.delta_f_a) <= 1e-10);
    CHECK(std::abs(r.delta_f_b - o.delta_f_b) <= 1e-10);
    CHECK(std::abs(r.mi_term - o.mi_term) <= 1e-10);
    CHECK(std::abs(r.hi_t2 - o.hi_t2) <= 1e-10);
    CHECK(std::abs(r.hi_t3 - o.hi_t3) <= 1e-10);
    CHECK(std::abs(r.ground_energy + std::sqrt(1.25)) <= 1e-12);
    check_report_invariants(r);
}

TEST_CASE("Rabi input at small coupling has efficiency one half") {
    rabi::RabiConfig config;
    config.g_over_omega = 0.01;
    config.fock_cutoff = 16;
    const auto h = rabi::build_rabi_hamiltonian(config);
    const auto r = protocol::run_protocol(ProtocolInput::make(h.h_a, h.h_b, h.h_i, Temperature::zero()));
    REQUIRE(r.efficiency.has_value());
    CHECK(std::abs(*r.efficiency - 0.5) <= 1e-3);
}

TEST_CASE("zero temperature drops the mutual-information term exactly") {
    std::mt19937_64 rng(55);
    protocol::AuditConfig cfg;
    cfg.d_a = 2;
    cfg.d_b = 3;
    cfg.temperature = Temperature::zero();
    for (int trial = 0; trial < 50; ++trial) {
        const ProtocolInput in = protocol::random_input(cfg, rng);
        const ProtocolReport r = protocol::run_protocol(in);
        CHECK(r.mi_term == 0.0);
        CHECK(r.work == r.work_local_only);

        const double e0a = qmath::eig_hermitian(in.h_a).eigenvalues(0);
        const double e0b = qmath::eig_hermitian(in.h_b).eigenvalues(0);
        CHECK(std::abs(r.work - (r.ground_energy - r.hi_t3 - e0a - e0b)) <= 1e-10);
        check_report_invariants(r);
    }
}

TEST_CASE("randomized bound audits") {
    struct Case {
        std::size_t da, db;
        double t;
    };
    for (const Case c : {Case{2, 2, 0.2}, Case{2, 2, 1.0}, Case{2, 2, 5.0}, Case{3, 3, 0.2},
                         Case{3, 3, 1.0}, Case{3, 3, 5.0}}) {
        protocol::AuditConfig cfg;
        cfg.count = 500;
        cfg.d_a = c.da;
        cfg.d_b = c.db;
        cfg.temperature = Temperature::of(c.t);
        cfg.seed = 1000 + c.da * 10 + static_cast<std::uint64_t>(c.t * 10);
        const auto summary = protocol::run_audit(cfg);
        CAPTURE(c.da);
        CAPTURE(c.t);
        CHECK(summary.violations.empty());
        CHECK(summary.min_margin >= -1e-9);
        CHECK(summary.max_efficiency <= 1.0 + 1e-9);
        CHECK(summary.max_decomposition_error <= 1e-10);
    }
}

TEST_CASE("audit inputs respect the interaction norm cap") {
    std::mt19937_64 rng(9);
    protocol::AuditConfig cfg;
    for (int trial = 0; trial < 100; ++trial) {
        const auto in = protocol::random_input(cfg, rng);
        const auto ev = qmath::eig_hermitian(in.h_i).eigenvalues;
        CHECK(std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1))) <= 2.0 + 1e-12);
    }
    protocol::AuditConfig zero_count;
    zero_count.count = 0;
    CHECK_THROWS_AS(protocol::run_audit(zero_count), std::invalid_argument);
}

TEST_CASE("audit is reproducible for a fixed seed") {
    protocol::AuditConfig cfg;
    cfg.count = 40;
    cfg.seed = 77;
    const auto a = protocol::run_audit(cfg);
    const auto b = protocol::run_audit(cfg);
    CHECK(a.min_margin == b.min_margin);
    CHECK(a.median_margin == b.median_margin);
}

TEST_CASE("swapping the subsystems leaves the report unchanged") {
    std::mt19937_64 rng(202);
    protocol::AuditConfig cfg;
    cfg.d_a = 2;
    cfg.d_b = 3;
    for (const double t : {0.0, 0.3, 2.0}) {
        cfg.temperature = Temperature::of(t);
        for (int trial = 0; trial < 10; ++trial) {
            const ProtocolInput in = protocol::random_input(cfg, rng);
            const ProtocolReport r = protocol::run_protocol(in);
            const ProtocolReport s = protocol::run_protocol(protocol::swap_subsystems(in));
            CHECK(std::abs(r.work - s.work) <= 1e-10);
            CHECK(std::abs(r.bound - s.bound) <= 1e-10);
            CHECK(std::abs(r.delta_f_a - s.delta_f_b) <= 1e-10);
            REQUIRE(r.efficiency.has_value() == s.efficiency.has_value());
            if (r.efficiency) CHECK(std::abs(*r.efficiency - *s.efficiency) <= 1e-10);
        }
    }
}

TEST_CASE("protocol input validation") {
    const Operator h = 0.5 * rabi::sigma_z();
    CHECK_THROWS_AS(ProtocolInput::make(h, h, Operator::zero(3), Temperature::zero()),
                    DimensionError);
    qmath::Matrix bad = qmath::Matrix::Zero(4, 4);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(ProtocolInput::make(h, h, Operator(bad), Temperature::zero()),
                    NotHermitianError);
}
