#pragma once

#include "thermowork/qmath.hpp"

namespace thermowork::thermo {

using qmath::BipartiteSpace;
using qmath::Operator;

// Temperatures below this (in units of ħω/k_B) take the exact T = 0 branch.
inline constexpr double kZeroTemperatureCutoff = 1e-8;

// k_B T in units of ħω. Zero is represented exactly, not as a small number.
class Temperature {
public:
    constexpr Temperature() = default;

    // Throws std::invalid_argument for negative or non-finite values.
    static Temperature of(double kbt);
    static constexpr Temperature zero() { return {}; }

    constexpr double value() const { return value_; }
    constexpr bool is_zero() const { return value_ == 0.0; }

private:
    constexpr explicit Temperature(double v) : value_(v) {}
    double value_ = 0.0;
};

struct ThermalEnsemble {
    Operator hamiltonian;
    Temperature temperature;
    Operator state;
    double ground_energy = 0.0;
};

// e^{-H/T}/Z for T > 0; normalized projector on the ground eigenspace for T = 0.
ThermalEnsemble gibbs_state(const Operator& h, Temperature t);

// −Tr ρ ln ρ in nats.
double von_neumann_entropy(const Operator& rho);

// Tr(Hρ) − T S(ρ). The entropy term is skipped entirely at T = 0.
double free_energy(const Operator& rho, const Operator& h, Temperature t);

// F(ρ,H) − F(ρ^th,H), clipped at 0 within 1e-10; NumericalError below that.
double delta_f(const Operator& rho, const Operator& h, Temperature t);
double delta_f(const Operator& rho, const ThermalEnsemble& reference);

// S(ρ_A) + S(ρ_B) − S(ρ_AB), clipped at 0 within 1e-10.
double mutual_information(const Operator& rho_s, const BipartiteSpace& space);

// Throws InvalidStateError unless rho is Hermitian with unit trace (1e-10).
void require_density_matrix(const Operator& rho);

}  // namespace thermowork::thermo
