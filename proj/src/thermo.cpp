#include "thermowork/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "thermowork/errors.hpp"

namespace thermowork::thermo {

namespace {

constexpr double kClipWindow = 1e-12;    // eigenvalues in [−1e-12, 0) count as 0
constexpr double kTraceTol = 1e-10;
constexpr double kNegativityTol = 1e-10;
constexpr double kDegeneracyRelTol = 1e-9;

using qmath::Matrix;
using qmath::RealVector;

Operator from_spectrum(const Matrix& vectors, const RealVector& weights) {
    Matrix rho = vectors * weights.cast<qmath::Complex>().asDiagonal() * vectors.adjoint();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return Operator(std::move(rho));
}

double clip_non_negative(double value, const char* what) {
    if (value < -kNegativityTol) {
        throw NumericalError(std::string(what) + " is negative (" + std::to_string(value) + ")");
    }
    return std::max(value, 0.0);
}

}  // namespace

Temperature Temperature::of(double kbt) {
    if (!std::isfinite(kbt) || kbt < 0.0) {
        throw std::invalid_argument("temperature must be finite and non-negative");
    }
    if (kbt < kZeroTemperatureCutoff) {
        return zero();
    }
    return Temperature(kbt);
}

ThermalEnsemble gibbs_state(const Operator& h, Temperature t) {
    const qmath::SpectralDecomposition spec = qmath::eig_hermitian(h);
    const RealVector& e = spec.eigenvalues;
    const double e0 = e(0);
    const Eigen::Index n = e.size();

    RealVector weights = RealVector::Zero(n);
    if (t.is_zero()) {
        const double window = kDegeneracyRelTol * std::max(1.0, std::abs(e0));
        Eigen::Index degeneracy = 0;
        while (degeneracy < n && e(degeneracy) - e0 <= window) {
            ++degeneracy;
        }
        weights.head(degeneracy).setConstant(1.0 / static_cast<double>(degeneracy));
    } else {
        // Shift by the minimum so the ground weight is exactly 1 and nothing underflows
        // to an all-zero vector.
        for (Eigen::Index i = 0; i < n; ++i) {
            weights(i) = std::exp(-(e(i) - e0) / t.value());
        }
        weights /= weights.sum();
    }
    return {h, t, from_spectrum(spec.eigenvectors, weights), e0};
}

void require_density_matrix(const Operator& rho) {
    if (!rho.is_hermitian()) {
        throw InvalidStateError("density matrix is not Hermitian");
    }
    const double tr = rho.trace().real();
    if (std::abs(tr - 1.0) > kTraceTol) {
        throw InvalidStateError("density matrix trace is " + std::to_string(tr) + ", expected 1");
    }
}

double von_neumann_entropy(const Operator& rho) {
    require_density_matrix(rho);
    const RealVector lambda = qmath::eig_hermitian(rho).eigenvalues;
    double s = 0.0;
    for (const double l : lambda) {
        if (l < -kClipWindow) {
            throw InvalidStateError("density matrix has negative eigenvalue " + std::to_string(l));
        }
        if (l > 0.0) {
            s -= l * std::log(l);
        }
    }
    return std::max(s, 0.0);
}

double free_energy(const Operator& rho, const Operator& h, Temperature t) {
    qmath::require_same_dim(rho, h, "free_energy");
    const double energy = qmath::expectation(h, rho);
    if (t.is_zero()) {
        return energy;
    }
    return energy - t.value() * von_neumann_entropy(rho);
}

double delta_f(const Operator& rho, const ThermalEnsemble& reference) {
    const double f = free_energy(rho, reference.hamiltonian, reference.temperature);
    const double f_th = free_energy(reference.state, reference.hamiltonian, reference.temperature);
    return clip_non_negative(f - f_th, "free-energy excess");
}

double delta_f(const Operator& rho, const Operator& h, Temperature t) {
    qmath::require_same_dim(rho, h, "delta_f");
    return delta_f(rho, gibbs_state(h, t));
}

double mutual_information(const Operator& rho_s, const BipartiteSpace& space) {
    const Operator rho_a = qmath::partial_trace(rho_s, space, qmath::Subsystem::A);
    const Operator rho_b = qmath::partial_trace(rho_s, space, qmath::Subsystem::B);
    const double mi =
        von_neumann_entropy(rho_a) + von_neumann_entropy(rho_b) - von_neumann_entropy(rho_s);
    return clip_non_negative(mi, "mutual information");
}

}  // namespace thermowork::thermo
