#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace thermowork::qmath {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTol = 1e-10;

// Dense complex square matrix on a finite Hilbert space. Immutable once built.
class Operator {
public:
    Operator() = default;
    explicit Operator(Matrix entries);

    static Operator zero(std::size_t dim);
    static Operator identity(std::size_t dim);
    static Operator diagonal(const RealVector& values);

    std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
    const Matrix& matrix() const { return entries_; }
    Complex operator()(std::size_t row, std::size_t col) const {
        return entries_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }

    double max_abs() const;
    Complex trace() const { return entries_.trace(); }
    Operator adjoint() const { return Operator(entries_.adjoint()); }

    // ‖M − M†‖_max ≤ 1e-10 · (1 + ‖M‖_max)
    bool is_hermitian(double rel_tol = kHermitianTol) const;

    friend Operator operator+(const Operator& a, const Operator& b);
    friend Operator operator-(const Operator& a, const Operator& b);
    friend Operator operator*(const Operator& a, const Operator& b);
    friend Operator operator*(double s, const Operator& a);

private:
    Matrix entries_;
};

enum class Subsystem { A, B };

// Composite space A ⊗ B. Basis index i = i_A · d_B + i_B (A is the slow factor).
class BipartiteSpace {
public:
    BipartiteSpace(std::size_t d_a, std::size_t d_b);

    std::size_t d_a() const { return d_a_; }
    std::size_t d_b() const { return d_b_; }
    std::size_t dim() const { return d_a_ * d_b_; }
    std::size_t dim_of(Subsystem s) const { return s == Subsystem::A ? d_a_ : d_b_; }
    std::size_t index(std::size_t i_a, std::size_t i_b) const { return i_a * d_b_ + i_b; }

    BipartiteSpace swapped() const { return {d_b_, d_a_}; }

private:
    std::size_t d_a_;
    std::size_t d_b_;
};

struct SpectralDecomposition {
    RealVector eigenvalues;  // ascending
    Matrix eigenvectors;     // columns
};

Operator tensor(const Operator& a, const Operator& b);

Operator partial_trace(const Operator& rho, const BipartiteSpace& space, Subsystem keep);

// Throws NotHermitianError for non-Hermitian input.
SpectralDecomposition eig_hermitian(const Operator& h);

// Tr(obs·rho); throws NumericalError when the imaginary residue exceeds 1e-10.
double expectation(const Operator& obs, const Operator& rho);

// Unitary that maps |i_A, i_B⟩ on (d_A, d_B) to |i_B, i_A⟩ on (d_B, d_A).
Operator swap_operator(const BipartiteSpace& space);

void require_hermitian(const Operator& h, const char* what);
void require_same_dim(const Operator& a, const Operator& b, const char* what);

}  // namespace thermowork::qmath
