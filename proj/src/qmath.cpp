#include "thermowork/qmath.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "thermowork/errors.hpp"

namespace thermowork::qmath {

namespace {

constexpr double kImagTol = 1e-10;

}  // namespace

Operator::Operator(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) {
        throw DimensionError("operator must be square, got " + std::to_string(entries_.rows()) +
                             "x" + std::to_string(entries_.cols()));
    }
    if (entries_.rows() == 0) {
        throw DimensionError("operator dimension must be positive");
    }
}

Operator Operator::zero(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return Operator(Matrix::Zero(n, n));
}

Operator Operator::identity(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return Operator(Matrix::Identity(n, n));
}

Operator Operator::diagonal(const RealVector& values) {
    return Operator(Matrix(values.cast<Complex>().asDiagonal()));
}

double Operator::max_abs() const { return entries_.cwiseAbs().maxCoeff(); }

bool Operator::is_hermitian(double rel_tol) const {
    const double asym = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    return asym <= rel_tol * (1.0 + max_abs());
}

Operator operator+(const Operator& a, const Operator& b) {
    require_same_dim(a, b, "operator sum");
    return Operator(a.entries_ + b.entries_);
}

Operator operator-(const Operator& a, const Operator& b) {
    require_same_dim(a, b, "operator difference");
    return Operator(a.entries_ - b.entries_);
}

Operator operator*(const Operator& a, const Operator& b) {
    require_same_dim(a, b, "operator product");
    return Operator(a.entries_ * b.entries_);
}

Operator operator*(double s, const Operator& a) { return Operator(s * a.entries_); }

BipartiteSpace::BipartiteSpace(std::size_t d_a, std::size_t d_b) : d_a_(d_a), d_b_(d_b) {
    if (d_a == 0 || d_b == 0) {
        throw DimensionError("subsystem dimensions must be positive");
    }
}

void require_hermitian(const Operator& h, const char* what) {
    if (!h.is_hermitian()) {
        throw NotHermitianError(std::string(what) + " is not Hermitian");
    }
}

void require_same_dim(const Operator& a, const Operator& b, const char* what) {
    if (a.dim() != b.dim()) {
        throw DimensionError(std::string(what) + ": dimension mismatch " +
                             std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }
}

Operator tensor(const Operator& a, const Operator& b) {
    // Eigen's Kronecker product places a's index in the outer (row-block)
    // position, which is exactly i = i_a · d_b + i_b.
    return Operator(Matrix(Eigen::kroneckerProduct(a.matrix(), b.matrix())));
}

Operator partial_trace(const Operator& rho, const BipartiteSpace& space, Subsystem keep) {
    if (rho.dim() != space.dim()) {
        throw DimensionError("partial_trace: operator of dimension " + std::to_string(rho.dim()) +
                             " is inconsistent with bipartition " + std::to_string(space.d_a()) +
                             "x" + std::to_string(space.d_b()));
    }
    const auto da = static_cast<Eigen::Index>(space.d_a());
    const auto db = static_cast<Eigen::Index>(space.d_b());
    const Matrix& m = rho.matrix();

    if (keep == Subsystem::A) {
        Matrix out = Matrix::Zero(da, da);
        for (Eigen::Index i = 0; i < da; ++i) {
            for (Eigen::Index k = 0; k < da; ++k) {
                out(i, k) = m.block(i * db, k * db, db, db).trace();
            }
        }
        return Operator(std::move(out));
    }
    Matrix out = Matrix::Zero(db, db);
    for (Eigen::Index a = 0; a < da; ++a) {
        out += m.block(a * db, a * db, db, db);
    }
    return Operator(std::move(out));
}

SpectralDecomposition eig_hermitian(const Operator& h) {
    require_hermitian(h, "eig_hermitian input");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix(), Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("Hermitian eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

double expectation(const Operator& obs, const Operator& rho) {
    require_same_dim(obs, rho, "expectation");
    // Tr(O ρ) = Σ_ij O_ij ρ_ji
    const Complex value = obs.matrix().cwiseProduct(rho.matrix().transpose()).sum();
    if (std::abs(value.imag()) > kImagTol * (1.0 + std::abs(value.real()))) {
        throw NumericalError("expectation value has imaginary part " +
                             std::to_string(value.imag()) +
                             "; observable or state is not Hermitian");
    }
    return value.real();
}

Operator swap_operator(const BipartiteSpace& space) {
    const auto n = static_cast<Eigen::Index>(space.dim());
    const BipartiteSpace target = space.swapped();
    Matrix p = Matrix::Zero(n, n);
    for (std::size_t ia = 0; ia < space.d_a(); ++ia) {
        for (std::size_t ib = 0; ib < space.d_b(); ++ib) {
            p(static_cast<Eigen::Index>(target.index(ib, ia)),
              static_cast<Eigen::Index>(space.index(ia, ib))) = 1.0;
        }
    }
    return Operator(std::move(p));
}

}  // namespace thermowork::qmath
