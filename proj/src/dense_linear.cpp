#include "helecell/dense_linear.hpp"

#include <cmath>
#include <string>

#include "helecell/errors.hpp"

namespace helecell {

DenseMatrix DenseMatrix::identity(std::size_t n) {
    return DenseMatrix(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
}

std::vector<double> DenseMatrix::multiply(std::span<const double> x) const {
    if (x.size() != cols()) {
        throw DimensionMismatchError("matrix has " + std::to_string(cols()) + " columns, vector has " +
                                     std::to_string(x.size()) + " entries");
    }
    const Eigen::VectorXd y = m_ * Eigen::Map<const Eigen::VectorXd>(x.data(), idx(x.size()));
    return {y.data(), y.data() + y.size()};
}

double DenseMatrix::norm_inf() const { return m_.size() == 0 ? 0.0 : m_.cwiseAbs().rowwise().sum().maxCoeff(); }

double DenseMatrix::max_abs() const { return m_.size() == 0 ? 0.0 : m_.cwiseAbs().maxCoeff(); }

DenseMatrix LuFactors::lower() const {
    Eigen::MatrixXd l = lu_.matrixLU().triangularView<Eigen::UnitLower>();
    return DenseMatrix(std::move(l));
}

DenseMatrix LuFactors::upper() const {
    Eigen::MatrixXd u = lu_.matrixLU().triangularView<Eigen::Upper>();
    return DenseMatrix(std::move(u));
}

std::vector<std::size_t> LuFactors::permutation() const {
    // Eigen stores P with (P A)(i) = A(p^-1(i)); invert to get source rows.
    const auto& p = lu_.permutationP().indices();
    std::vector<std::size_t> rows(static_cast<std::size_t>(p.size()));
    for (Eigen::Index src = 0; src < p.size(); ++src) {
        rows[static_cast<std::size_t>(p[src])] = static_cast<std::size_t>(src);
    }
    return rows;
}

LuFactors lu_factor(const DenseMatrix& m) {
    const std::size_t n = m.rows();
    if (n == 0 || m.cols() != n) {
        throw DimensionMismatchError("lu_factor needs a non-empty square matrix, got " + std::to_string(m.rows()) +
                                     "x" + std::to_string(m.cols()));
    }
    if (!m.eigen().allFinite()) {
        throw Error("lu_factor: non-finite matrix entry");
    }
    const double tiny = 1e-13 * m.max_abs();
    LuFactors f(m);
    const auto& lu = f.eigen().matrixLU();
    for (Eigen::Index k = 0; k < lu.rows(); ++k) {
        const double pivot = std::abs(lu(k, k));
        if (!(pivot >= tiny) || pivot == 0.0) {
            throw SingularMatrixError("pivot below 1e-13 * max|entry|", static_cast<std::size_t>(k));
        }
    }
    return f;
}

std::vector<double> solve(const LuFactors& factors, std::span<const double> rhs) {
    const std::size_t n = factors.size();
    if (rhs.size() != n) {
        throw DimensionMismatchError("rhs has " + std::to_string(rhs.size()) + " entries, system is " +
                                     std::to_string(n) + "x" + std::to_string(n));
    }
    const Eigen::VectorXd x =
        factors.eigen().solve(Eigen::Map<const Eigen::VectorXd>(rhs.data(), static_cast<Eigen::Index>(n)));
    return {x.data(), x.data() + x.size()};
}

}  // namespace helecell
