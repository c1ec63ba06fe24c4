#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace helecell {

/// Dense matrix with column-major storage; columns are contiguous.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : m_(Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols), fill)) {}
    explicit DenseMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {}

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return static_cast<std::size_t>(m_.rows()); }
    std::size_t cols() const noexcept { return static_cast<std::size_t>(m_.cols()); }

    double& operator()(std::size_t r, std::size_t c) { return m_(idx(r), idx(c)); }
    double operator()(std::size_t r, std::size_t c) const { return m_(idx(r), idx(c)); }

    std::span<double> column(std::size_t c) { return {m_.col(idx(c)).data(), rows()}; }
    std::span<const double> column(std::size_t c) const { return {m_.col(idx(c)).data(), rows()}; }

    std::vector<double> multiply(std::span<const double> x) const;
    /// max_r sum_c |a_rc|
    double norm_inf() const;
    double max_abs() const;

    const Eigen::MatrixXd& eigen() const noexcept { return m_; }

private:
    static Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }
    Eigen::MatrixXd m_;
};

/// LU factors of P A = L U with unit lower-triangular L.
class LuFactors {
public:
    explicit LuFactors(const DenseMatrix& a) : lu_(a.eigen()) {}

    std::size_t size() const noexcept { return static_cast<std::size_t>(lu_.matrixLU().rows()); }
    DenseMatrix lower() const;
    DenseMatrix upper() const;
    /// Row i of P A is row permutation()[i] of A.
    std::vector<std::size_t> permutation() const;

    const Eigen::PartialPivLU<Eigen::MatrixXd>& eigen() const noexcept { return lu_; }

private:
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

/// Partial (row) pivoting. Throws SingularMatrixError when a pivot falls below
/// 1e-13 times the largest entry of the input, DimensionMismatchError for a
/// non-square input and Error for non-finite entries.
LuFactors lu_factor(const DenseMatrix& m);

/// Throws DimensionMismatchError when rhs does not match the system size.
std::vector<double> solve(const LuFactors& factors, std::span<const double> rhs);

}  // namespace helecell
