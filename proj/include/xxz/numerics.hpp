#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "xxz/errors.hpp"

namespace xxz {

using Complex = std::complex<double>;

// Dense complex matrix, row-major. The carrier for every operator-valued
// quantity in the library, from 2x2 boundary matrices to 2^N-dimensional
// transfer matrices.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols, Complex fill = Complex(0.0, 0.0));

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<Complex>& data() noexcept { return data_; }
    const std::vector<Complex>& data() const noexcept { return data_; }

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex s);

    ComplexMatrix transposed() const;
    ComplexMatrix adjoint() const;

    Complex trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    bool all_finite() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex s);
std::vector<Complex> operator*(const ComplexMatrix& m, const std::vector<Complex>& v);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

double vec_norm(std::span<const Complex> v);
double vec_max_abs(std::span<const Complex> v);

// Shared knobs for the dense kernels. All thresholds are relative to a
// natural scale (matrix norm, coefficient magnitude).
struct NumericSettings {
    double eig_residual_rel = 1e-8;   // converged decomposition must satisfy this
    double eig_polish_rel = 1e-10;    // inverse-iteration polish trigger
    double cluster_rel = 1e-7;        // eigenvalue cluster flagging
    double rank_rel = 1e-12;          // least-squares rank tolerance
    int max_sweeps_per_eigenvalue = 64;
};

struct EigenDecomposition {
    std::vector<Complex> values;             // sorted by (Re, Im)
    ComplexMatrix vectors;                   // columns are unit right eigenvectors
    std::vector<double> residuals;           // ||A v_i - lambda_i v_i||
    std::vector<std::pair<int, int>> clusters; // index pairs closer than cluster_rel * ||A||
};

// Full eigendecomposition of a general complex matrix: balance, Householder
// Hessenberg reduction, shifted QR with Wilkinson shifts, eigenvectors by
// back-substitution on the Schur factor plus inverse-iteration polish.
EigenDecomposition eig_general(const ComplexMatrix& a, const NumericSettings& settings = {});

// Roots of sum_k coeffs[k] x^k (ascending degree) via the companion matrix.
std::vector<Complex> poly_roots(std::span<const Complex> coeffs, const NumericSettings& settings = {});

// Expand prod_j (x - roots[j]) into ascending coefficients (monic).
std::vector<Complex> poly_from_roots(std::span<const Complex> roots);

Complex poly_eval(std::span<const Complex> coeffs, Complex x);

struct LstsqResult {
    std::vector<Complex> x;
    double residual_norm = 0.0;
    double condition_estimate = 0.0;
};

// Minimizer of ||a x - b|| by Householder QR; requires rows >= cols.
LstsqResult lstsq(const ComplexMatrix& a, std::span<const Complex> b, const NumericSettings& settings = {});

struct LuFactorization {
    ComplexMatrix lu;
    std::vector<int> pivots;
    int sign = 1;
};

LuFactorization lu_factor(const ComplexMatrix& a);
std::vector<Complex> lu_solve(const LuFactorization& f, std::span<const Complex> b);
Complex lu_det(const LuFactorization& f);

} // namespace xxz
