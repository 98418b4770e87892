#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "xxz/gauge.hpp"

namespace xxz {

// Right vectors in the 2^N-dimensional quantum space.
struct StateVector {
    std::vector<Complex> amplitudes;

    std::size_t dim() const { return amplitudes.size(); }
    double norm() const { return vec_norm(amplitudes); }
};

// Left vectors; they pair with StateVector by the unconjugated bilinear
// form, not by Hermitian conjugation.
struct CoStateVector {
    std::vector<Complex> amplitudes;

    std::size_t dim() const { return amplitudes.size(); }
    double norm() const { return vec_norm(amplitudes); }
};

StateVector apply(const ComplexMatrix& op, const StateVector& v);
CoStateVector apply_from_right(const CoStateVector& w, const ComplexMatrix& op);
Complex pair(const CoStateVector& w, const StateVector& v);

using LambdaEval = std::function<Complex(Complex)>;

// |alpha+m> as the site-wise product of x-type gauge columns.
StateVector right_vacuum(Complex alpha, Complex m, const ModelParams& p);

// <alpha+m| with its closed normalization prefactor.
CoStateVector left_vacuum(Complex alpha, Complex m, const ModelParams& p);

// <alpha,m; theta_{p_1}...theta_{p_n}| built by D-bar applications at the
// negated inhomogeneity points; subset holds 1-based ascending site indices.
CoStateVector left_basis_state(const GaugeIndex& g, const std::vector<int>& subset,
                               const ModelParams& p);

// Prefactor of the C-bar action on the left vacuum.
Complex g0_prefactor(Complex u, Complex m, Complex alpha, const ModelParams& p);

CheckReport verify_left_actions(const ModelParams& p, uint64_t seed, double tol = 1e-9);
CheckReport verify_right_actions(const ModelParams& p, uint64_t seed, double tol = 1e-9,
                                 double tol_expansion = 1e-10);

// Bethe state: ladder of gauged C-bar operators at the selected left gauge
// applied to the reference state fixed by the right gauge sum.
StateVector bethe_state(const TQSolution& tq, const ModelParams& p);

// Reference state at the selected right gauge.
StateVector reference_state(const ModelParams& p);

// Scalar products of an eigenvector against the left basis: product formula
// for every subset plus the one-step recursion.
CheckReport scalar_product_check(const StateVector& psi, const LambdaEval& lambda,
                                 const ModelParams& p, double tol = 1e-8,
                                 double tol_recursion = 1e-9);

// Reference-state conditions for every subset; when roots are supplied the
// overall ladder coefficient is checked to be finite and nonzero.
CheckReport reference_conditions_check(const ModelParams& p,
                                       const std::vector<Complex>* roots = nullptr,
                                       double tol = 1e-8);

double eigen_residual(const StateVector& state, const LambdaEval& lambda, const ModelParams& p,
                      std::span<const Complex> probes);

// 1 - |<a,b>| / (||a|| ||b||) under the Hermitian inner product.
double collinearity_defect(const StateVector& a, const StateVector& b);

} // namespace xxz
