#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "xxz/model.hpp"
#include "xxz/report.hpp"

namespace xxz {

// One point of the spectrum in T-Q form: N Bethe roots, the boundary
// constant c, and the per-root residual diagnostics (|residual|/scale).
struct TQSolution {
    enum class Source { ed_fit, newton, external };

    std::vector<Complex> roots;
    Complex c_value;
    std::vector<double> bae_residuals;
    Source source = Source::external;
};

Complex a_func(Complex u, const ModelParams& p);
Complex d_func(Complex u, const ModelParams& p);
Complex abar_func(Complex u, const ModelParams& p);
Complex c_const(const ModelParams& p);
Complex q_func(Complex u, std::span<const Complex> roots, Complex eta);

// Derivatives used by the Newton refinement of the Bethe equations.
Complex a_func_deriv(Complex u, const ModelParams& p);
Complex d_func_deriv(Complex u, const ModelParams& p);
Complex abar_func_deriv(Complex u, const ModelParams& p);
Complex q_func_deriv(Complex u, std::span<const Complex> roots, Complex eta);
// d/d roots[k] of Q(u).
Complex q_func_root_deriv(Complex u, std::span<const Complex> roots, Complex eta, std::size_t k);

// The additive term 2c sinh(2u) sinh(2u+2eta) Abar(u) Abar(-u-eta) and its
// u-derivative.
Complex tq_inhomogeneous_term(Complex u, const ModelParams& p);
Complex tq_inhomogeneous_term_deriv(Complex u, const ModelParams& p);

// Eigenvalue from the three-term T-Q relation; u must stay away from the
// zeros of Q.
Complex lambda_tq(Complex u, const TQSolution& tq, const ModelParams& p);

struct BaeResidual {
    Complex value;  // a(l)Q(l-eta) + d(l)Q(l+eta) + inhomogeneous term
    double scale;   // max magnitude of the three summands
};

std::vector<BaeResidual> bae_residual(std::span<const Complex> roots, const ModelParams& p);

// Fails with a degenerate-case error when |c| is below the cutoff; the
// inhomogeneous pipeline is undefined there.
void require_nondegenerate_c(const ModelParams& p, double cutoff = 1e-10);

// Residuals for the transfer-matrix identity family: the pair products at
// the inhomogeneity points, crossing, i*pi periodicity, the two scalar
// values, and the leading asymptotic coefficient probed at Re u = +-20.
CheckReport verify_operator_identities(const ModelParams& p, uint64_t seed,
                                       double tol_identity = 1e-9, double tol_asym = 1e-6);

} // namespace xxz
