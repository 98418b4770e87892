#pragma once

#include <array>
#include <vector>

#include "xxz/numerics.hpp"

namespace xxz {

// Physical data of the open chain: crossing parameter eta, six boundary
// parameters, site count and the per-site inhomogeneities theta_j.
struct ModelParams {
    Complex eta;
    Complex alpha_minus, beta_minus, theta_minus;
    Complex alpha_plus, beta_plus, theta_plus;
    int n_sites = 1;
    std::vector<Complex> inhomogeneities;

    std::size_t dim() const { return std::size_t(1) << n_sites; }

    // Structural guards: sinh(eta) and the boundary denominators of the
    // Hamiltonian must stay away from zero; throws on violation.
    void validate() const;

    // Inhomogeneity genericity: theta_j pairwise distinct and distinct under
    // theta_i -> -theta_j and theta_i -> theta_j +- eta. Required by the
    // spectral pipeline and the basis-state suites, not by the homogeneous
    // constructions, so it is a predicate rather than a constructor guard.
    bool generic_inhomogeneities(double tol = 1e-8) const;
    void require_generic_inhomogeneities(double tol = 1e-8) const;
};

// 2x2 array of quantum-space operators over the auxiliary space: one-row,
// hatted, double-row and gauged monodromies all live here.
struct AuxMonodromy {
    std::array<std::array<ComplexMatrix, 2>, 2> block;

    std::size_t dim() const { return block[0][0].rows(); }
};

ComplexMatrix r_matrix(Complex u, Complex eta);
ComplexMatrix r_matrix_deriv(Complex u, Complex eta);

ComplexMatrix k_minus(Complex u, const ModelParams& p);
ComplexMatrix k_minus_deriv(Complex u, const ModelParams& p);
ComplexMatrix k_plus(Complex u, const ModelParams& p);
ComplexMatrix k_plus_deriv(Complex u, const ModelParams& p);

// T(u) (hatted=false) or That(u) (hatted=true) as aux-space blocks.
AuxMonodromy one_row_monodromy(Complex u, const ModelParams& p, bool hatted);

// U(u) = T(u) K^-(u) That(u).
AuxMonodromy double_row_monodromy(Complex u, const ModelParams& p);

// t(u) = tr_aux( K^+(u) U(u) ).
ComplexMatrix transfer_matrix(Complex u, const ModelParams& p);

// Analytic t'(u) at u = 0 by product-rule differentiation of every factor.
ComplexMatrix transfer_matrix_deriv_at_zero(const ModelParams& p);

// Direct Pauli-matrix construction of the Hamiltonian.
ComplexMatrix hamiltonian_direct(const ModelParams& p);

// H = sinh(eta) t'(0) t(0)^-1 - (N cosh(eta) + tanh(eta) sinh(eta)) Id,
// valid at zero inhomogeneities where t(0) is a scalar matrix.
ComplexMatrix hamiltonian_from_transfer(const ModelParams& p);

// --- tensor-space helpers -------------------------------------------------
// Factors are two-dimensional and big-endian: factor 0 owns the most
// significant bit of the basis index.

ComplexMatrix pauli(char which); // 'x', 'y', 'z'

ComplexMatrix embed_one_site(const ComplexMatrix& op, int factor, int n_factors);
ComplexMatrix embed_two_site(const ComplexMatrix& op4, int first, int second, int n_factors);

// m <- Embed(op4 on factors (first, second)) * m, without forming the embedding.
void apply_two_site_left(const ComplexMatrix& op4, int first, int second,
                         int n_factors, ComplexMatrix& m);
// m <- m * Embed(op4 on factors (first, second)).
void apply_two_site_right(const ComplexMatrix& op4, int first, int second,
                          int n_factors, ComplexMatrix& m);
void apply_one_site_left(const ComplexMatrix& op, int factor, int n_factors, ComplexMatrix& m);

// Partial trace over factor 0 of a (2 * 2^rest)-dimensional matrix.
ComplexMatrix trace_out_first_factor(const ComplexMatrix& m);

} // namespace xxz
