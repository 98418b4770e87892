#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "xxz/bethe.hpp"
#include "xxz/functional.hpp"

namespace xxz {

// One exactly diagonalized transfer-matrix eigenpair: the eigenvector, its
// eigenvalue at the fixed matching probes, the anchor component used for
// eigenvalue evaluation, and the fitted T-Q data once available.
struct SpectrumEntry {
    StateVector eigenvector;
    std::vector<Complex> lambda_probe_values;
    int anchor_index = 0;
    std::optional<TQSolution> tq;
};

// Fixed generic probe points.
std::array<Complex, 2> ed_probe_points();
std::array<Complex, 5> lambda_match_probes();

// Diagonalize t(u0), certify the eigenvectors against their own anchored
// eigenvalues, and sort by the eigenvalue at u0.
std::vector<SpectrumEntry> spectrum_ed(const ModelParams& p);

// Anchored-ratio eigenvalue of one entry at arbitrary u.
Complex lambda_ed(const SpectrumEntry& entry, Complex u, const ModelParams& p);
LambdaEval lambda_ed_eval(const SpectrumEntry& entry, const ModelParams& p);
LambdaEval lambda_tq_eval(const TQSolution& tq, const ModelParams& p);

// Bethe roots for one eigenvalue: linear fit of the Q-polynomial in the
// variable cosh(2u+eta), companion-matrix root extraction, Newton polish and
// canonicalization.
TQSolution fit_q_from_lambda(const SpectrumEntry& entry, const ModelParams& p);

struct NewtonOutcome {
    std::vector<Complex> roots;
    bool converged = false;
    double residual = 0.0; // relative to the summand scale
    int iterations = 0;
};

NewtonOutcome newton_refine_detailed(std::vector<Complex> roots, const ModelParams& p,
                                     bool fd_jacobian = false);
// Throws a refine-failure error on divergence.
std::vector<Complex> newton_refine(std::vector<Complex> roots, const ModelParams& p,
                                   bool fd_jacobian = false);

// Representative of the orbit {l, -l-eta} + i pi shifts with Im in
// (-pi/2, pi/2] and Re(2l+eta) >= 0, sorted by (Re, Im).
std::vector<Complex> canonicalize_roots(std::vector<Complex> roots, Complex eta);

struct SolveFailure {
    int entry_index = -1;
    std::string message;
};

struct SolveResult {
    std::vector<SpectrumEntry> entries; // tq filled on success
    std::vector<SolveFailure> failures;
};

// Full certified pipeline at desk scale: ED spectrum, per-entry fits,
// eigenvalue round trip and duplicate detection.
SolveResult solve_all(const ModelParams& p);

// Bethe-state certification of a solved spectrum: eigen residual of every
// constructed state, eigenvalue matching against the ED entries, and the
// collinearity defect against the matched eigenvector.
struct BetheCertification {
    std::vector<double> eigen_residuals;
    std::vector<double> collinearity_defects;
    std::vector<int> matched_entry;
    bool bijection = false;
};

BetheCertification certify_bethe_states(const ModelParams& p, const SolveResult& solved,
                                        double ambiguity_tol = 1e-6);

} // namespace xxz
