#include "xxz/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace xxz {

namespace {

using std::cosh;
using std::sinh;

constexpr Complex kEdProbe0(0.39, 0.27);
constexpr Complex kEdProbe1(-0.31, 0.53);

double rel_lambda_mismatch(std::span<const Complex> a, std::span<const Complex> b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double scale = std::max({std::abs(a[i]), std::abs(b[i]), 1e-300});
        worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
    }
    return worst;
}

} // namespace

std::array<Complex, 2> ed_probe_points() { return {kEdProbe0, kEdProbe1}; }

std::array<Complex, 5> lambda_match_probes() {
    return {Complex(0.23, 0.11), Complex(-0.41, 0.19), Complex(0.57, -0.23),
            Complex(-0.13, -0.37), Complex(0.71, 0.29)};
}

Complex lambda_ed(const SpectrumEntry& entry, Complex u, const ModelParams& p) {
    const StateVector tv = apply(transfer_matrix(u, p), entry.eigenvector);
    return tv.amplitudes[entry.anchor_index] / entry.eigenvector.amplitudes[entry.anchor_index];
}

LambdaEval lambda_ed_eval(const SpectrumEntry& entry, const ModelParams& p) {
    return [entry, p](Complex u) { return lambda_ed(entry, u, p); };
}

LambdaEval lambda_tq_eval(const TQSolution& tq, const ModelParams& p) {
    return [tq, p](Complex u) { return lambda_tq(u, tq, p); };
}

std::vector<SpectrumEntry> spectrum_ed(const ModelParams& p) {
    p.validate();
    require(p.n_sites <= 8, ErrorKind::size, "spectrum_ed capped at N <= 8");

    const ComplexMatrix t0 = transfer_matrix(kEdProbe0, p);
    const EigenDecomposition ed = eig_general(t0);
    const std::size_t dim = p.dim();

    std::vector<SpectrumEntry> entries(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        SpectrumEntry& e = entries[k];
        e.eigenvector.amplitudes.resize(dim);
        double best = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            e.eigenvector.amplitudes[i] = ed.vectors(i, k);
            if (std::abs(ed.vectors(i, k)) > best) {
                best = std::abs(ed.vectors(i, k));
                e.anchor_index = static_cast<int>(i);
            }
        }
    }

    // Genericity: eigenvalues must stay separated at both probe points.
    for (const Complex& probe : ed_probe_points()) {
        const ComplexMatrix t = transfer_matrix(probe, p);
        std::vector<Complex> values(dim);
        double scale = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
            const StateVector tv = apply(t, entries[k].eigenvector);
            values[k] =
                tv.amplitudes[entries[k].anchor_index] /
                entries[k].eigenvector.amplitudes[entries[k].anchor_index];
            scale = std::max(scale, std::abs(values[k]));
        }
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = i + 1; j < dim; ++j)
                require(std::abs(values[i] - values[j]) > 1e-7 * scale, ErrorKind::non_generic,
                        "transfer-matrix spectrum is degenerate at a probe point; re-draw parameters");
    }

    std::sort(entries.begin(), entries.end(), [&](const SpectrumEntry& a, const SpectrumEntry& b) {
        const Complex la = lambda_ed(a, kEdProbe0, p);
        const Complex lb = lambda_ed(b, kEdProbe0, p);
        if (la.real() != lb.real()) return la.real() < lb.real();
        return la.imag() < lb.imag();
    });

    const auto probes = lambda_match_probes();
    for (auto& e : entries) {
        e.lambda_probe_values.clear();
        for (const Complex& u : probes) e.lambda_probe_values.push_back(lambda_ed(e, u, p));
        const double resid = eigen_residual(e.eigenvector, lambda_ed_eval(e, p), p, probes);
        require(resid < 1e-10, ErrorKind::convergence,
                "diagonalized eigenvector fails its own eigenvalue certification");
    }
    return entries;
}

// ----------------------------------------------------------------------------
// Q-fit
// ----------------------------------------------------------------------------

namespace {

// Q as a polynomial in x = cosh(2u+eta): monic times (2 sinh^2 eta)^-N.
Complex q_from_x_coeffs(std::span<const Complex> coeffs, Complex u, Complex eta) {
    return poly_eval(coeffs, cosh(2.0 * u + eta));
}

// The x-polynomial form must reproduce the product form; checked at seeded
// points before every fit.
void preflight_x_form(const ModelParams& p, uint64_t seed) {
    std::mt19937_64 eng(seed);
    auto uniform = [&](double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(eng() >> 11) * 0x1.0p-53;
    };
    std::vector<Complex> roots;
    for (int j = 0; j < p.n_sites; ++j)
        roots.push_back(Complex(uniform(-0.7, 0.7), uniform(-0.5, 0.5)));
    std::vector<Complex> xs;
    for (const auto& r : roots) xs.push_back(cosh(2.0 * r + p.eta));
    std::vector<Complex> coeffs = poly_from_roots(xs);
    const Complex lead = std::pow(2.0 * sinh(p.eta) * sinh(p.eta), -p.n_sites);
    for (auto& c : coeffs) c *= lead;
    for (int trial = 0; trial < 3; ++trial) {
        const Complex u(uniform(-0.8, 0.8), uniform(-0.6, 0.6));
        const Complex via_x = q_from_x_coeffs(coeffs, u, p.eta);
        const Complex via_prod = q_func(u, roots, p.eta);
        require(std::abs(via_x - via_prod) <= 1e-10 * std::max(std::abs(via_x), std::abs(via_prod)),
                ErrorKind::internal, "x-polynomial form of Q disagrees with the product form");
    }
}

} // namespace

TQSolution fit_q_from_lambda(const SpectrumEntry& entry, const ModelParams& p) {
    p.validate();
    require_nondegenerate_c(p);
    preflight_x_form(p, 0x9e3779b97f4a7c15ull);

    const int n = p.n_sites;
    const int samples = 4 * n + 8;
    const Complex eta = p.eta;
    const Complex q_lead = std::pow(2.0 * sinh(eta) * sinh(eta), -n);

    ComplexMatrix a(samples, n);
    std::vector<Complex> b(samples);
    for (int s = 1; s <= samples; ++s) {
        const Complex u = Complex(0.31 * s, 0.17 * s);
        const Complex lam = lambda_ed(entry, u, p);
        const Complex av = a_func(u, p);
        const Complex dv = d_func(u, p);
        const Complex x = cosh(2.0 * u + eta);
        const Complex xm = cosh(2.0 * u - eta);
        const Complex xp = cosh(2.0 * u + 3.0 * eta);

        std::vector<Complex> row(n);
        Complex xk(1.0, 0.0), xmk(1.0, 0.0), xpk(1.0, 0.0);
        for (int k = 0; k < n; ++k) {
            row[k] = lam * xk - av * xmk - dv * xpk;
            xk *= x;
            xmk *= xm;
            xpk *= xp;
        }
        const Complex head = lam * xk - av * xmk - dv * xpk; // k = n terms
        Complex rhs = tq_inhomogeneous_term(u, p) - q_lead * head;

        double rowscale = std::abs(rhs);
        for (const auto& c : row) rowscale = std::max(rowscale, std::abs(c));
        rowscale = std::max(rowscale, 1e-300);
        for (int k = 0; k < n; ++k) a(s - 1, k) = row[k] / rowscale;
        b[s - 1] = rhs / rowscale;
    }

    const LstsqResult fit = lstsq(a, b);
    require(fit.residual_norm <= 1e-6 * std::max(1.0, vec_norm(b)), ErrorKind::fit_failure,
            "Q-fit least-squares residual is too large; eigenvalue data is inconsistent");

    std::vector<Complex> coeffs = fit.x;
    coeffs.push_back(q_lead);
    std::vector<Complex> xroots = poly_roots(coeffs);

    std::vector<Complex> roots;
    for (const auto& x : xroots) roots.push_back(0.5 * (std::acosh(x) - eta));
    roots = canonicalize_roots(std::move(roots), eta);
    const NewtonOutcome refined = newton_refine_detailed(roots, p);
    require(refined.converged, ErrorKind::refine_failure,
            "Newton refinement of the fitted Bethe roots diverged");
    roots = canonicalize_roots(refined.roots, eta);

    TQSolution tq;
    tq.roots = std::move(roots);
    tq.c_value = c_const(p);
    tq.source = TQSolution::Source::ed_fit;
    for (const auto& r : bae_residual(tq.roots, p))
        tq.bae_residuals.push_back(std::abs(r.value) / std::max(r.scale, 1e-300));
    return tq;
}

// ----------------------------------------------------------------------------
// Newton refinement
// ----------------------------------------------------------------------------

namespace {

struct BaeSystem {
    std::vector<Complex> residual;
    double scale = 0.0;     // max summand magnitude across components
    double max_abs = 0.0;   // max |residual_j|
};

BaeSystem evaluate_bae(std::span<const Complex> roots, const ModelParams& p) {
    BaeSystem out;
    const auto res = bae_residual(roots, p);
    for (const auto& r : res) {
        out.residual.push_back(r.value);
        out.scale = std::max(out.scale, r.scale);
        out.max_abs = std::max(out.max_abs, std::abs(r.value));
    }
    return out;
}

ComplexMatrix bae_jacobian(std::span<const Complex> roots, const ModelParams& p) {
    const std::size_t n = roots.size();
    const Complex eta = p.eta;
    ComplexMatrix jac(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const Complex l = roots[j];
        const Complex av = a_func(l, p);
        const Complex dv = d_func(l, p);
        for (std::size_t k = 0; k < n; ++k) {
            Complex der = av * q_func_root_deriv(l - eta, roots, eta, k) +
                          dv * q_func_root_deriv(l + eta, roots, eta, k);
            if (k == j) {
                der += a_func_deriv(l, p) * q_func(l - eta, roots, eta) +
                       av * q_func_deriv(l - eta, roots, eta);
                der += d_func_deriv(l, p) * q_func(l + eta, roots, eta) +
                       dv * q_func_deriv(l + eta, roots, eta);
                der += tq_inhomogeneous_term_deriv(l, p);
            }
            jac(j, k) = der;
        }
    }
    return jac;
}

ComplexMatrix bae_jacobian_fd(std::span<const Complex> roots, const ModelParams& p) {
    const std::size_t n = roots.size();
    const double h = 1e-7;
    ComplexMatrix jac(n, n);
    std::vector<Complex> work(roots.begin(), roots.end());
    for (std::size_t k = 0; k < n; ++k) {
        work[k] = roots[k] + h;
        const auto plus = evaluate_bae(work, p);
        work[k] = roots[k] - h;
        const auto minus = evaluate_bae(work, p);
        work[k] = roots[k];
        for (std::size_t j = 0; j < n; ++j)
            jac(j, k) = (plus.residual[j] - minus.residual[j]) / (2.0 * h);
    }
    return jac;
}

} // namespace

NewtonOutcome newton_refine_detailed(std::vector<Complex> roots, const ModelParams& p,
                                     bool fd_jacobian) {
    p.validate();
    require(roots.size() == static_cast<std::size_t>(p.n_sites), ErrorKind::precondition,
            "newton_refine expects N roots");

    BaeSystem cur = evaluate_bae(roots, p);
    require(cur.max_abs < 1e-2 * std::max(cur.scale, 1e-300), ErrorKind::precondition,
            "newton_refine requires a starting point with small residuals");

    NewtonOutcome out;
    out.roots = roots;
    out.residual = cur.max_abs / std::max(cur.scale, 1e-300);
    const double target = 1e-10;

    for (int iter = 0; iter < 50; ++iter) {
        if (cur.max_abs <= target * std::max(cur.scale, 1e-300)) {
            out.converged = true;
            break;
        }
        const ComplexMatrix jac =
            fd_jacobian ? bae_jacobian_fd(out.roots, p) : bae_jacobian(out.roots, p);
        std::vector<Complex> neg(cur.residual.size());
        for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -cur.residual[i];
        std::vector<Complex> step;
        try {
            step = lu_solve(lu_factor(jac), neg);
        } catch (const Error&) {
            break; // singular Jacobian: keep the best iterate
        }

        bool improved = false;
        double damping = 1.0;
        for (int half = 0; half < 10; ++half, damping *= 0.5) {
            std::vector<Complex> trial = out.roots;
            for (std::size_t i = 0; i < trial.size(); ++i) trial[i] += damping * step[i];
            BaeSystem cand = evaluate_bae(trial, p);
            if (cand.max_abs < cur.max_abs) {
                out.roots = std::move(trial);
                cur = std::move(cand);
                improved = true;
                break;
            }
        }
        out.iterations = iter + 1;
        if (!improved) break; // line search exhausted without progress
    }
    if (cur.max_abs <= target * std::max(cur.scale, 1e-300)) out.converged = true;
    out.residual = cur.max_abs / std::max(cur.scale, 1e-300);
    return out;
}

std::vector<Complex> newton_refine(std::vector<Complex> roots, const ModelParams& p,
                                   bool fd_jacobian) {
    NewtonOutcome out = newton_refine_detailed(std::move(roots), p, fd_jacobian);
    require(out.converged, ErrorKind::refine_failure,
            "Newton refinement did not reach the target residual (best relative residual " +
                std::to_string(out.residual) + ")");
    return out.roots;
}

// ----------------------------------------------------------------------------
// Canonicalization
// ----------------------------------------------------------------------------

std::vector<Complex> canonicalize_roots(std::vector<Complex> roots, Complex eta) {
    constexpr double kPi = 3.14159265358979323846;
    constexpr double kTie = 1e-12;
    auto fold = [&](Complex l) {
        while (l.imag() > kPi / 2.0) l -= Complex(0.0, kPi);
        while (l.imag() <= -kPi / 2.0) l += Complex(0.0, kPi);
        return l;
    };
    for (auto& l : roots) {
        const Complex cand_plus = fold(l);
        const Complex cand_minus = fold(-l - eta);
        const double r = (2.0 * cand_plus + eta).real();
        if (r > kTie)
            l = cand_plus;
        else if (r < -kTie)
            l = cand_minus;
        else
            l = (cand_plus.imag() >= cand_minus.imag()) ? cand_plus : cand_minus;
    }
    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

// ----------------------------------------------------------------------------
// Full pipeline
// ----------------------------------------------------------------------------

SolveResult solve_all(const ModelParams& p) {
    p.validate();
    require(p.n_sites <= 4, ErrorKind::size, "certified solve path capped at N <= 4");
    p.require_generic_inhomogeneities();
    require_nondegenerate_c(p);

    SolveResult out;
    out.entries = spectrum_ed(p);
    for (std::size_t i = 0; i < out.entries.size(); ++i) {
        try {
            out.entries[i].tq = fit_q_from_lambda(out.entries[i], p);
        } catch (const Error& e) {
            out.failures.push_back({static_cast<int>(i), e.what()});
        }
    }

    // Eigenvalue round trip: the fitted T-Q data must reproduce the stored
    // probe values of its own entry.
    const auto probes = lambda_match_probes();
    for (std::size_t i = 0; i < out.entries.size(); ++i) {
        if (!out.entries[i].tq) continue;
        std::vector<Complex> fitted;
        for (const Complex& u : probes) fitted.push_back(lambda_tq(u, *out.entries[i].tq, p));
        const double mismatch = rel_lambda_mismatch(fitted, out.entries[i].lambda_probe_values);
        if (mismatch > 1e-7)
            out.failures.push_back(
                {static_cast<int>(i),
                 "fitted eigenvalue fails the round trip (relative mismatch " +
                     std::to_string(mismatch) + ")"});
    }

    // Duplicate detection on canonical root multisets.
    for (std::size_t i = 0; i < out.entries.size(); ++i) {
        if (!out.entries[i].tq) continue;
        for (std::size_t j = i + 1; j < out.entries.size(); ++j) {
            if (!out.entries[j].tq) continue;
            const auto& ri = out.entries[i].tq->roots;
            const auto& rj = out.entries[j].tq->roots;
            double dist = 0.0;
            for (std::size_t k = 0; k < ri.size(); ++k) dist += std::abs(ri[k] - rj[k]);
            if (dist <= 1e-6)
                out.failures.push_back({static_cast<int>(j),
                                        "duplicate canonical root multiset with entry " +
                                            std::to_string(i)});
        }
    }
    return out;
}

BetheCertification certify_bethe_states(const ModelParams& p, const SolveResult& solved,
                                        double ambiguity_tol) {
    BetheCertification cert;
    const auto probes = lambda_match_probes();
    const std::size_t count = solved.entries.size();
    cert.eigen_residuals.assign(count, -1.0);
    cert.collinearity_defects.assign(count, -1.0);
    cert.matched_entry.assign(count, -1);

    for (std::size_t i = 0; i < count; ++i) {
        const auto& entry = solved.entries[i];
        if (!entry.tq) continue;
        const StateVector state = bethe_state(*entry.tq, p);
        cert.eigen_residuals[i] = eigen_residual(state, lambda_tq_eval(*entry.tq, p), p, probes);

        std::vector<Complex> fitted;
        for (const Complex& u : probes) fitted.push_back(lambda_tq(u, *entry.tq, p));
        double best = 1e300, second = 1e300;
        int best_idx = -1;
        for (std::size_t j = 0; j < count; ++j) {
            const double mism = rel_lambda_mismatch(fitted, solved.entries[j].lambda_probe_values);
            if (mism < best) {
                second = best;
                best = mism;
                best_idx = static_cast<int>(j);
            } else if (mism < second) {
                second = mism;
            }
        }
        require(second - best > ambiguity_tol, ErrorKind::non_generic,
                "ambiguous eigenvalue match between T-Q data and the diagonalized spectrum");
        cert.matched_entry[i] = best_idx;
        cert.collinearity_defects[i] =
            collinearity_defect(solved.entries[best_idx].eigenvector, state);
    }

    std::vector<int> seen(count, 0);
    bool bijection = true;
    for (std::size_t i = 0; i < count; ++i) {
        if (cert.matched_entry[i] < 0)
            bijection = false;
        else
            seen[cert.matched_entry[i]] += 1;
    }
    for (int s : seen)
        if (s != 1) bijection = false;
    cert.bijection = bijection;
    return cert;
}

} // namespace xxz
