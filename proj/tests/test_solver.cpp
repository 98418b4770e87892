#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "xxz/solver.hpp"

using namespace xxz;

namespace {

constexpr double kPi = 3.14159265358979323846;

double uniform(std::mt19937_64& eng, double lo, double hi) {
    const double u = static_cast<double>(eng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

Complex rand_complex(std::mt19937_64& eng, double re_scale, double im_scale) {
    return Complex(uniform(eng, -re_scale, re_scale), uniform(eng, -im_scale, im_scale));
}

ModelParams seeded_params(uint64_t seed, int n_sites) {
    std::mt19937_64 eng(seed);
    ModelParams p;
    p.eta = Complex(uniform(eng, 0.4, 0.9), uniform(eng, 0.15, 0.45));
    p.alpha_minus = Complex(uniform(eng, 0.5, 1.2), uniform(eng, -0.4, 0.4));
    p.beta_minus = Complex(uniform(eng, -0.8, 0.8), uniform(eng, -0.35, 0.35));
    p.theta_minus = rand_complex(eng, 0.6, 0.5);
    p.alpha_plus = Complex(uniform(eng, 0.5, 1.2), uniform(eng, -0.4, 0.4));
    p.beta_plus = Complex(uniform(eng, -0.8, 0.8), uniform(eng, -0.35, 0.35));
    p.theta_plus = rand_complex(eng, 0.6, 0.5);
    p.n_sites = n_sites;
    for (int j = 0; j < n_sites; ++j)
        p.inhomogeneities.push_back(Complex(0.13 + 0.19 * j + uniform(eng, -0.02, 0.02),
                                            -0.09 + 0.15 * j + uniform(eng, -0.02, 0.02)));
    p.validate();
    return p;
}

} // namespace

TEST_CASE("spectrum_ed eigenvalue sums reproduce the transfer-matrix trace") {
    ModelParams p = seeded_params(601, 3);
    auto entries = spectrum_ed(p);
    REQUIRE(entries.size() == p.dim());
    std::mt19937_64 eng(602);
    for (int trial = 0; trial < 5; ++trial) {
        const Complex u = rand_complex(eng, 0.7, 0.5);
        const ComplexMatrix t = transfer_matrix(u, p);
        Complex sum = 0.0;
        for (const auto& e : entries) sum += lambda_ed(e, u, p);
        CHECK(std::abs(sum - t.trace()) < 1e-9 * std::max(1.0, std::abs(t.trace())));
    }
}

TEST_CASE("spectrum_ed eigenvalues obey crossing and the pair product identity") {
    ModelParams p = seeded_params(603, 2);
    auto entries = spectrum_ed(p);
    std::mt19937_64 eng(604);
    const Complex u = rand_complex(eng, 0.6, 0.4);
    for (const auto& e : entries) {
        const Complex l1 = lambda_ed(e, u, p);
        const Complex l2 = lambda_ed(e, -u - p.eta, p);
        CHECK(std::abs(l1 - l2) < 1e-9 * std::abs(l1));
        for (int j = 0; j < p.n_sites; ++j) {
            const Complex th = p.inhomogeneities[j];
            const Complex prod = lambda_ed(e, th, p) * lambda_ed(e, th - p.eta, p);
            const Complex want = a_func(th, p) * d_func(th - p.eta, p);
            CHECK(std::abs(prod - want) < 1e-8 * std::abs(want));
        }
    }
}

TEST_CASE("fit recovers one root per eigenvalue at N=1") {
    ModelParams p = seeded_params(605, 1);
    auto entries = spectrum_ed(p);
    REQUIRE(entries.size() == 2);
    for (const auto& e : entries) {
        TQSolution tq = fit_q_from_lambda(e, p);
        REQUIRE(tq.roots.size() == 1);
        for (double r : tq.bae_residuals) CHECK(r < 1e-8);
    }
}

TEST_CASE("fitted eigenvalue round trips through the three-term relation") {
    ModelParams p = seeded_params(606, 2);
    auto entries = spectrum_ed(p);
    std::mt19937_64 eng(607);
    for (auto& e : entries) {
        TQSolution tq = fit_q_from_lambda(e, p);
        for (int trial = 0; trial < 10; ++trial) {
            const Complex u = rand_complex(eng, 0.7, 0.5);
            const Complex via_tq = lambda_tq(u, tq, p);
            const Complex via_ed = lambda_ed(e, u, p);
            CHECK(std::abs(via_tq - via_ed) <
                  1e-7 * std::max(std::abs(via_tq), std::abs(via_ed)));
        }
        e.tq = tq;
    }

    // Negative control: pairing one eigenvalue's data with another's roots.
    const Complex u(0.33, 0.21);
    const Complex cross = lambda_tq(u, *entries[0].tq, p);
    const Complex other = lambda_ed(entries[1], u, p);
    CHECK(std::abs(cross - other) > 1e-3 * std::max(std::abs(cross), std::abs(other)));
}

TEST_CASE("newton refinement basin and fixed point") {
    ModelParams p = seeded_params(608, 2);
    auto entries = spectrum_ed(p);
    TQSolution tq = fit_q_from_lambda(entries[1], p);

    std::mt19937_64 eng(609);
    auto perturbed = tq.roots;
    for (auto& r : perturbed) r += 1e-4 * rand_complex(eng, 1.0, 1.0);
    auto recovered = canonicalize_roots(newton_refine(perturbed, p), p.eta);
    for (std::size_t i = 0; i < recovered.size(); ++i)
        CHECK(std::abs(recovered[i] - tq.roots[i]) < 1e-9);

    auto fixed = newton_refine(tq.roots, p);
    for (std::size_t i = 0; i < fixed.size(); ++i)
        CHECK(std::abs(fixed[i] - tq.roots[i]) < 1e-12);

    NewtonOutcome detail = newton_refine_detailed(perturbed, p);
    CHECK(detail.converged);
    CHECK(detail.iterations <= 10);
}

TEST_CASE("analytic and finite-difference Jacobian paths agree") {
    ModelParams p = seeded_params(610, 2);
    auto entries = spectrum_ed(p);
    TQSolution tq = fit_q_from_lambda(entries[2], p);
    std::mt19937_64 eng(611);
    auto perturbed = tq.roots;
    for (auto& r : perturbed) r += 5e-4 * rand_complex(eng, 1.0, 1.0);
    auto via_analytic = canonicalize_roots(newton_refine(perturbed, p, false), p.eta);
    auto via_fd = canonicalize_roots(newton_refine(perturbed, p, true), p.eta);
    for (std::size_t i = 0; i < via_analytic.size(); ++i)
        CHECK(std::abs(via_analytic[i] - via_fd[i]) < 1e-8);
}

TEST_CASE("canonicalize_roots orbit equivalence, idempotence and Q invariance") {
    const Complex eta(0.58, 0.31);
    std::mt19937_64 eng(612);
    std::vector<Complex> roots{rand_complex(eng, 0.7, 0.4), rand_complex(eng, 0.7, 0.4)};

    auto canon = canonicalize_roots(roots, eta);
    std::vector<Complex> moved{-roots[0] - eta, roots[1] + Complex(0.0, kPi)};
    auto canon2 = canonicalize_roots(moved, eta);
    for (std::size_t i = 0; i < canon.size(); ++i) CHECK(std::abs(canon[i] - canon2[i]) < 1e-13);

    auto twice = canonicalize_roots(canon, eta);
    for (std::size_t i = 0; i < canon.size(); ++i) CHECK(std::abs(canon[i] - twice[i]) < 1e-15);

    for (int trial = 0; trial < 5; ++trial) {
        const Complex u = rand_complex(eng, 0.8, 0.5);
        const Complex before = q_func(u, roots, eta);
        const Complex after = q_func(u, canon, eta);
        CHECK(std::abs(before - after) < 1e-12 * std::abs(before));
    }
}

TEST_CASE("solve_all returns a complete certified spectrum at N=2 and N=3") {
    for (int n : {2, 3}) {
        ModelParams p = seeded_params(613 + n, n);
        SolveResult sr = solve_all(p);
        INFO("N=", n);
        CHECK(sr.failures.empty());
        REQUIRE(sr.entries.size() == p.dim());
        for (const auto& e : sr.entries) {
            REQUIRE(e.tq.has_value());
            for (double r : e.tq->bae_residuals) CHECK(r < 1e-8);
        }

        BetheCertification cert = certify_bethe_states(p, sr);
        CHECK(cert.bijection);
        for (std::size_t i = 0; i < sr.entries.size(); ++i) {
            CHECK(cert.eigen_residuals[i] < 1e-8);
            CHECK(cert.collinearity_defects[i] < 1e-8);
            CHECK(cert.matched_entry[i] == static_cast<int>(i));
        }
    }
}

TEST_CASE("degenerate boundary constant is rejected before solving") {
    ModelParams p = seeded_params(617, 2);
    p.theta_minus = p.alpha_minus + p.beta_minus + p.alpha_plus + p.beta_plus +
                    (1.0 + static_cast<double>(p.n_sites)) * p.eta;
    p.theta_plus = 0.0;
    try {
        solve_all(p);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::degenerate);
    }
}

TEST_CASE("fitted eigenvalue is a trigonometric polynomial of bounded degree") {
    ModelParams p = seeded_params(618, 2);
    SolveResult sr = solve_all(p);
    REQUIRE(sr.failures.empty());
    const int n = p.n_sites;
    const int half_degree = n + 2;     // exponents of e^{2u} range over [-n-2, n+2]
    const int samples = 2 * n + 6;

    for (const auto& e : sr.entries) {
        const TQSolution& tq = *e.tq;
        // Interpolate in z = e^{2u} on a near-unit circle.
        ComplexMatrix a(samples, 2 * half_degree + 1);
        std::vector<Complex> b(samples);
        for (int s = 0; s < samples; ++s) {
            const Complex u = Complex(0.05, kPi * s / samples);
            const Complex z = exp(2.0 * u);
            for (int k = -half_degree; k <= half_degree; ++k)
                a(s, k + half_degree) = std::pow(z, k);
            b[s] = lambda_tq(u, tq, p);
        }
        auto fit = lstsq(a, b);
        std::mt19937_64 eng(619);
        for (int trial = 0; trial < 5; ++trial) {
            const Complex u = rand_complex(eng, 0.4, 0.6);
            const Complex z = exp(2.0 * u);
            Complex interp = 0.0;
            for (int k = -half_degree; k <= half_degree; ++k)
                interp += fit.x[k + half_degree] * std::pow(z, k);
            const Complex direct = lambda_tq(u, tq, p);
            CHECK(std::abs(interp - direct) < 1e-8 * std::max(1.0, std::abs(direct)));
        }
    }
}

TEST_CASE("fitted eigenvalues satisfy the closed special values and asymptotics") {
    ModelParams p = seeded_params(620, 2);
    SolveResult sr = solve_all(p);
    REQUIRE(sr.failures.empty());

    Complex prod0 = 1.0, prodh = 1.0;
    const Complex half(0.0, kPi / 2.0);
    for (const auto& th : p.inhomogeneities) {
        prod0 *= sinh(p.eta - th) * sinh(p.eta + th) / (sinh(p.eta) * sinh(p.eta));
        prodh *= sinh(half + th + p.eta) * sinh(half + th - p.eta) / (sinh(p.eta) * sinh(p.eta));
    }
    const Complex want0 = -8.0 * sinh(p.alpha_minus) * cosh(p.beta_minus) * sinh(p.alpha_plus) *
                          cosh(p.beta_plus) * cosh(p.eta) * prod0;
    const Complex wanth = -8.0 * cosh(p.alpha_minus) * sinh(p.beta_minus) * cosh(p.alpha_plus) *
                          sinh(p.beta_plus) * cosh(p.eta) * prodh;

    std::mt19937_64 eng(621);
    for (const auto& e : sr.entries) {
        const TQSolution& tq = *e.tq;
        CHECK(std::abs(lambda_tq(Complex(0.0), tq, p) - want0) < 1e-9 * std::abs(want0));
        CHECK(std::abs(lambda_tq(half, tq, p) - wanth) < 1e-9 * std::abs(wanth));

        const Complex u = rand_complex(eng, 0.5, 0.4);
        const Complex lam = lambda_tq(u, tq, p);
        CHECK(std::abs(lambda_tq(u + Complex(0.0, kPi), tq, p) - lam) < 1e-9 * std::abs(lam));
        CHECK(std::abs(lambda_tq(-u - p.eta, tq, p) - lam) < 1e-9 * std::abs(lam));

        const Complex want_lead = -cosh(p.theta_minus - p.theta_plus);
        const double pref = std::pow(2.0, 2 * p.n_sites + 1);
        const Complex sepow = std::pow(sinh(p.eta), 2 * p.n_sites);
        for (int sign : {+1, -1}) {
            const Complex uu(20.0 * sign, 0.3);
            const Complex expo = static_cast<double>(2 * p.n_sites + 4) * uu +
                                 static_cast<double>(p.n_sites + 2) * p.eta;
            const Complex scaled =
                pref * sepow * exp(-static_cast<double>(sign) * expo) * lambda_tq(uu, tq, p);
            CHECK(std::abs(scaled - want_lead) < 1e-6 * std::abs(want_lead));
        }
    }
}

TEST_CASE("scalar products and reference conditions hold along the solved spectrum") {
    ModelParams p = seeded_params(622, 2);
    SolveResult sr = solve_all(p);
    REQUIRE(sr.failures.empty());
    for (const auto& e : sr.entries) {
        auto rep = scalar_product_check(e.eigenvector, lambda_ed_eval(e, p), p);
        for (const auto& c : rep.checks) {
            INFO(c.name, " residual=", c.residual, " scale=", c.scale);
            CHECK(c.pass);
        }
    }
    const auto& roots = sr.entries[0].tq->roots;
    auto ref = reference_conditions_check(p, &roots);
    for (const auto& c : ref.checks) {
        INFO(c.name, " residual=", c.residual, " scale=", c.scale);
        CHECK(c.pass);
    }
}
