#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "xxz/functional.hpp"

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
        p.inhomogeneities.push_back(Complex(0.11 + 0.17 * j + uniform(eng, -0.02, 0.02),
                                            -0.08 + 0.13 * j + uniform(eng, -0.02, 0.02)));
    p.validate();
    return p;
}

std::vector<Complex> random_roots(std::mt19937_64& eng, int n) {
    std::vector<Complex> out;
    for (int i = 0; i < n; ++i) out.push_back(rand_complex(eng, 0.7, 0.6));
    return out;
}

} // namespace

TEST_CASE("d is the crossing image of a") {
    ModelParams p = seeded_params(101, 2);
    std::mt19937_64 eng(102);
    for (int i = 0; i < 5; ++i) {
        const Complex u = rand_complex(eng, 0.8, 0.6);
        CHECK(std::abs(d_func(u, p) - a_func(-u - p.eta, p)) < 1e-14 * std::abs(d_func(u, p)));
    }
}

TEST_CASE("a vanishes at its printed zeros") {
    ModelParams p = seeded_params(103, 2);
    CHECK(std::abs(a_func(p.alpha_plus, p)) < 1e-12);
    CHECK(std::abs(a_func(p.beta_plus + Complex(0.0, kPi / 2.0), p)) < 1e-12);
}

TEST_CASE("abar special values and symmetry") {
    ModelParams p = seeded_params(104, 3);
    std::mt19937_64 eng(105);
    for (int j = 0; j < p.n_sites; ++j)
        CHECK(std::abs(abar_func(p.inhomogeneities[j] - p.eta, p)) < 1e-12);
    const Complex u = rand_complex(eng, 0.8, 0.6);
    CHECK(std::abs(abar_func(u, p) - abar_func(-u - 2.0 * p.eta, p)) <
          1e-12 * std::abs(abar_func(u, p)));

    ModelParams single = seeded_params(104, 1);
    single.inhomogeneities[0] = 0.0;
    const Complex s = sinh(u + single.eta) / sinh(single.eta);
    CHECK(std::abs(abar_func(u, single) - s * s) < 1e-13 * std::abs(s * s));
}

TEST_CASE("c constant structure") {
    ModelParams p = seeded_params(106, 2);
    // Equal cosh arguments force c = 0.
    ModelParams z = p;
    z.theta_minus = p.alpha_minus + p.beta_minus + p.alpha_plus + p.beta_plus +
                    (1.0 + static_cast<double>(p.n_sites)) * p.eta;
    z.theta_plus = 0.0;
    CHECK(std::abs(c_const(z)) < 1e-12);
    CHECK_THROWS_AS(require_nondegenerate_c(z), Error);

    // c depends on theta_- - theta_+ only.
    ModelParams s = p;
    const Complex shift(0.31, -0.42);
    s.theta_minus += shift;
    s.theta_plus += shift;
    CHECK(std::abs(c_const(s) - c_const(p)) < 1e-13 * std::abs(c_const(p)));
}

TEST_CASE("q_func zeros, crossing symmetry and cosh-difference form") {
    ModelParams p = seeded_params(107, 3);
    std::mt19937_64 eng(108);
    auto roots = random_roots(eng, p.n_sites);

    CHECK(std::abs(q_func(roots[0], roots, p.eta)) < 1e-12);

    const Complex u = rand_complex(eng, 0.8, 0.6);
    CHECK(std::abs(q_func(u, roots, p.eta) - q_func(-u - p.eta, roots, p.eta)) <
          1e-12 * std::abs(q_func(u, roots, p.eta)));

    Complex prod = 1.0;
    for (const auto& l : roots)
        prod *= (cosh(2.0 * u + p.eta) - cosh(2.0 * l + p.eta)) /
                (2.0 * sinh(p.eta) * sinh(p.eta));
    CHECK(std::abs(q_func(u, roots, p.eta) - prod) < 1e-12 * std::abs(prod));
}

TEST_CASE("lambda_tq at the negated inhomogeneity points") {
    ModelParams p = seeded_params(109, 3);
    std::mt19937_64 eng(110);
    TQSolution tq;
    tq.roots = random_roots(eng, p.n_sites);
    tq.c_value = c_const(p);
    // The additive term and the d-term both carry Abar(theta_j - eta) = 0, so
    // the a-term alone survives at u = -theta_j for any root set.
    for (int j = 0; j < p.n_sites; ++j) {
        const Complex u = -p.inhomogeneities[j];
        const Complex expect =
            a_func(u, p) * q_func(u - p.eta, tq.roots, p.eta) / q_func(u, tq.roots, p.eta);
        CHECK(std::abs(lambda_tq(u, tq, p) - expect) < 1e-12 * std::abs(expect));
    }
}

TEST_CASE("lambda_tq rejects evaluation at a Bethe root") {
    ModelParams p = seeded_params(111, 2);
    std::mt19937_64 eng(112);
    TQSolution tq;
    tq.roots = random_roots(eng, p.n_sites);
    CHECK_THROWS_AS(lambda_tq(tq.roots[0], tq, p), Error);
}

TEST_CASE("bae_residual is invariant under the root reflection orbit") {
    ModelParams p = seeded_params(113, 3);
    std::mt19937_64 eng(114);
    auto roots = random_roots(eng, p.n_sites);
    auto base = bae_residual(roots, p);

    auto reflected = roots;
    reflected[1] = -roots[1] - p.eta;
    auto refl = bae_residual(reflected, p);
    for (int j = 0; j < p.n_sites; ++j)
        CHECK(std::abs(base[j].value - refl[j].value) <
              1e-10 * std::max(base[j].scale, 1.0));
}

TEST_CASE("analytic derivatives agree with central differences") {
    ModelParams p = seeded_params(115, 3);
    std::mt19937_64 eng(116);
    const Complex u = rand_complex(eng, 0.5, 0.4);
    auto roots = random_roots(eng, p.n_sites);
    const double h = 1e-6;

    auto fd = [&](auto f) { return (f(u + h) - f(u - h)) / (2.0 * h); };

    CHECK(std::abs(a_func_deriv(u, p) - fd([&](Complex v) { return a_func(v, p); })) <
          1e-5 * (1.0 + std::abs(a_func_deriv(u, p))));
    CHECK(std::abs(d_func_deriv(u, p) - fd([&](Complex v) { return d_func(v, p); })) <
          1e-5 * (1.0 + std::abs(d_func_deriv(u, p))));
    CHECK(std::abs(abar_func_deriv(u, p) - fd([&](Complex v) { return abar_func(v, p); })) <
          1e-5 * (1.0 + std::abs(abar_func_deriv(u, p))));
    CHECK(std::abs(q_func_deriv(u, roots, p.eta) -
                   fd([&](Complex v) { return q_func(v, roots, p.eta); })) <
          1e-5 * (1.0 + std::abs(q_func_deriv(u, roots, p.eta))));
    CHECK(std::abs(tq_inhomogeneous_term_deriv(u, p) -
                   fd([&](Complex v) { return tq_inhomogeneous_term(v, p); })) <
          1e-5 * (1.0 + std::abs(tq_inhomogeneous_term_deriv(u, p))));

    for (std::size_t k = 0; k < roots.size(); ++k) {
        auto plus = roots, minus = roots;
        plus[k] += h;
        minus[k] -= h;
        const Complex fdr =
            (q_func(u, plus, p.eta) - q_func(u, minus, p.eta)) / (2.0 * h);
        CHECK(std::abs(q_func_root_deriv(u, roots, p.eta, k) - fdr) <
              1e-5 * (1.0 + std::abs(fdr)));
    }
}

TEST_CASE("operator identity suite passes on generic parameters") {
    for (uint64_t seed : {201u, 202u}) {
        ModelParams p = seeded_params(seed, 2);
        auto rep = verify_operator_identities(p, seed);
        for (const auto& c : rep.checks) {
            INFO(c.name, " residual=", c.residual, " scale=", c.scale);
            CHECK(c.pass);
        }
    }
}

TEST_CASE("operator identity suite holds at the homogeneous point") {
    ModelParams p = seeded_params(203, 3);
    for (auto& t : p.inhomogeneities) t = 0.0;
    auto rep = verify_operator_identities(p, 203);
    for (const auto& c : rep.checks) {
        INFO(c.name, " residual=", c.residual, " scale=", c.scale);
        CHECK(c.pass);
    }
}

TEST_CASE("corrupting K+ breaks the product identity") {
    ModelParams p = seeded_params(204, 2);
    const Complex th = p.inhomogeneities[0];

    // Rebuild t(u)t(u-eta) with a perturbed K+ via the public pieces.
    auto corrupt_transfer = [&](Complex u) {
        AuxMonodromy um = double_row_monodromy(u, p);
        ComplexMatrix kp = k_plus(u, p);
        kp(0, 1) += 1e-3;
        ComplexMatrix t(p.dim(), p.dim());
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) t += kp(a, b) * um.block[b][a];
        return t;
    };
    const ComplexMatrix prod = corrupt_transfer(th) * corrupt_transfer(th - p.eta);
    const Complex scalar = a_func(th, p) * d_func(th - p.eta, p);
    const double scale = std::max(prod.max_abs(), std::abs(scalar));
    const double residual =
        max_abs_diff(prod, scalar * ComplexMatrix::identity(p.dim()));
    CHECK(residual > 1e-5 * scale);
}
