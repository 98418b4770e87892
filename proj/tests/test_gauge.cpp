#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "xxz/gauge.hpp"

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

struct GaugeDraw {
    Complex m, alpha, u;
};

GaugeDraw gauge_draw(uint64_t seed) {
    std::mt19937_64 eng(seed);
    GaugeDraw d;
    d.m = Complex(uniform(eng, 0.9, 2.2), uniform(eng, -0.4, 0.4));
    d.alpha = rand_complex(eng, 0.9, 0.4);
    d.u = rand_complex(eng, 0.7, 0.5);
    return d;
}

} // namespace

TEST_CASE("gauge_vector base point and pairings") {
    const Complex eta(0.6, 0.3);
    auto x0 = gauge_vector(GaugeVectorKind::x, 0.0, 0.0, 0.0, eta);
    CHECK(std::abs(x0(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(x0(1, 0) - 1.0) < 1e-15);

    GaugeDraw d = gauge_draw(301);
    auto X = gauge_vector(GaugeVectorKind::x, d.m, d.u, d.alpha, eta);
    auto Yb = gauge_vector(GaugeVectorKind::y_bar, d.m, d.u, d.alpha, eta);
    auto Xb = gauge_vector(GaugeVectorKind::x_bar, d.m, d.u, d.alpha, eta);
    CHECK(std::abs((Yb * X)(0, 0) - 1.0) < 1e-13);
    CHECK(std::abs((Xb * X)(0, 0)) < 1e-13);

    auto Xh = gauge_vector(GaugeVectorKind::x_hat, d.m, d.u, d.alpha, eta);
    const Complex pref = exp(-eta) * sinh((d.m + 2.0) * eta) / sinh((d.m + 1.0) * eta);
    CHECK(std::abs(Xh(0, 0) - pref * X(0, 0)) < 1e-13 * std::abs(Xh(0, 0)));
    CHECK(std::abs(Xh(1, 0) - pref * X(1, 0)) < 1e-13 * std::abs(Xh(1, 0)));
}

TEST_CASE("gauge_vector reports the offending singular factor") {
    const Complex eta(0.5, 0.0);
    CHECK_THROWS_AS(gauge_vector(GaugeVectorKind::x_bar, 0.0, 0.3, 0.1, eta), Error);
    try {
        gauge_vector(GaugeVectorKind::x_tilde, 1.0, 0.3, 0.1, eta);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::non_generic);
        CHECK(std::string(e.what()).find("(m-1) eta") != std::string::npos);
    }
}

TEST_CASE("gauge matrices against their printed inverses") {
    const Complex eta(0.55, 0.25);
    GaugeDraw d = gauge_draw(302);
    for (auto kind : {GaugeMatrixKind::m_bar, GaugeMatrixKind::m_tilde, GaugeMatrixKind::m_hat}) {
        auto pair = gauge_matrix(kind, d.m, d.u, d.alpha, eta);
        CHECK(max_abs_diff(pair.inverse * pair.matrix, ComplexMatrix::identity(2)) < 1e-12);
        CHECK(max_abs_diff(pair.matrix * pair.inverse, ComplexMatrix::identity(2)) < 1e-12);
    }
}

TEST_CASE("intertwining suite passes at 100 seeded draws") {
    ModelParams p = seeded_params(303, 2);
    auto rep = verify_intertwining(p, 304, 100);
    REQUIRE(rep.checks.size() == 31);
    for (const auto& c : rep.checks) {
        INFO(c.name, " residual=", c.residual, " scale=", c.scale);
        CHECK(c.pass);
    }
}

TEST_CASE("first intertwining relation is the permutation exchange at equal points") {
    const Complex eta(0.62, 0.21);
    GaugeDraw d = gauge_draw(305);
    auto X = [&](Complex idx, Complex u) {
        return gauge_vector(GaugeVectorKind::x, idx, u, d.alpha, eta);
    };
    ComplexMatrix lhs = r_matrix(Complex(0.0), eta) * kron(X(d.m + 2.0, d.u), X(d.m + 1.0, d.u));
    ComplexMatrix rhs = kron(X(d.m + 1.0, d.u), X(d.m + 2.0, d.u));
    CHECK(max_abs_diff(lhs, rhs) < 1e-14 * rhs.max_abs());
}

TEST_CASE("a corrupted gauge-vector prefactor trips the intertwining suite") {
    const Complex eta(0.58, 0.27);
    GaugeDraw d = gauge_draw(306);
    const Complex u2 = d.u + Complex(0.41, -0.22);
    auto X = [&](Complex idx, Complex u) {
        return gauge_vector(GaugeVectorKind::x, idx, u, d.alpha, eta);
    };
    const Complex cp = sinh(d.u - u2 + eta) / sinh(eta);
    ComplexMatrix bad = (1.0 + 1e-6) * X(d.m + 2.0, d.u);
    ComplexMatrix lhs = r_matrix(d.u - u2, eta) * kron(bad, X(d.m + 1.0, u2));
    ComplexMatrix rhs = cp * kron(X(d.m + 1.0, d.u), X(d.m + 2.0, u2));
    CHECK(max_abs_diff(lhs, rhs) > 1e-8 * rhs.max_abs());
}

TEST_CASE("commutation relations hold as operator identities at N=2") {
    ModelParams p = seeded_params(307, 2);
    auto rep = verify_commutation_relations(p, 308);
    REQUIRE(rep.checks.size() == 4);
    for (const auto& c : rep.checks) {
        INFO(c.name, " residual=", c.residual, " scale=", c.scale);
        CHECK(c.pass);
    }
}

TEST_CASE("transfer-matrix decomposition through the gauged operators") {
    ModelParams p = seeded_params(309, 2);
    auto rep = verify_transfer_decomposition(p, 310);
    for (const auto& c : rep.checks) {
        INFO(c.name, " residual=", c.residual, " scale=", c.scale);
        CHECK(c.pass);
    }
}

TEST_CASE("gauge structure at the selected gauges") {
    ModelParams p = seeded_params(311, 2);
    auto rep = verify_gauge_structure(p, 312);
    for (const auto& c : rep.checks) {
        INFO(c.name, " residual=", c.residual, " scale=", c.scale);
        CHECK(c.pass);
    }
}

TEST_CASE("selected left gauge solves the selection equations and is 2 i pi stable") {
    ModelParams p = seeded_params(313, 3);
    GaugeIndex gl = select_gauge_left(p);
    CHECK(gauge_condition_left_residual(p, gl) < 1e-12);

    ModelParams shifted = p;
    shifted.theta_plus += Complex(0.0, 2.0 * kPi);
    GaugeIndex gl2 = select_gauge_left(shifted);
    CHECK(std::abs(gl.alpha - gl2.alpha) < 1e-12);
    CHECK(std::abs(gl.m - gl2.m) < 1e-12);
}

TEST_CASE("selected right sum solves its selection equation") {
    ModelParams p = seeded_params(314, 3);
    CHECK(gauge_condition_right_residual(p, select_gauge_right_sum(p)) < 1e-12);
}

TEST_CASE("branch enumeration starts from the principal branch") {
    ModelParams p = seeded_params(315, 2);
    auto branches = enumerate_gauge_branches(p);
    REQUIRE(branches.size() == 4);
    GaugeIndex gl = select_gauge_left(p);
    CHECK(std::abs(branches[0].left.m - gl.m) < 1e-12);
    CHECK(std::abs(branches[0].left.alpha - gl.alpha) < 1e-12);
    CHECK(std::abs(branches[0].right_sum - select_gauge_right_sum(p)) < 1e-12);
    CHECK(branches[0].sign_plus == 1);
    CHECK(branches[0].sign_minus == 1);

    for (const auto& b : branches) {
        CHECK(gauge_condition_left_residual(p, b.left) < 1e-12);
        CHECK(gauge_condition_right_residual(p, b.right_sum) < 1e-12);
    }
    for (std::size_t i = 0; i < branches.size(); ++i)
        for (std::size_t j = i + 1; j < branches.size(); ++j) {
            const double dist = std::abs(branches[i].left.m - branches[j].left.m) +
                                std::abs(branches[i].right_sum - branches[j].right_sum);
            CHECK(dist > 1e-6);
        }
}

TEST_CASE("left-gauged K-minus reconstructs K-minus through completeness") {
    ModelParams p = seeded_params(316, 2);
    GaugeDraw d = gauge_draw(317);
    const Complex lp = d.m; // plays the part of the shifted index
    ComplexMatrix kbar = gauged_kminus_left(lp, d.alpha, d.u, p);
    auto vec = [&](GaugeVectorKind k, Complex idx, Complex arg) {
        return gauge_vector(k, idx, arg, d.alpha, p.eta);
    };
    ComplexMatrix rebuilt =
        kbar(0, 0) * (vec(GaugeVectorKind::x, lp, d.u) * vec(GaugeVectorKind::y_bar, lp, -d.u)) +
        kbar(0, 1) * (vec(GaugeVectorKind::x, lp, d.u) * vec(GaugeVectorKind::x_bar, lp - 2.0, -d.u)) +
        kbar(1, 0) * (vec(GaugeVectorKind::y, lp, d.u) * vec(GaugeVectorKind::y_bar, lp + 2.0, -d.u)) +
        kbar(1, 1) * (vec(GaugeVectorKind::y, lp, d.u) * vec(GaugeVectorKind::x_bar, lp, -d.u));
    ComplexMatrix km = k_minus(d.u, p);
    CHECK(max_abs_diff(rebuilt, km) < 1e-12 * km.max_abs());
}

TEST_CASE("left-gauged K-minus has vanishing 21 entry at u = 0") {
    ModelParams p = seeded_params(318, 2);
    GaugeDraw d = gauge_draw(319);
    ComplexMatrix kbar = gauged_kminus_left(d.m, d.alpha, Complex(0.0), p);
    CHECK(std::abs(kbar(1, 0)) < 1e-12 * kbar.max_abs());
}

TEST_CASE("gauged one-row operators reduce to hand sandwiches at N=1") {
    ModelParams p = seeded_params(320, 1);
    GaugeDraw d = gauge_draw(321);
    auto vec = [&](GaugeVectorKind k, Complex idx, Complex arg) {
        return gauge_vector(k, idx, arg, d.alpha, p.eta);
    };

    AuxMonodromy that = one_row_monodromy(d.u, p, true);
    ComplexMatrix want(2, 2);
    auto row = vec(GaugeVectorKind::y_bar, d.m - 1.0 + 1.0, -d.u); // m - N + 1 with N = 1
    auto col = vec(GaugeVectorKind::y_hat, d.m + 1.0, -d.u);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) want += (row(0, a) * col(b, 0)) * that.block[a][b];
    ComplexMatrix got = gauged_one_row(GaugedOneRowSide::left_bar, d.m, d.alpha, d.u, p);
    CHECK(max_abs_diff(got, want) < 1e-13 * (1.0 + want.max_abs()));

    AuxMonodromy t = one_row_monodromy(d.u, p, false);
    ComplexMatrix want2(2, 2);
    auto row2v = vec(GaugeVectorKind::y_tilde, d.m - 1.0, d.u);
    auto col2v = vec(GaugeVectorKind::y, d.m + 1.0 - 1.0, d.u); // m + N - 1 with N = 1
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) want2 += (row2v(0, a) * col2v(b, 0)) * t.block[a][b];
    ComplexMatrix got2 = gauged_one_row(GaugedOneRowSide::right, d.m, d.alpha, d.u, p);
    CHECK(max_abs_diff(got2, want2) < 1e-13 * (1.0 + want2.max_abs()));
}
