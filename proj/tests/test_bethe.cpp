#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "xxz/bethe.hpp"

using namespace xxz;

namespace {

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

// Minimal local diagonalization of t(u0): eigenvector plus anchored-ratio
// eigenvalue evaluator, independent of the solver module.
struct LocalEigen {
    StateVector vec;
    int anchor;
};

LocalEigen ed_eigenvector(const ModelParams& p, std::size_t which) {
    const Complex u0(0.39, 0.27);
    auto ed = eig_general(transfer_matrix(u0, p));
    LocalEigen out;
    out.vec.amplitudes.resize(p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i) out.vec.amplitudes[i] = ed.vectors(i, which);
    out.anchor = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < p.dim(); ++i)
        if (std::abs(out.vec.amplitudes[i]) > best) {
            best = std::abs(out.vec.amplitudes[i]);
            out.anchor = static_cast<int>(i);
        }
    return out;
}

LambdaEval anchored_lambda(const LocalEigen& e, const ModelParams& p) {
    return [e, p](Complex u) {
        const StateVector tv = apply(transfer_matrix(u, p), e.vec);
        return tv.amplitudes[e.anchor] / e.vec.amplitudes[e.anchor];
    };
}

} // namespace

TEST_CASE("right vacuum at N=1 is the single gauge column") {
    ModelParams p = seeded_params(401, 1);
    std::mt19937_64 eng(402);
    const Complex alpha = rand_complex(eng, 0.8, 0.4);
    const Complex m = Complex(uniform(eng, 1.0, 2.0), uniform(eng, -0.3, 0.3));
    StateVector v = right_vacuum(alpha, m, p);
    const Complex expect0 = exp(-(p.inhomogeneities[0] + (alpha + m + 1.0) * p.eta));
    CHECK(std::abs(v.amplitudes[0] - expect0) < 1e-14 * std::abs(expect0));
    CHECK(std::abs(v.amplitudes[1] - 1.0) < 1e-14);
}

TEST_CASE("right vacuum depends only on alpha+m") {
    ModelParams p = seeded_params(403, 2);
    std::mt19937_64 eng(404);
    const Complex alpha = rand_complex(eng, 0.6, 0.3);
    const Complex m = Complex(uniform(eng, 1.1, 2.0), uniform(eng, -0.3, 0.3));
    const Complex shift = rand_complex(eng, 0.4, 0.2);
    StateVector v = right_vacuum(alpha, m, p);
    StateVector w = right_vacuum(alpha + shift, m - shift, p);
    CHECK(collinearity_defect(v, w) < 1e-12);
}

TEST_CASE("left vacuum at N=1 matches the printed scalar times the barred row") {
    ModelParams p = seeded_params(405, 1);
    std::mt19937_64 eng(406);
    const Complex alpha = rand_complex(eng, 0.8, 0.4);
    const Complex m = Complex(uniform(eng, 1.2, 2.1), uniform(eng, -0.3, 0.3));
    CoStateVector w = left_vacuum(alpha, m, p);
    const Complex pref = 2.0 * exp(-p.inhomogeneities[0] - alpha * p.eta) *
                         sinh((m - 1.0) * p.eta);
    auto xb = gauge_vector(GaugeVectorKind::x_bar, m - 1.0, p.inhomogeneities[0], alpha, p.eta);
    CHECK(std::abs(w.amplitudes[0] - pref * xb(0, 0)) < 1e-13 * std::abs(w.amplitudes[0]));
    CHECK(std::abs(w.amplitudes[1] - pref * xb(0, 1)) < 1e-13 * std::abs(w.amplitudes[1]));
}

TEST_CASE("left vacuum depends only on alpha+m") {
    ModelParams p = seeded_params(407, 3);
    std::mt19937_64 eng(408);
    const Complex alpha = rand_complex(eng, 0.5, 0.3);
    const Complex m = Complex(uniform(eng, 3.6, 4.2), uniform(eng, -0.3, 0.3));
    const Complex shift = rand_complex(eng, 0.3, 0.2);
    CoStateVector w1 = left_vacuum(alpha, m, p);
    CoStateVector w2 = left_vacuum(alpha + shift, m - shift, p);
    for (std::size_t i = 0; i < w1.dim(); ++i)
        CHECK(std::abs(w1.amplitudes[i] - w2.amplitudes[i]) < 1e-12 * w1.norm());
}

TEST_CASE("left basis state with the empty subset is the vacuum") {
    ModelParams p = seeded_params(409, 2);
    std::mt19937_64 eng(410);
    GaugeIndex g{rand_complex(eng, 0.6, 0.3), Complex(uniform(eng, 1.4, 2.0), uniform(eng, -0.3, 0.3))};
    CoStateVector vac = left_vacuum(g.alpha, g.m, p);
    CoStateVector basis = left_basis_state(g, {}, p);
    for (std::size_t i = 0; i < vac.dim(); ++i)
        CHECK(std::abs(vac.amplitudes[i] - basis.amplitudes[i]) < 1e-14 * vac.norm());
}

TEST_CASE("left basis states span the dual space at N=2") {
    ModelParams p = seeded_params(411, 2);
    GaugeIndex g = select_gauge_left(p);
    const std::vector<std::vector<int>> subsets{{}, {1}, {2}, {1, 2}};
    ComplexMatrix rows(4, 4);
    for (std::size_t si = 0; si < subsets.size(); ++si) {
        CoStateVector b = left_basis_state(g, subsets[si], p);
        const double n = b.norm();
        for (std::size_t j = 0; j < 4; ++j) rows(si, j) = b.amplitudes[j] / n;
    }
    const Complex det = lu_det(lu_factor(rows));
    CHECK(std::abs(det) > 1e-8);
}

TEST_CASE("left action suite passes at N=2 and N=3") {
    for (int n : {2, 3}) {
        ModelParams p = seeded_params(412 + n, n);
        auto rep = verify_left_actions(p, 500 + n);
        for (const auto& c : rep.checks) {
            INFO("N=", n, " ", c.name, " residual=", c.residual, " scale=", c.scale);
            CHECK(c.pass);
        }
    }
}

TEST_CASE("right action suite passes at N=2 and N=3") {
    for (int n : {2, 3}) {
        ModelParams p = seeded_params(415 + n, n);
        auto rep = verify_right_actions(p, 520 + n);
        for (const auto& c : rep.checks) {
            INFO("N=", n, " ", c.name, " residual=", c.residual, " scale=", c.scale);
            CHECK(c.pass);
        }
    }
}

TEST_CASE("reference conditions hold at N=2 and N=3") {
    for (int n : {2, 3}) {
        ModelParams p = seeded_params(418 + n, n);
        auto rep = reference_conditions_check(p);
        for (const auto& c : rep.checks) {
            INFO("N=", n, " ", c.name, " residual=", c.residual, " scale=", c.scale);
            CHECK(c.pass);
        }
    }
}

TEST_CASE("scalar products of exact eigenvectors follow the product formula") {
    ModelParams p = seeded_params(421, 2);
    for (std::size_t which = 0; which < p.dim(); ++which) {
        LocalEigen e = ed_eigenvector(p, which);
        auto rep = scalar_product_check(e.vec, anchored_lambda(e, p), p);
        for (const auto& c : rep.checks) {
            INFO("eigenvector ", which, " ", c.name, " residual=", c.residual, " scale=", c.scale);
            CHECK(c.pass);
        }
    }
}

TEST_CASE("eigen_residual separates eigenvectors from random vectors") {
    ModelParams p = seeded_params(422, 2);
    const std::array<Complex, 3> probes{Complex(0.23, 0.11), Complex(-0.37, 0.19),
                                        Complex(0.52, -0.29)};

    LocalEigen e = ed_eigenvector(p, 1);
    CHECK(eigen_residual(e.vec, anchored_lambda(e, p), p, probes) < 1e-10);

    std::mt19937_64 eng(423);
    StateVector random_vec;
    for (std::size_t i = 0; i < p.dim(); ++i)
        random_vec.amplitudes.push_back(rand_complex(eng, 1.0, 1.0));
    CHECK(eigen_residual(random_vec, anchored_lambda(e, p), p, probes) > 1e-3);
}
