#include "xxz/functional.hpp"

#include <cmath>
#include <random>

namespace xxz {

namespace {

using std::cosh;
using std::exp;
using std::sinh;

constexpr double kPi = 3.14159265358979323846;

} // namespace

Complex abar_func(Complex u, const ModelParams& p) {
    const Complex se2 = sinh(p.eta) * sinh(p.eta);
    Complex prod = 1.0;
    for (const auto& th : p.inhomogeneities)
        prod *= sinh(u - th + p.eta) * sinh(u + th + p.eta) / se2;
    return prod;
}

Complex abar_func_deriv(Complex u, const ModelParams& p) {
    const Complex se2 = sinh(p.eta) * sinh(p.eta);
    const std::size_t n = p.inhomogeneities.size();
    Complex sum = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        Complex term = (cosh(u - p.inhomogeneities[l] + p.eta) * sinh(u + p.inhomogeneities[l] + p.eta) +
                        sinh(u - p.inhomogeneities[l] + p.eta) * cosh(u + p.inhomogeneities[l] + p.eta)) /
                       se2;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == l) continue;
            term *= sinh(u - p.inhomogeneities[i] + p.eta) * sinh(u + p.inhomogeneities[i] + p.eta) / se2;
        }
        sum += term;
    }
    return sum;
}

Complex a_func(Complex u, const ModelParams& p) {
    const Complex den = sinh(2.0 * u + p.eta);
    require(std::abs(den) > 1e-12, ErrorKind::singularity, "a(u) denominator sinh(2u+eta) vanishes");
    return -4.0 * sinh(2.0 * u + 2.0 * p.eta) / den * sinh(u - p.alpha_minus) *
           cosh(u - p.beta_minus) * sinh(u - p.alpha_plus) * cosh(u - p.beta_plus) * abar_func(u, p);
}

Complex d_func(Complex u, const ModelParams& p) { return a_func(-u - p.eta, p); }

Complex a_func_deriv(Complex u, const ModelParams& p) {
    const Complex den = sinh(2.0 * u + p.eta);
    require(std::abs(den) > 1e-12, ErrorKind::singularity, "a(u) denominator sinh(2u+eta) vanishes");
    // a = g / den with g the product of the remaining factors.
    const Complex f1 = sinh(2.0 * u + 2.0 * p.eta);
    const Complex f3 = sinh(u - p.alpha_minus);
    const Complex f4 = cosh(u - p.beta_minus);
    const Complex f5 = sinh(u - p.alpha_plus);
    const Complex f6 = cosh(u - p.beta_plus);
    const Complex ab = abar_func(u, p);

    const Complex g = -4.0 * f1 * f3 * f4 * f5 * f6 * ab;
    Complex gp = 0.0;
    gp += 2.0 * cosh(2.0 * u + 2.0 * p.eta) * f3 * f4 * f5 * f6 * ab;
    gp += f1 * cosh(u - p.alpha_minus) * f4 * f5 * f6 * ab;
    gp += f1 * f3 * sinh(u - p.beta_minus) * f5 * f6 * ab;
    gp += f1 * f3 * f4 * cosh(u - p.alpha_plus) * f6 * ab;
    gp += f1 * f3 * f4 * f5 * sinh(u - p.beta_plus) * ab;
    gp += f1 * f3 * f4 * f5 * f6 * abar_func_deriv(u, p);
    gp *= -4.0;

    const Complex denp = 2.0 * cosh(2.0 * u + p.eta);
    return (gp * den - g * denp) / (den * den);
}

Complex d_func_deriv(Complex u, const ModelParams& p) { return -a_func_deriv(-u - p.eta, p); }

Complex c_const(const ModelParams& p) {
    return cosh(p.alpha_minus + p.beta_minus + p.alpha_plus + p.beta_plus +
                (1.0 + static_cast<double>(p.n_sites)) * p.eta) -
           cosh(p.theta_minus - p.theta_plus);
}

Complex q_func(Complex u, std::span<const Complex> roots, Complex eta) {
    const Complex se2 = sinh(eta) * sinh(eta);
    Complex prod = 1.0;
    for (const auto& l : roots) prod *= sinh(u - l) * sinh(u + l + eta) / se2;
    return prod;
}

Complex q_func_deriv(Complex u, std::span<const Complex> roots, Complex eta) {
    const Complex se2 = sinh(eta) * sinh(eta);
    Complex sum = 0.0;
    for (std::size_t k = 0; k < roots.size(); ++k) {
        Complex term = (cosh(u - roots[k]) * sinh(u + roots[k] + eta) +
                        sinh(u - roots[k]) * cosh(u + roots[k] + eta)) /
                       se2;
        for (std::size_t i = 0; i < roots.size(); ++i) {
            if (i == k) continue;
            term *= sinh(u - roots[i]) * sinh(u + roots[i] + eta) / se2;
        }
        sum += term;
    }
    return sum;
}

Complex q_func_root_deriv(Complex u, std::span<const Complex> roots, Complex eta, std::size_t k) {
    const Complex se2 = sinh(eta) * sinh(eta);
    Complex term = (-cosh(u - roots[k]) * sinh(u + roots[k] + eta) +
                    sinh(u - roots[k]) * cosh(u + roots[k] + eta)) /
                   se2;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (i == k) continue;
        term *= sinh(u - roots[i]) * sinh(u + roots[i] + eta) / se2;
    }
    return term;
}

Complex tq_inhomogeneous_term(Complex u, const ModelParams& p) {
    return 2.0 * c_const(p) * sinh(2.0 * u) * sinh(2.0 * u + 2.0 * p.eta) * abar_func(u, p) *
           abar_func(-u - p.eta, p);
}

Complex tq_inhomogeneous_term_deriv(Complex u, const ModelParams& p) {
    const Complex c = c_const(p);
    const Complex s1 = sinh(2.0 * u);
    const Complex s2 = sinh(2.0 * u + 2.0 * p.eta);
    const Complex ab = abar_func(u, p);
    const Complex abr = abar_func(-u - p.eta, p);
    Complex sum = 0.0;
    sum += 2.0 * cosh(2.0 * u) * s2 * ab * abr;
    sum += s1 * 2.0 * cosh(2.0 * u + 2.0 * p.eta) * ab * abr;
    sum += s1 * s2 * abar_func_deriv(u, p) * abr;
    sum -= s1 * s2 * ab * abar_func_deriv(-u - p.eta, p);
    return 2.0 * c * sum;
}

Complex lambda_tq(Complex u, const TQSolution& tq, const ModelParams& p) {
    const Complex q0 = q_func(u, tq.roots, p.eta);
    require(std::abs(q0) > 1e-12, ErrorKind::singularity,
            "lambda_tq evaluated at a zero of the Q-function");
    const Complex qm = q_func(u - p.eta, tq.roots, p.eta);
    const Complex qp = q_func(u + p.eta, tq.roots, p.eta);
    return a_func(u, p) * qm / q0 + d_func(u, p) * qp / q0 + tq_inhomogeneous_term(u, p) / q0;
}

std::vector<BaeResidual> bae_residual(std::span<const Complex> roots, const ModelParams& p) {
    require(roots.size() == static_cast<std::size_t>(p.n_sites), ErrorKind::precondition,
            "bae_residual expects N roots");
    std::vector<BaeResidual> out;
    out.reserve(roots.size());
    for (const auto& l : roots) {
        const Complex t1 = a_func(l, p) * q_func(l - p.eta, roots, p.eta);
        const Complex t2 = d_func(l, p) * q_func(l + p.eta, roots, p.eta);
        const Complex t3 = tq_inhomogeneous_term(l, p);
        BaeResidual r;
        r.value = t1 + t2 + t3;
        r.scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
        out.push_back(r);
    }
    return out;
}

void require_nondegenerate_c(const ModelParams& p, double cutoff) {
    require(std::abs(c_const(p)) > cutoff, ErrorKind::degenerate,
            "boundary constant c vanishes; the inhomogeneous T-Q pipeline is degenerate here");
}

CheckReport verify_operator_identities(const ModelParams& p, uint64_t seed,
                                       double tol_identity, double tol_asym) {
    p.validate();
    require(p.n_sites <= 4, ErrorKind::size, "operator-identity suite capped at N <= 4");
    CheckReport rep;
    const std::string suite = "operator-identities";
    const std::size_t dim = p.dim();
    const ComplexMatrix id = ComplexMatrix::identity(dim);

    std::mt19937_64 eng(seed);
    auto uniform = [&](double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(eng() >> 11) * 0x1.0p-53;
    };
    const Complex u_probe(uniform(0.15, 0.85), uniform(-0.45, 0.45));

    for (int j = 0; j < p.n_sites; ++j) {
        const Complex th = p.inhomogeneities[j];
        const ComplexMatrix prod = transfer_matrix(th, p) * transfer_matrix(th - p.eta, p);
        const Complex scalar = a_func(th, p) * d_func(th - p.eta, p);
        const double scale = std::max(prod.max_abs(), std::abs(scalar));
        rep.add(suite, "product_identity_" + std::to_string(j + 1),
                "t(theta_j) t(theta_j - eta) = a(theta_j) d(theta_j - eta) id",
                max_abs_diff(prod, scalar * id), scale, tol_identity);
    }

    const ComplexMatrix tu = transfer_matrix(u_probe, p);
    {
        const ComplexMatrix tc = transfer_matrix(-u_probe - p.eta, p);
        rep.add(suite, "crossing", "t(-u-eta) = t(u)", max_abs_diff(tu, tc),
                std::max(tu.max_abs(), tc.max_abs()), tol_identity);
    }
    {
        const ComplexMatrix tp = transfer_matrix(u_probe + Complex(0.0, kPi), p);
        rep.add(suite, "periodicity", "t(u + i pi) = t(u)", max_abs_diff(tu, tp),
                std::max(tu.max_abs(), tp.max_abs()), tol_identity);
    }
    {
        const ComplexMatrix t0 = transfer_matrix(Complex(0.0), p);
        Complex prod = 1.0;
        for (const auto& th : p.inhomogeneities)
            prod *= sinh(p.eta - th) * sinh(p.eta + th) / (sinh(p.eta) * sinh(p.eta));
        const Complex scalar = -8.0 * sinh(p.alpha_minus) * cosh(p.beta_minus) *
                               sinh(p.alpha_plus) * cosh(p.beta_plus) * cosh(p.eta) * prod;
        rep.add(suite, "t_at_zero", "t(0) equals the closed boundary scalar",
                max_abs_diff(t0, scalar * id), std::abs(scalar), tol_identity);
    }
    {
        const Complex half(0.0, kPi / 2.0);
        const ComplexMatrix th = transfer_matrix(half, p);
        Complex prod = 1.0;
        for (const auto& t : p.inhomogeneities)
            prod *= sinh(half + t + p.eta) * sinh(half + t - p.eta) / (sinh(p.eta) * sinh(p.eta));
        const Complex scalar = -8.0 * cosh(p.alpha_minus) * sinh(p.beta_minus) *
                               cosh(p.alpha_plus) * sinh(p.beta_plus) * cosh(p.eta) * prod;
        rep.add(suite, "t_at_half_period", "t(i pi/2) equals the closed boundary scalar",
                max_abs_diff(th, scalar * id), std::abs(scalar), tol_identity);
    }
    {
        const Complex want = -cosh(p.theta_minus - p.theta_plus);
        const double pref = std::pow(2.0, 2 * p.n_sites + 1);
        const Complex sepow = std::pow(sinh(p.eta), 2 * p.n_sites);
        for (int sign : {+1, -1}) {
            const Complex u(20.0 * sign, 0.3);
            const Complex expo = static_cast<double>(2 * p.n_sites + 4) * u +
                                 static_cast<double>(p.n_sites + 2) * p.eta;
            const Complex mult = pref * sepow * exp(-static_cast<double>(sign) * expo);
            const ComplexMatrix scaled = mult * transfer_matrix(u, p);
            rep.add(suite, sign > 0 ? "asymptotic_plus" : "asymptotic_minus",
                    "leading coefficient of t(u) at large |Re u|",
                    max_abs_diff(scaled, want * id), std::abs(want), tol_asym);
        }
    }
    return rep;
}

} // namespace xxz
