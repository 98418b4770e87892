#include "xxz/model.hpp"

#include <cmath>

namespace xxz {

namespace {

using std::cosh;
using std::sinh;

ModelParams flipped_for_kplus(const ModelParams& p) {
    ModelParams q = p;
    q.alpha_minus = -p.alpha_plus;
    q.beta_minus = -p.beta_plus;
    q.theta_minus = p.theta_plus;
    return q;
}

} // namespace

void ModelParams::validate() const {
    require(n_sites >= 1, ErrorKind::precondition, "n_sites must be positive");
    require(n_sites <= 12, ErrorKind::size, "n_sites above the memory budget (max 12)");
    require(inhomogeneities.size() == static_cast<std::size_t>(n_sites), ErrorKind::precondition,
            "inhomogeneity count must equal n_sites");
    require(std::abs(sinh(eta)) > 1e-6, ErrorKind::singularity,
            "sinh(eta) too close to zero");
    require(std::abs(sinh(alpha_minus) * cosh(beta_minus)) > 1e-8, ErrorKind::singularity,
            "left boundary denominator sinh(alpha-)cosh(beta-) vanishes");
    require(std::abs(sinh(alpha_plus) * cosh(beta_plus)) > 1e-8, ErrorKind::singularity,
            "right boundary denominator sinh(alpha+)cosh(beta+) vanishes");
}

bool ModelParams::generic_inhomogeneities(double tol) const {
    const std::size_t n = inhomogeneities.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Complex ti = inhomogeneities[i];
            const Complex tj = inhomogeneities[j];
            if (i != j && std::abs(ti - tj) <= tol) return false;
            if (j >= i && std::abs(ti + tj) <= tol) return false;
            if (std::abs(ti - tj - eta) <= tol) return false;
            if (std::abs(ti - tj + eta) <= tol) return false;
            if (std::abs(ti + tj - eta) <= tol) return false;
            if (std::abs(ti + tj + eta) <= tol) return false;
        }
    }
    return true;
}

void ModelParams::require_generic_inhomogeneities(double tol) const {
    require(generic_inhomogeneities(tol), ErrorKind::non_generic,
            "inhomogeneities violate the genericity guards; re-draw parameters");
}

// ----------------------------------------------------------------------------
// R- and K-matrices
// ----------------------------------------------------------------------------

ComplexMatrix r_matrix(Complex u, Complex eta) {
    const Complex se = sinh(eta);
    require(std::abs(se) > 1e-6, ErrorKind::singularity, "sinh(eta) too close to zero");
    ComplexMatrix r(4, 4);
    r(0, 0) = sinh(u + eta) / se;
    r(1, 1) = sinh(u) / se;
    r(1, 2) = 1.0;
    r(2, 1) = 1.0;
    r(2, 2) = sinh(u) / se;
    r(3, 3) = sinh(u + eta) / se;
    return r;
}

ComplexMatrix r_matrix_deriv(Complex u, Complex eta) {
    const Complex se = sinh(eta);
    require(std::abs(se) > 1e-6, ErrorKind::singularity, "sinh(eta) too close to zero");
    ComplexMatrix r(4, 4);
    r(0, 0) = cosh(u + eta) / se;
    r(1, 1) = cosh(u) / se;
    r(2, 2) = cosh(u) / se;
    r(3, 3) = cosh(u + eta) / se;
    return r;
}

ComplexMatrix k_minus(Complex u, const ModelParams& p) {
    ComplexMatrix k(2, 2);
    k(0, 0) = 2.0 * (sinh(p.alpha_minus) * cosh(p.beta_minus) * cosh(u) +
                     cosh(p.alpha_minus) * sinh(p.beta_minus) * sinh(u));
    k(1, 1) = 2.0 * (sinh(p.alpha_minus) * cosh(p.beta_minus) * cosh(u) -
                     cosh(p.alpha_minus) * sinh(p.beta_minus) * sinh(u));
    k(0, 1) = std::exp(p.theta_minus) * sinh(2.0 * u);
    k(1, 0) = std::exp(-p.theta_minus) * sinh(2.0 * u);
    return k;
}

ComplexMatrix k_minus_deriv(Complex u, const ModelParams& p) {
    ComplexMatrix k(2, 2);
    k(0, 0) = 2.0 * (sinh(p.alpha_minus) * cosh(p.beta_minus) * sinh(u) +
                     cosh(p.alpha_minus) * sinh(p.beta_minus) * cosh(u));
    k(1, 1) = 2.0 * (sinh(p.alpha_minus) * cosh(p.beta_minus) * sinh(u) -
                     cosh(p.alpha_minus) * sinh(p.beta_minus) * cosh(u));
    k(0, 1) = 2.0 * std::exp(p.theta_minus) * cosh(2.0 * u);
    k(1, 0) = 2.0 * std::exp(-p.theta_minus) * cosh(2.0 * u);
    return k;
}

ComplexMatrix k_plus(Complex u, const ModelParams& p) {
    return k_minus(-u - p.eta, flipped_for_kplus(p));
}

ComplexMatrix k_plus_deriv(Complex u, const ModelParams& p) {
    return Complex(-1.0, 0.0) * k_minus_deriv(-u - p.eta, flipped_for_kplus(p));
}

// ----------------------------------------------------------------------------
// Tensor-space helpers
// ----------------------------------------------------------------------------

ComplexMatrix pauli(char which) {
    ComplexMatrix s(2, 2);
    switch (which) {
    case 'x':
        s(0, 1) = 1.0;
        s(1, 0) = 1.0;
        break;
    case 'y':
        s(0, 1) = Complex(0.0, -1.0);
        s(1, 0) = Complex(0.0, 1.0);
        break;
    case 'z':
        s(0, 0) = 1.0;
        s(1, 1) = -1.0;
        break;
    default:
        throw Error(ErrorKind::precondition, "unknown Pauli label");
    }
    return s;
}

void apply_one_site_left(const ComplexMatrix& op, int factor, int n_factors, ComplexMatrix& m) {
    require(op.rows() == 2 && op.cols() == 2, ErrorKind::dimension, "one-site operator must be 2x2");
    const std::size_t dim = std::size_t(1) << n_factors;
    require(m.rows() == dim, ErrorKind::dimension, "operand dimension mismatch");
    const int shift = n_factors - 1 - factor;
    const std::size_t cols = m.cols();
    ComplexMatrix out(dim, cols);
    for (std::size_t r = 0; r < dim; ++r) {
        const std::size_t x = (r >> shift) & 1u;
        const std::size_t base = r & ~(std::size_t(1) << shift);
        Complex* orow = &out.data()[r * cols];
        for (std::size_t a = 0; a < 2; ++a) {
            const Complex coef = op(x, a);
            if (coef == Complex(0.0, 0.0)) continue;
            const Complex* srow = &m.data()[(base | (a << shift)) * cols];
            for (std::size_t c = 0; c < cols; ++c) orow[c] += coef * srow[c];
        }
    }
    m = std::move(out);
}

void apply_two_site_left(const ComplexMatrix& op4, int first, int second,
                         int n_factors, ComplexMatrix& m) {
    require(op4.rows() == 4 && op4.cols() == 4, ErrorKind::dimension, "two-site operator must be 4x4");
    require(first != second, ErrorKind::precondition, "two-site factors must differ");
    const std::size_t dim = std::size_t(1) << n_factors;
    require(m.rows() == dim, ErrorKind::dimension, "operand dimension mismatch");
    const int s1 = n_factors - 1 - first;
    const int s2 = n_factors - 1 - second;
    const std::size_t cols = m.cols();
    ComplexMatrix out(dim, cols);
    for (std::size_t r = 0; r < dim; ++r) {
        const std::size_t x = (r >> s1) & 1u;
        const std::size_t y = (r >> s2) & 1u;
        const std::size_t base = r & ~(std::size_t(1) << s1) & ~(std::size_t(1) << s2);
        Complex* orow = &out.data()[r * cols];
        for (std::size_t a = 0; a < 2; ++a) {
            for (std::size_t b = 0; b < 2; ++b) {
                const Complex coef = op4(2 * x + y, 2 * a + b);
                if (coef == Complex(0.0, 0.0)) continue;
                const Complex* srow = &m.data()[((base | (a << s1)) | (b << s2)) * cols];
                for (std::size_t c = 0; c < cols; ++c) orow[c] += coef * srow[c];
            }
        }
    }
    m = std::move(out);
}

void apply_two_site_right(const ComplexMatrix& op4, int first, int second,
                          int n_factors, ComplexMatrix& m) {
    require(op4.rows() == 4 && op4.cols() == 4, ErrorKind::dimension, "two-site operator must be 4x4");
    require(first != second, ErrorKind::precondition, "two-site factors must differ");
    const std::size_t dim = std::size_t(1) << n_factors;
    require(m.cols() == dim, ErrorKind::dimension, "operand dimension mismatch");
    const int s1 = n_factors - 1 - first;
    const int s2 = n_factors - 1 - second;
    const std::size_t rows = m.rows();
    ComplexMatrix out(rows, dim);
    for (std::size_t c = 0; c < dim; ++c) {
        const std::size_t x = (c >> s1) & 1u;
        const std::size_t y = (c >> s2) & 1u;
        const std::size_t base = c & ~(std::size_t(1) << s1) & ~(std::size_t(1) << s2);
        for (std::size_t a = 0; a < 2; ++a) {
            for (std::size_t b = 0; b < 2; ++b) {
                const Complex coef = op4(2 * a + b, 2 * x + y);
                if (coef == Complex(0.0, 0.0)) continue;
                const std::size_t src = (base | (a << s1)) | (b << s2);
                for (std::size_t r = 0; r < rows; ++r) out(r, c) += coef * m(r, src);
            }
        }
    }
    m = std::move(out);
}

ComplexMatrix embed_one_site(const ComplexMatrix& op, int factor, int n_factors) {
    ComplexMatrix m = ComplexMatrix::identity(std::size_t(1) << n_factors);
    apply_one_site_left(op, factor, n_factors, m);
    return m;
}

ComplexMatrix embed_two_site(const ComplexMatrix& op4, int first, int second, int n_factors) {
    ComplexMatrix m = ComplexMatrix::identity(std::size_t(1) << n_factors);
    apply_two_site_left(op4, first, second, n_factors, m);
    return m;
}

ComplexMatrix trace_out_first_factor(const ComplexMatrix& m) {
    const std::size_t dim = m.rows() / 2;
    require(m.rows() == 2 * dim && m.cols() == m.rows(), ErrorKind::dimension,
            "partial trace needs a square even-dimensional matrix");
    ComplexMatrix out(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) out(i, j) = m(i, j) + m(dim + i, dim + j);
    return out;
}

// ----------------------------------------------------------------------------
// Monodromies and the transfer matrix
// ----------------------------------------------------------------------------

namespace {

// Full aux (x) quantum product; aux is factor 0, site j is factor j.
ComplexMatrix one_row_full(Complex u, const ModelParams& p, bool hatted) {
    p.validate();
    const int nf = p.n_sites + 1;
    ComplexMatrix m = ComplexMatrix::identity(std::size_t(1) << nf);
    if (!hatted) {
        for (int j = 1; j <= p.n_sites; ++j)
            apply_two_site_left(r_matrix(u - p.inhomogeneities[j - 1], p.eta), 0, j, nf, m);
    } else {
        for (int j = p.n_sites; j >= 1; --j)
            apply_two_site_left(r_matrix(u + p.inhomogeneities[j - 1], p.eta), j, 0, nf, m);
    }
    return m;
}

AuxMonodromy split_aux_blocks(const ComplexMatrix& full) {
    const std::size_t dim = full.rows() / 2;
    AuxMonodromy out;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            ComplexMatrix blk(dim, dim);
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j) blk(i, j) = full(a * dim + i, b * dim + j);
            out.block[a][b] = std::move(blk);
        }
    return out;
}

ComplexMatrix double_row_full(Complex u, const ModelParams& p) {
    const int nf = p.n_sites + 1;
    ComplexMatrix m = one_row_full(u, p, /*hatted=*/true);
    apply_one_site_left(k_minus(u, p), 0, nf, m);
    for (int j = 1; j <= p.n_sites; ++j)
        apply_two_site_left(r_matrix(u - p.inhomogeneities[j - 1], p.eta), 0, j, nf, m);
    return m;
}

} // namespace

AuxMonodromy one_row_monodromy(Complex u, const ModelParams& p, bool hatted) {
    return split_aux_blocks(one_row_full(u, p, hatted));
}

AuxMonodromy double_row_monodromy(Complex u, const ModelParams& p) {
    return split_aux_blocks(double_row_full(u, p));
}

ComplexMatrix transfer_matrix(Complex u, const ModelParams& p) {
    const int nf = p.n_sites + 1;
    ComplexMatrix m = double_row_full(u, p);
    apply_one_site_left(k_plus(u, p), 0, nf, m);
    return trace_out_first_factor(m);
}

ComplexMatrix transfer_matrix_deriv_at_zero(const ModelParams& p) {
    p.validate();
    const int nf = p.n_sites + 1;
    const int n = p.n_sites;

    struct Factor {
        bool one_site;
        int f1, f2;
        ComplexMatrix value, deriv;
    };
    std::vector<Factor> factors;
    factors.push_back({true, 0, 0, k_plus(Complex(0.0), p), k_plus_deriv(Complex(0.0), p)});
    for (int j = n; j >= 1; --j) {
        const Complex arg = -p.inhomogeneities[j - 1];
        factors.push_back({false, 0, j, r_matrix(arg, p.eta), r_matrix_deriv(arg, p.eta)});
    }
    factors.push_back({true, 0, 0, k_minus(Complex(0.0), p), k_minus_deriv(Complex(0.0), p)});
    for (int j = 1; j <= n; ++j) {
        const Complex arg = p.inhomogeneities[j - 1];
        factors.push_back({false, j, 0, r_matrix(arg, p.eta), r_matrix_deriv(arg, p.eta)});
    }

    const std::size_t full_dim = std::size_t(1) << nf;
    ComplexMatrix sum(full_dim, full_dim);
    for (std::size_t k = 0; k < factors.size(); ++k) {
        ComplexMatrix m = ComplexMatrix::identity(full_dim);
        for (std::size_t i = factors.size(); i-- > 0;) {
            const Factor& f = factors[i];
            const ComplexMatrix& use = (i == k) ? f.deriv : f.value;
            if (f.one_site)
                apply_one_site_left(use, f.f1, nf, m);
            else
                apply_two_site_left(use, f.f1, f.f2, nf, m);
        }
        sum += m;
    }
    return trace_out_first_factor(sum);
}

// ----------------------------------------------------------------------------
// Hamiltonians
// ----------------------------------------------------------------------------

ComplexMatrix hamiltonian_direct(const ModelParams& p) {
    p.validate();
    const int n = p.n_sites;
    const std::size_t dim = p.dim();
    ComplexMatrix h(dim, dim);

    const ComplexMatrix sx = pauli('x'), sy = pauli('y'), sz = pauli('z');
    ComplexMatrix bulk = kron(sx, sx);
    bulk += kron(sy, sy);
    bulk += cosh(p.eta) * kron(sz, sz);
    for (int j = 1; j <= n - 1; ++j) h += embed_two_site(bulk, j - 1, j, n);

    const Complex bl = sinh(p.eta) / (sinh(p.alpha_minus) * cosh(p.beta_minus));
    ComplexMatrix left = cosh(p.alpha_minus) * sinh(p.beta_minus) * sz;
    left += cosh(p.theta_minus) * sx;
    left += Complex(0.0, 1.0) * sinh(p.theta_minus) * sy;
    h += bl * embed_one_site(left, 0, n);

    const Complex br = sinh(p.eta) / (sinh(p.alpha_plus) * cosh(p.beta_plus));
    ComplexMatrix right = cosh(p.alpha_plus) * sinh(p.beta_plus) * sz;
    right -= cosh(p.theta_plus) * sx;
    right -= Complex(0.0, 1.0) * sinh(p.theta_plus) * sy;
    h -= br * embed_one_site(right, n - 1, n);

    return h;
}

ComplexMatrix hamiltonian_from_transfer(const ModelParams& p) {
    p.validate();
    for (const auto& t : p.inhomogeneities)
        require(t == Complex(0.0, 0.0), ErrorKind::precondition,
                "hamiltonian_from_transfer requires zero inhomogeneities");

    const std::size_t dim = p.dim();
    const ComplexMatrix t0 = transfer_matrix(Complex(0.0), p);
    const Complex scalar = t0.trace() / static_cast<double>(dim);
    require(std::abs(scalar) > 1e-10, ErrorKind::singularity,
            "t(0) normalization scalar vanishes");

    ComplexMatrix h = (sinh(p.eta) / scalar) * transfer_matrix_deriv_at_zero(p);
    const Complex offset = static_cast<double>(p.n_sites) * cosh(p.eta) +
                           std::tanh(p.eta) * sinh(p.eta);
    h -= offset * ComplexMatrix::identity(dim);
    return h;
}

} // namespace xxz
