#include "xxz/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace xxz {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

} // namespace

// ----------------------------------------------------------------------------
// ComplexMatrix
// ----------------------------------------------------------------------------

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, Complex fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    require(rows >= 1 && cols >= 1, ErrorKind::dimension, "matrix dimensions must be positive");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    require(rows_ == rhs.rows_ && cols_ == rhs.cols_, ErrorKind::dimension, "shape mismatch in +=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    require(rows_ == rhs.rows_ && cols_ == rhs.cols_, ErrorKind::dimension, "shape mismatch in -=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (auto& v : data_) v *= s;
    return *this;
}

ComplexMatrix ComplexMatrix::transposed() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double s = 0.0;
    for (const auto& v : data_) s = std::max(s, std::abs(v));
    return s;
}

bool ComplexMatrix::all_finite() const {
    for (const auto& v : data_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.cols() == b.rows(), ErrorKind::dimension, "shape mismatch in matrix product");
    ComplexMatrix out(a.rows(), b.cols());
    const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t l = 0; l < k; ++l) {
            const Complex ail = a(i, l);
            if (ail == Complex(0.0, 0.0)) continue;
            const Complex* brow = &b.data()[l * m];
            Complex* orow = &out.data()[i * m];
            for (std::size_t j = 0; j < m; ++j) orow[j] += ail * brow[j];
        }
    }
    return out;
}

ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
ComplexMatrix operator*(ComplexMatrix m, Complex s) { return m *= s; }

std::vector<Complex> operator*(const ComplexMatrix& m, const std::vector<Complex>& v) {
    require(m.cols() == v.size(), ErrorKind::dimension, "shape mismatch in matrix-vector product");
    std::vector<Complex> out(m.rows(), Complex(0.0, 0.0));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex(0.0, 0.0)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::dimension,
            "shape mismatch in max_abs_diff");
    double s = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        s = std::max(s, std::abs(a.data()[i] - b.data()[i]));
    return s;
}

double vec_norm(std::span<const Complex> v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
}

double vec_max_abs(std::span<const Complex> v) {
    double s = 0.0;
    for (const auto& x : v) s = std::max(s, std::abs(x));
    return s;
}

// ----------------------------------------------------------------------------
// Eigendecomposition: balance -> Hessenberg -> shifted QR -> Schur vectors
// ----------------------------------------------------------------------------

namespace {

// Osborne balancing with powers of two; returns the diagonal scaling d such
// that the balanced matrix is D^-1 A D.
std::vector<double> balance_in_place(ComplexMatrix& a) {
    const std::size_t n = a.rows();
    std::vector<double> d(n, 1.0);
    bool converged = false;
    for (int pass = 0; pass < 32 && !converged; ++pass) {
        converged = true;
        for (std::size_t i = 0; i < n; ++i) {
            double row = 0.0, col = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                row += std::abs(a(i, j));
                col += std::abs(a(j, i));
            }
            if (row == 0.0 || col == 0.0) continue;
            double f = 1.0;
            const double s = row + col;
            while (col < row / 2.0) {
                col *= 2.0;
                row /= 2.0;
                f *= 2.0;
            }
            while (col >= row * 2.0) {
                col /= 2.0;
                row *= 2.0;
                f /= 2.0;
            }
            if (row + col < 0.95 * s && f != 1.0) {
                converged = false;
                d[i] *= f;
                for (std::size_t j = 0; j < n; ++j) a(i, j) /= f;
                for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
    return d;
}

// Householder reduction to upper Hessenberg form; q accumulates the
// similarity transform so that a_in = q * h * q^H on exit.
void hessenberg_in_place(ComplexMatrix& h, ComplexMatrix& q) {
    const std::size_t n = h.rows();
    q = ComplexMatrix::identity(n);
    if (n < 3) return;
    std::vector<Complex> v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double colnorm = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) colnorm += std::norm(h(i, k));
        colnorm = std::sqrt(colnorm);
        if (colnorm <= 0.0) continue;
        Complex alpha = h(k + 1, k);
        Complex beta = (std::abs(alpha) > 0.0) ? -(alpha / std::abs(alpha)) * colnorm
                                               : Complex(-colnorm, 0.0);
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] = h(i, k);
            if (i == k + 1) v[i] -= beta;
            vnorm2 += std::norm(v[i]);
        }
        if (vnorm2 <= 0.0) continue;
        const double tau = 2.0 / vnorm2;
        // H = I - tau v v^H applied from the left (rows k+1..n-1) ...
        for (std::size_t j = k; j < n; ++j) {
            Complex dot = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * h(i, j);
            dot *= tau;
            for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= dot * v[i];
        }
        // ... and from the right (cols k+1..n-1).
        for (std::size_t i = 0; i < n; ++i) {
            Complex dot = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) dot += h(i, j) * v[j];
            dot *= tau;
            for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= dot * std::conj(v[j]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            Complex dot = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) dot += q(i, j) * v[j];
            dot *= tau;
            for (std::size_t j = k + 1; j < n; ++j) q(i, j) -= dot * std::conj(v[j]);
        }
        h(k + 1, k) = beta;
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
    }
}

struct Givens {
    Complex c1, c2; // top row of the unitary rotation
};

// Rotation g with g * (a, b)^T = (r, 0)^T.
Givens make_givens(Complex a, Complex b) {
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    if (n == 0.0) return {Complex(1.0, 0.0), Complex(0.0, 0.0)};
    return {std::conj(a) / n, std::conj(b) / n};
}

// Wilkinson shift: eigenvalue of the trailing 2x2 block closest to its
// bottom-right entry.
Complex wilkinson_shift(const ComplexMatrix& h, std::size_t hi) {
    const Complex a = h(hi - 1, hi - 1);
    const Complex b = h(hi - 1, hi);
    const Complex c = h(hi, hi - 1);
    const Complex d = h(hi, hi);
    const Complex tr = a + d;
    const Complex det = a * d - b * c;
    const Complex disc = std::sqrt(tr * tr - 4.0 * det);
    const Complex l1 = 0.5 * (tr + disc);
    const Complex l2 = 0.5 * (tr - disc);
    return (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;
}

// Shifted QR on the Hessenberg matrix, Givens based, accumulating z. On
// success h is upper triangular (complex Schur form of the balanced input).
void schur_in_place(ComplexMatrix& h, ComplexMatrix& z, const NumericSettings& settings) {
    const std::size_t n = h.rows();
    if (n == 1) return;
    const double hnorm = std::max(h.frobenius_norm(), std::numeric_limits<double>::min());
    std::size_t hi = n - 1;
    int iter_this_eig = 0;
    std::vector<Givens> rot(n);
    while (true) {
        // Deflate converged subdiagonal entries.
        while (hi > 0) {
            const double sub = std::abs(h(hi, hi - 1));
            const double local = std::abs(h(hi - 1, hi - 1)) + std::abs(h(hi, hi));
            if (sub <= kEps * std::max(local, 1e-3 * hnorm)) {
                h(hi, hi - 1) = 0.0;
                --hi;
                iter_this_eig = 0;
            } else {
                break;
            }
        }
        if (hi == 0) break;
        // Find the active window [lo, hi].
        std::size_t lo = hi;
        while (lo > 0) {
            const double sub = std::abs(h(lo, lo - 1));
            const double local = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
            if (sub <= kEps * std::max(local, 1e-3 * hnorm)) {
                h(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (++iter_this_eig > settings.max_sweeps_per_eigenvalue)
            throw Error(ErrorKind::convergence,
                        "QR iteration failed to converge at index " + std::to_string(hi));
        Complex mu = (iter_this_eig % 12 == 0)
                         ? h(hi, hi) + Complex(0.75 * std::abs(h(hi, hi - 1)), 0.0)
                         : wilkinson_shift(h, hi);
        for (std::size_t i = lo; i <= hi; ++i) h(i, i) -= mu;
        // QR factorization of the shifted window by Givens rotations.
        for (std::size_t k = lo; k < hi; ++k) {
            const Givens g = make_givens(h(k, k), h(k + 1, k));
            rot[k] = g;
            for (std::size_t j = k; j < n; ++j) {
                const Complex t1 = h(k, j);
                const Complex t2 = h(k + 1, j);
                h(k, j) = g.c1 * t1 + g.c2 * t2;
                h(k + 1, j) = -std::conj(g.c2) * t1 + std::conj(g.c1) * t2;
            }
        }
        // Multiply by the adjoint rotations from the right: h <- R G^H.
        for (std::size_t k = lo; k < hi; ++k) {
            const Givens g = rot[k];
            const std::size_t top = std::min(hi, k + 1);
            for (std::size_t i = 0; i <= top; ++i) {
                const Complex t1 = h(i, k);
                const Complex t2 = h(i, k + 1);
                h(i, k) = t1 * std::conj(g.c1) + t2 * std::conj(g.c2);
                h(i, k + 1) = -t1 * g.c2 + t2 * g.c1;
            }
            for (std::size_t i = 0; i < n; ++i) {
                const Complex t1 = z(i, k);
                const Complex t2 = z(i, k + 1);
                z(i, k) = t1 * std::conj(g.c1) + t2 * std::conj(g.c2);
                z(i, k + 1) = -t1 * g.c2 + t2 * g.c1;
            }
        }
        for (std::size_t i = lo; i <= hi; ++i) h(i, i) += mu;
    }
    // Clean below-diagonal dust left by the rotations.
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) h(i, j) = 0.0;
}

// Right eigenvector of the upper triangular t for the eigenvalue at index k,
// by back-substitution with small-denominator regularization.
std::vector<Complex> schur_vector(const ComplexMatrix& t, std::size_t k, double tnorm) {
    std::vector<Complex> y(t.rows(), Complex(0.0, 0.0));
    const Complex lam = t(k, k);
    const double smallden = std::max(kEps * tnorm, std::numeric_limits<double>::min());
    y[k] = 1.0;
    for (std::size_t ii = k; ii-- > 0;) {
        Complex acc = 0.0;
        for (std::size_t j = ii + 1; j <= k; ++j) acc += t(ii, j) * y[j];
        Complex den = t(ii, ii) - lam;
        if (std::abs(den) < smallden) den = Complex(smallden, 0.0);
        y[ii] = -acc / den;
        const double mag = std::abs(y[ii]);
        if (mag > 1e250) {
            for (std::size_t j = ii; j <= k; ++j) y[j] /= mag;
        }
    }
    return y;
}

} // namespace

EigenDecomposition eig_general(const ComplexMatrix& a, const NumericSettings& settings) {
    require(a.rows() == a.cols(), ErrorKind::dimension, "eig_general requires a square matrix");
    require(a.rows() <= 4096, ErrorKind::size, "eig_general dimension cap is 4096");
    require(a.all_finite(), ErrorKind::precondition, "eig_general input has non-finite entries");
    const std::size_t n = a.rows();

    ComplexMatrix h = a;
    const std::vector<double> d = balance_in_place(h);
    ComplexMatrix z;
    hessenberg_in_place(h, z);
    schur_in_place(h, z, settings);

    const double anorm = std::max(a.frobenius_norm(), std::numeric_limits<double>::min());
    const double tnorm = h.frobenius_norm();

    struct Pair {
        Complex value;
        std::vector<Complex> vec;
        double residual;
    };
    std::vector<Pair> pairs(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Complex> y = schur_vector(h, k, tnorm);
        std::vector<Complex> v(n, Complex(0.0, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            Complex acc = 0.0;
            for (std::size_t j = 0; j <= k; ++j) acc += z(i, j) * y[j];
            v[i] = acc * d[i]; // undo balancing
        }
        const double nv = vec_norm(v);
        require(nv > 0.0, ErrorKind::convergence,
                "zero Schur vector at index " + std::to_string(k));
        for (auto& x : v) x /= nv;
        pairs[k].value = h(k, k);
        pairs[k].vec = std::move(v);
    }

    auto residual_of = [&](const Pair& p) {
        std::vector<Complex> r = a * p.vec;
        for (std::size_t i = 0; i < n; ++i) r[i] -= p.value * p.vec[i];
        return vec_norm(r);
    };

    for (auto& p : pairs) {
        p.residual = residual_of(p);
        // One or two inverse-iteration passes when back-substitution was not
        // accurate enough (happens for tight eigenvalue clusters).
        for (int polish = 0; polish < 2 && p.residual > settings.eig_polish_rel * anorm; ++polish) {
            ComplexMatrix shifted = a;
            const double nudge = kEps * anorm;
            for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= p.value + Complex(nudge, nudge);
            LuFactorization f;
            try {
                f = lu_factor(shifted);
            } catch (const Error&) {
                break;
            }
            std::vector<Complex> w = lu_solve(f, p.vec);
            const double nw = vec_norm(w);
            if (!(nw > 0.0) || !std::isfinite(nw)) break;
            for (auto& x : w) x /= nw;
            Pair candidate{p.value, std::move(w), 0.0};
            candidate.residual = residual_of(candidate);
            if (candidate.residual < p.residual) p = std::move(candidate);
        }
    }

    std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
        if (x.value.real() != y.value.real()) return x.value.real() < y.value.real();
        return x.value.imag() < y.value.imag();
    });

    EigenDecomposition out;
    out.values.resize(n);
    out.residuals.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = pairs[k].value;
        out.residuals[k] = pairs[k].residual;
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = pairs[k].vec[i];
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(out.values[i] - out.values[j]) < settings.cluster_rel * anorm)
                out.clusters.emplace_back(static_cast<int>(i), static_cast<int>(j));
    return out;
}

// ----------------------------------------------------------------------------
// Polynomial roots via the companion matrix
// ----------------------------------------------------------------------------

std::vector<Complex> poly_roots(std::span<const Complex> coeffs, const NumericSettings& settings) {
    require(coeffs.size() >= 2, ErrorKind::precondition, "poly_roots requires degree >= 1");
    const std::size_t deg = coeffs.size() - 1;
    const Complex lead = coeffs[deg];
    double scale = 0.0;
    for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
    require(std::abs(lead) > 1e-14 * scale, ErrorKind::degenerate,
            "poly_roots leading coefficient vanishes");
    if (deg == 1) return {-coeffs[0] / lead};

    ComplexMatrix comp(deg, deg);
    for (std::size_t i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (std::size_t i = 0; i < deg; ++i) comp(i, deg - 1) = -coeffs[i] / lead;
    return eig_general(comp, settings).values;
}

std::vector<Complex> poly_from_roots(std::span<const Complex> roots) {
    std::vector<Complex> coeffs{Complex(1.0, 0.0)};
    for (const auto& r : roots) {
        std::vector<Complex> next(coeffs.size() + 1, Complex(0.0, 0.0));
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            next[k + 1] += coeffs[k];
            next[k] -= r * coeffs[k];
        }
        coeffs = std::move(next);
    }
    return coeffs;
}

Complex poly_eval(std::span<const Complex> coeffs, Complex x) {
    Complex acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
    return acc;
}

// ----------------------------------------------------------------------------
// Least squares by Householder QR
// ----------------------------------------------------------------------------

LstsqResult lstsq(const ComplexMatrix& a, std::span<const Complex> b, const NumericSettings& settings) {
    const std::size_t m = a.rows(), n = a.cols();
    require(m >= n, ErrorKind::dimension, "lstsq requires rows >= cols");
    require(b.size() == m, ErrorKind::dimension, "lstsq rhs length mismatch");

    ComplexMatrix r = a;
    std::vector<Complex> rhs(b.begin(), b.end());
    std::vector<Complex> v(m);
    for (std::size_t k = 0; k < n; ++k) {
        double colnorm = 0.0;
        for (std::size_t i = k; i < m; ++i) colnorm += std::norm(r(i, k));
        colnorm = std::sqrt(colnorm);
        if (colnorm == 0.0) continue;
        const Complex alpha = r(k, k);
        const Complex beta = (std::abs(alpha) > 0.0) ? -(alpha / std::abs(alpha)) * colnorm
                                                     : Complex(-colnorm, 0.0);
        double vnorm2 = 0.0;
        for (std::size_t i = k; i < m; ++i) {
            v[i] = r(i, k);
            if (i == k) v[i] -= beta;
            vnorm2 += std::norm(v[i]);
        }
        if (vnorm2 == 0.0) continue;
        const double tau = 2.0 / vnorm2;
        for (std::size_t j = k; j < n; ++j) {
            Complex dot = 0.0;
            for (std::size_t i = k; i < m; ++i) dot += std::conj(v[i]) * r(i, j);
            dot *= tau;
            for (std::size_t i = k; i < m; ++i) r(i, j) -= dot * v[i];
        }
        Complex dot = 0.0;
        for (std::size_t i = k; i < m; ++i) dot += std::conj(v[i]) * rhs[i];
        dot *= tau;
        for (std::size_t i = k; i < m; ++i) rhs[i] -= dot * v[i];
        r(k, k) = beta;
        for (std::size_t i = k + 1; i < m; ++i) r(i, k) = 0.0;
    }

    double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        const double dk = std::abs(r(k, k));
        dmax = std::max(dmax, dk);
        dmin = std::min(dmin, dk);
    }
    require(dmin > settings.rank_rel * dmax, ErrorKind::conditioning,
            "lstsq matrix is rank deficient within tolerance");

    LstsqResult out;
    out.condition_estimate = (dmin > 0.0) ? dmax / dmin : std::numeric_limits<double>::infinity();
    out.x.assign(n, Complex(0.0, 0.0));
    for (std::size_t ii = n; ii-- > 0;) {
        Complex acc = rhs[ii];
        for (std::size_t j = ii + 1; j < n; ++j) acc -= r(ii, j) * out.x[j];
        out.x[ii] = acc / r(ii, ii);
    }
    double tail = 0.0;
    for (std::size_t i = n; i < m; ++i) tail += std::norm(rhs[i]);
    out.residual_norm = std::sqrt(tail);
    return out;
}

// ----------------------------------------------------------------------------
// LU with partial pivoting
// ----------------------------------------------------------------------------

LuFactorization lu_factor(const ComplexMatrix& a) {
    require(a.rows() == a.cols(), ErrorKind::dimension, "lu_factor requires a square matrix");
    const std::size_t n = a.rows();
    LuFactorization f;
    f.lu = a;
    f.pivots.resize(n);
    f.sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(f.lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double cand = std::abs(f.lu(i, k));
            if (cand > best) {
                best = cand;
                p = i;
            }
        }
        require(best > 0.0, ErrorKind::singularity, "lu_factor: exactly singular matrix");
        f.pivots[k] = static_cast<int>(p);
        if (p != k) {
            f.sign = -f.sign;
            for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(p, j));
        }
        const Complex piv = f.lu(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex factor = f.lu(i, k) / piv;
            f.lu(i, k) = factor;
            if (factor == Complex(0.0, 0.0)) continue;
            for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= factor * f.lu(k, j);
        }
    }
    return f;
}

std::vector<Complex> lu_solve(const LuFactorization& f, std::span<const Complex> b) {
    const std::size_t n = f.lu.rows();
    require(b.size() == n, ErrorKind::dimension, "lu_solve rhs length mismatch");
    std::vector<Complex> x(b.begin(), b.end());
    for (std::size_t k = 0; k < n; ++k)
        std::swap(x[k], x[static_cast<std::size_t>(f.pivots[k])]);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = k + 1; i < n; ++i) x[i] -= f.lu(i, k) * x[k];
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= f.lu(ii, j) * x[j];
        x[ii] /= f.lu(ii, ii);
    }
    return x;
}

Complex lu_det(const LuFactorization& f) {
    Complex det(static_cast<double>(f.sign), 0.0);
    for (std::size_t i = 0; i < f.lu.rows(); ++i) det *= f.lu(i, i);
    return det;
}

} // namespace xxz
