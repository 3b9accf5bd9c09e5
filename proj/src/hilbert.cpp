#include "weakmeas/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "weakmeas/kernels.hpp"

namespace weakmeas {

namespace {
const kernels::KernelTable& K() { return kernels::active(); }
}

/* ---- Ket ---- */

Ket::Ket(std::vector<cplx> amplitudes) : amp_(std::move(amplitudes)) { refresh_flag(); }

Ket Ket::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw DimensionMismatch("basis index out of range");
    std::vector<cplx> a(dim, cplx(0.0));
    a[index] = 1.0;
    return Ket(std::move(a));
}

cplx& Ket::operator[](std::size_t i) {
    normalized_ = false;  // caller may edit; flag refreshed on demand via normalized()
    return amp_[i];
}

double Ket::norm() const {
    return std::sqrt(K().cdotc(amp_.size(), amp_.data(), amp_.data()).real());
}

void Ket::refresh_flag() { normalized_ = std::abs(norm() * norm() - 1.0) <= tol::algebraic; }

Ket Ket::normalized() const {
    const double n = norm();
    if (n <= tol::orthogonal_overlap) throw InvalidOperator("cannot normalize a zero vector");
    Ket out = *this;
    K().scal(out.amp_.size(), cplx(1.0 / n), out.amp_.data());
    out.refresh_flag();
    return out;
}

Ket& Ket::operator+=(const Ket& o) {
    if (dim() != o.dim()) throw DimensionMismatch("ket addition dimension mismatch");
    K().axpy(amp_.size(), cplx(1.0), o.amp_.data(), amp_.data());
    refresh_flag();
    return *this;
}

Ket& Ket::operator-=(const Ket& o) {
    if (dim() != o.dim()) throw DimensionMismatch("ket subtraction dimension mismatch");
    K().axpy(amp_.size(), cplx(-1.0), o.amp_.data(), amp_.data());
    refresh_flag();
    return *this;
}

Ket& Ket::operator*=(cplx a) {
    K().scal(amp_.size(), a, amp_.data());
    refresh_flag();
    return *this;
}

Ket operator+(Ket a, const Ket& b) { return a += b; }
Ket operator-(Ket a, const Ket& b) { return a -= b; }
Ket operator*(cplx a, Ket v) { return v *= a; }

cplx inner(const Ket& a, const Ket& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("inner product dimension mismatch");
    return K().cdotc(a.dim(), a.data(), b.data());
}

double max_abs_diff(const Ket& a, const Ket& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("ket comparison dimension mismatch");
    return K().max_abs_diff(a.dim(), a.data(), b.data());
}

/* ---- LinOp ---- */

LinOp::LinOp(std::size_t dim) : dim_(dim), m_(dim * dim, cplx(0.0)) {}

LinOp::LinOp(std::size_t dim, std::vector<cplx> entries) : dim_(dim), m_(std::move(entries)) {
    if (m_.size() != dim * dim) throw DimensionMismatch("operator entry count != dim^2");
}

LinOp LinOp::identity(std::size_t dim) {
    LinOp e(dim);
    for (std::size_t i = 0; i < dim; ++i) e.at(i, i) = 1.0;
    return e;
}

LinOp LinOp::outer(const Ket& a, const Ket& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("outer product dimension mismatch");
    LinOp r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) r.at(i, j) = a[i] * std::conj(b[j]);
    return r;
}

LinOp LinOp::projector(const Ket& a) {
    const double n2 = a.norm() * a.norm();
    if (n2 <= tol::orthogonal_overlap) throw InvalidOperator("projector onto zero vector");
    LinOp r = outer(a, a);
    r *= cplx(1.0 / n2);
    return r;
}

LinOp LinOp::diagonal(std::vector<double> values) {
    LinOp r(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) r.at(i, i) = values[i];
    return r;
}

LinOp LinOp::adjoint() const {
    LinOp r(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) r.at(i, j) = std::conj(at(j, i));
    return r;
}

Ket LinOp::apply(const Ket& v) const {
    if (v.dim() != dim_) throw DimensionMismatch("operator apply dimension mismatch");
    std::vector<cplx> out(dim_);
    K().gemv(dim_, dim_, m_.data(), v.data(), out.data());
    return Ket(std::move(out));
}

cplx LinOp::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += at(i, i);
    return t;
}

cplx LinOp::expectation(const Ket& v) const { return inner(v, apply(v)); }

double LinOp::max_abs() const {
    double worst = 0.0;
    for (const cplx& z : m_) worst = std::max(worst, std::norm(z));
    return std::sqrt(worst);
}

bool LinOp::is_hermitian(double tol) const { return max_abs_diff(*this, adjoint()) <= tol; }

bool LinOp::is_projector(double tol) const {
    return is_hermitian(tol) && max_abs_diff((*this) * (*this), *this) <= tol;
}

bool LinOp::is_identity(double tol) const {
    return max_abs_diff(*this, identity(dim_)) <= tol;
}

LinOp& LinOp::operator+=(const LinOp& o) {
    if (dim_ != o.dim_) throw DimensionMismatch("operator addition dimension mismatch");
    K().axpy(m_.size(), cplx(1.0), o.m_.data(), m_.data());
    return *this;
}

LinOp& LinOp::operator-=(const LinOp& o) {
    if (dim_ != o.dim_) throw DimensionMismatch("operator subtraction dimension mismatch");
    K().axpy(m_.size(), cplx(-1.0), o.m_.data(), m_.data());
    return *this;
}

LinOp& LinOp::operator*=(cplx a) {
    K().scal(m_.size(), a, m_.data());
    return *this;
}

LinOp operator+(LinOp a, const LinOp& b) { return a += b; }
LinOp operator-(LinOp a, const LinOp& b) { return a -= b; }
LinOp operator*(cplx a, LinOp m) { return m *= a; }

LinOp operator*(const LinOp& a, const LinOp& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("operator product dimension mismatch");
    LinOp c(a.dim());
    K().gemm(a.dim(), a.dim(), a.dim(), a.data(), b.data(), c.data());
    return c;
}

LinOp commutator(const LinOp& a, const LinOp& b) { return a * b - b * a; }

double max_abs_diff(const LinOp& a, const LinOp& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("operator comparison dimension mismatch");
    return K().max_abs_diff(a.dim() * a.dim(), a.data(), b.data());
}

Ket tensor(const Ket& a, const Ket& b) {
    std::vector<cplx> out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
    return Ket(std::move(out));
}

LinOp tensor(const LinOp& a, const LinOp& b) {
    const std::size_t da = a.dim(), db = b.dim();
    LinOp r(da * db);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j) {
            const cplx aij = a.at(i, j);
            if (aij == cplx(0.0)) continue;
            for (std::size_t k = 0; k < db; ++k)
                for (std::size_t l = 0; l < db; ++l)
                    r.at(i * db + k, j * db + l) = aij * b.at(k, l);
        }
    return r;
}

/* ---- eigensolver ---- */

namespace {

double offdiag_fro(const LinOp& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(a.at(i, j));
    return std::sqrt(s);
}

double fro(const LinOp& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) s += std::norm(a.at(i, j));
    return std::sqrt(s);
}

}  // namespace

EigenSystem eigh(const LinOp& a, double hermiticity_tol) {
    if (!a.is_hermitian(hermiticity_tol))
        throw InvalidOperator("eigh requires a Hermitian operator");
    const std::size_t n = a.dim();
    LinOp m = a;
    /* Symmetrize exactly so rounding in the input cannot bias rotations. */
    for (std::size_t i = 0; i < n; ++i) {
        m.at(i, i) = cplx(m.at(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx z = 0.5 * (m.at(i, j) + std::conj(m.at(j, i)));
            m.at(i, j) = z;
            m.at(j, i) = std::conj(z);
        }
    }
    LinOp v = LinOp::identity(n);
    const double scale = std::max(fro(m), 1e-300);
    const double stop = 1e-15 * scale;

    for (int sweep = 0; sweep < 100 && offdiag_fro(m) > stop; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = m.at(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-18 * scale) continue;
                /* Phase factor turning the 2x2 block real, then a classic
                 * symmetric Jacobi rotation: U = diag(1, conj(alpha)) * [[c, s], [-s, c]]
                 * with alpha = apq / |apq| zeroes the (p,q) entry of U^dagger M U. */
                const cplx alpha = apq / r;
                const double tau = (m.at(q, q).real() - m.at(p, p).real()) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx u00 = c;
                const cplx u01 = s;
                const cplx u10 = std::conj(alpha) * (-s);
                const cplx u11 = std::conj(alpha) * c;
                /* m <- U^dagger m U ; apply U on columns, U^dagger on rows. */
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx mp = m.at(i, p), mq = m.at(i, q);
                    m.at(i, p) = mp * u00 + mq * u10;
                    m.at(i, q) = mp * u01 + mq * u11;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const cplx mp = m.at(p, j), mq = m.at(q, j);
                    m.at(p, j) = std::conj(u00) * mp + std::conj(u10) * mq;
                    m.at(q, j) = std::conj(u01) * mp + std::conj(u11) * mq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx vp = v.at(i, p), vq = v.at(i, q);
                    v.at(i, p) = vp * u00 + vq * u10;
                    v.at(i, q) = vp * u01 + vq * u11;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return m.at(i, i).real() < m.at(j, j).real();
    });

    EigenSystem out;
    out.values.resize(n);
    out.vectors = LinOp(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = m.at(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors.at(i, j) = v.at(i, order[j]);
    }
    return out;
}

Spectrum spectral(const LinOp& a, double merge_tol, double hermiticity_tol) {
    EigenSystem es = eigh(a, hermiticity_tol);
    const std::size_t n = a.dim();
    Spectrum sp;
    std::size_t j = 0;
    while (j < n) {
        std::size_t k = j + 1;
        while (k < n && es.values[k] - es.values[k - 1] < merge_tol) ++k;
        double mean = 0.0;
        LinOp proj(n);
        for (std::size_t c = j; c < k; ++c) {
            mean += es.values[c];
            std::vector<cplx> col(n);
            for (std::size_t i = 0; i < n; ++i) col[i] = es.vectors.at(i, c);
            Ket vec{std::move(col)};
            proj += LinOp::outer(vec, vec);
        }
        sp.eigenvalues.push_back(mean / double(k - j));
        sp.eigenprojectors.push_back(std::move(proj));
        j = k;
    }
    return sp;
}

LinOp reconstruct(const Spectrum& s) {
    if (s.eigenprojectors.empty()) throw InvalidOperator("empty spectrum");
    LinOp out(s.eigenprojectors.front().dim());
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
        out += cplx(s.eigenvalues[i]) * s.eigenprojectors[i];
    return out;
}

}  // namespace weakmeas
