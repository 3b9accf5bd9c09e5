#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "weakmeas/errors.hpp"
#include "weakmeas/tolerances.hpp"

/* Dense finite-dimensional state and operator layer. Everything is plain
 * value-semantic storage over the kernels tables; dimensions stay small
 * (target <= 64 for spectral work, a few hundred for grid surrogates). */

namespace weakmeas {

using cplx = std::complex<double>;

class Ket {
public:
    Ket() = default;
    explicit Ket(std::vector<cplx> amplitudes);

    static Ket basis(std::size_t dim, std::size_t index);

    std::size_t dim() const { return amp_.size(); }
    const cplx& operator[](std::size_t i) const { return amp_[i]; }
    cplx& operator[](std::size_t i);
    const cplx* data() const { return amp_.data(); }

    double norm() const;
    /* True when |<v|v> - 1| <= tol at construction time. */
    bool is_normalized() const { return normalized_; }
    Ket normalized() const;

    Ket& operator+=(const Ket& o);
    Ket& operator-=(const Ket& o);
    Ket& operator*=(cplx a);

private:
    void refresh_flag();
    std::vector<cplx> amp_;
    bool normalized_ = false;
};

Ket operator+(Ket a, const Ket& b);
Ket operator-(Ket a, const Ket& b);
Ket operator*(cplx a, Ket v);

/* <a|b>, conjugate-linear in the first argument. */
cplx inner(const Ket& a, const Ket& b);

class LinOp {
public:
    LinOp() = default;
    explicit LinOp(std::size_t dim);  // zero operator
    LinOp(std::size_t dim, std::vector<cplx> entries);  // row-major, dim*dim

    static LinOp identity(std::size_t dim);
    /* |a><b| */
    static LinOp outer(const Ket& a, const Ket& b);
    /* |a><a| / <a|a> */
    static LinOp projector(const Ket& a);
    static LinOp diagonal(std::vector<double> values);

    std::size_t dim() const { return dim_; }
    const cplx& at(std::size_t i, std::size_t j) const { return m_[i * dim_ + j]; }
    cplx& at(std::size_t i, std::size_t j) { return m_[i * dim_ + j]; }
    const cplx* data() const { return m_.data(); }
    cplx* data() { return m_.data(); }

    LinOp adjoint() const;
    Ket apply(const Ket& v) const;
    cplx trace() const;
    /* <v|A|v> */
    cplx expectation(const Ket& v) const;
    double max_abs() const;

    bool is_hermitian(double tol = tol::algebraic) const;
    bool is_projector(double tol = tol::algebraic) const;
    bool is_identity(double tol = tol::algebraic) const;

    LinOp& operator+=(const LinOp& o);
    LinOp& operator-=(const LinOp& o);
    LinOp& operator*=(cplx a);

private:
    std::size_t dim_ = 0;
    std::vector<cplx> m_;
};

LinOp operator+(LinOp a, const LinOp& b);
LinOp operator-(LinOp a, const LinOp& b);
LinOp operator*(cplx a, LinOp m);
LinOp operator*(const LinOp& a, const LinOp& b);

/* AB - BA. */
LinOp commutator(const LinOp& a, const LinOp& b);
/* max entrywise modulus of A - B. */
double max_abs_diff(const LinOp& a, const LinOp& b);
double max_abs_diff(const Ket& a, const Ket& b);

Ket tensor(const Ket& a, const Ket& b);
LinOp tensor(const LinOp& a, const LinOp& b);

/* Raw Hermitian eigensolve (cyclic complex Jacobi): ascending eigenvalues and
 * the matching orthonormal eigenvector columns. */
struct EigenSystem {
    std::vector<double> values;
    LinOp vectors;  // column j is the eigenvector for values[j]
};
EigenSystem eigh(const LinOp& a, double hermiticity_tol = tol::algebraic);

/* Spectral decomposition with eigenvalues closer than merge_tol collapsed into
 * one eigenprojector (so projectors are well-defined under degeneracy). */
struct Spectrum {
    std::vector<double> eigenvalues;     // strictly increasing after merging
    std::vector<LinOp> eigenprojectors;  // orthogonal, sum to identity
};
Spectrum spectral(const LinOp& a, double merge_tol = tol::degeneracy_merge,
                  double hermiticity_tol = tol::algebraic);

/* Rebuild sum_i lambda_i P_i (spectral reconstruction oracle). */
LinOp reconstruct(const Spectrum& s);

}  // namespace weakmeas
