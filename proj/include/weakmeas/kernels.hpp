#pragma once

#include <complex>
#include <cstddef>

/* Dense array kernels underneath the linear-algebra layer.
 *
 * Complex arrays are contiguous std::complex<double> (interleaved re,im).
 * Matrices are row-major. Two implementations ship: a scalar reference and an
 * AVX2+FMA variant; the active table is chosen once at startup from CPU
 * capabilities (override with WEAKMEAS_KERNELS=scalar|avx2). Both tables stay
 * reachable so equivalence tests can run them side by side. */

namespace weakmeas::kernels {

using cplx = std::complex<double>;

struct KernelTable {
    const char* name;
    /* sum_i conj(x_i) * y_i */
    cplx (*cdotc)(std::size_t n, const cplx* x, const cplx* y);
    /* sum_i x_i * y_i */
    cplx (*cdotu)(std::size_t n, const cplx* x, const cplx* y);
    /* y_i += alpha * x_i */
    void (*axpy)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
    /* x_i *= alpha */
    void (*scal)(std::size_t n, cplx alpha, cplx* x);
    /* y = A x, A m-by-n row-major */
    void (*gemv)(std::size_t m, std::size_t n, const cplx* a, const cplx* x, cplx* y);
    /* C = A B, A m-by-k, B k-by-n, C m-by-n row-major (C overwritten) */
    void (*gemm)(std::size_t m, std::size_t k, std::size_t n, const cplx* a, const cplx* b,
                 cplx* c);
    /* max_i |x_i - y_i| (complex modulus) */
    double (*max_abs_diff)(std::size_t n, const cplx* x, const cplx* y);
    /* sum_i x_i * y_i over real arrays */
    double (*dot)(std::size_t n, const double* x, const double* y);
};

const KernelTable& scalar_table();
const KernelTable& avx2_table();  // falls back to scalar entries when unsupported

bool avx2_supported();

/* Active table, resolved once per process. */
const KernelTable& active();
const char* active_name();

}  // namespace weakmeas::kernels
