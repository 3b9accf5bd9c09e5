#include "weakmeas/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace weakmeas::kernels {
namespace {

cplx cdotc_scalar(std::size_t n, const cplx* x, const cplx* y) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr + xi * yi;
        im += xr * yi - xi * yr;
    }
    return {re, im};
}

cplx cdotu_scalar(std::size_t n, const cplx* x, const cplx* y) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr - xi * yi;
        im += xr * yi + xi * yr;
    }
    return {re, im};
}

void axpy_scalar(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
    const double ar = alpha.real(), ai = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = cplx(y[i].real() + (ar * xr - ai * xi), y[i].imag() + (ar * xi + ai * xr));
    }
}

void scal_scalar(std::size_t n, cplx alpha, cplx* x) {
    const double ar = alpha.real(), ai = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        x[i] = cplx(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

void gemv_scalar(std::size_t m, std::size_t n, const cplx* a, const cplx* x, cplx* y) {
    for (std::size_t i = 0; i < m; ++i) y[i] = cdotu_scalar(n, a + i * n, x);
}

void gemm_scalar(std::size_t m, std::size_t k, std::size_t n, const cplx* a, const cplx* b,
                 cplx* c) {
    std::memset(static_cast<void*>(c), 0, m * n * sizeof(cplx));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t l = 0; l < k; ++l) axpy_scalar(n, a[i * k + l], b + l * n, c + i * n);
}

double max_abs_diff_scalar(std::size_t n, const cplx* x, const cplx* y) {
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dr = x[i].real() - y[i].real();
        const double di = x[i].imag() - y[i].imag();
        worst = std::max(worst, dr * dr + di * di);
    }
    return std::sqrt(worst);
}

double dot_scalar(std::size_t n, const double* x, const double* y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

}  // namespace

const KernelTable& scalar_table() {
    static const KernelTable t = {"scalar",      cdotc_scalar, cdotu_scalar,
                                  axpy_scalar,   scal_scalar,  gemv_scalar,
                                  gemm_scalar,   max_abs_diff_scalar,
                                  dot_scalar};
    return t;
}

}  // namespace weakmeas::kernels
