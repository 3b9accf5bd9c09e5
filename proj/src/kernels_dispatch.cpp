#include "weakmeas/kernels.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace weakmeas::kernels {

bool avx2_supported() {
#if defined(WEAKMEAS_COMPILED_AVX2) && (defined(__x86_64__) || defined(_M_X64))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

const KernelTable* resolve() {
    const char* req = std::getenv("WEAKMEAS_KERNELS");
    if (req != nullptr) {
        if (std::strcmp(req, "scalar") == 0) return &scalar_table();
        if (std::strcmp(req, "avx2") == 0) {
            if (avx2_supported()) return &avx2_table();
            std::fprintf(stderr, "weakmeas: WEAKMEAS_KERNELS=avx2 unsupported here, using scalar\n");
            return &scalar_table();
        }
        std::fprintf(stderr, "weakmeas: unknown WEAKMEAS_KERNELS=%s, using default\n", req);
    }
    return avx2_supported() ? &avx2_table() : &scalar_table();
}

}  // namespace

const KernelTable& active() {
    static const KernelTable* table = resolve();
    return *table;
}

const char* active_name() { return active().name; }

}  // namespace weakmeas::kernels
