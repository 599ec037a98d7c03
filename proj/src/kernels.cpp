#include "mm/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>

namespace mm::kernels {

namespace {

double s_reduce_max(const double* x, std::size_t n) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, x[i]);
    return m;
}

double s_sum_exp(const double* x, std::size_t n, double scale, double shift) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::exp(x[i] * scale - shift);
    return s;
}

void s_exp_scaled(const double* x, std::size_t n, double scale, double shift, double* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(x[i] * scale - shift);
}

double s_dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

const Ops g_scalar{"scalar", s_reduce_max, s_sum_exp, s_exp_scaled, s_dot};

const Ops* g_forced = nullptr;
bool g_force_set = false;

const Ops* pick_auto() {
    if (const Ops* v = avx2_ops()) return v;
    return &g_scalar;
}

}  // namespace

const Ops& scalar_ops() { return g_scalar; }

#if !defined(MM_BUILD_AVX2)
const Ops* avx2_ops() { return nullptr; }
#endif

void force_impl(const char* name) {
    g_force_set = true;
    if (name == nullptr || std::strcmp(name, "auto") == 0) {
        g_forced = pick_auto();
    } else if (std::strcmp(name, "scalar") == 0) {
        g_forced = &g_scalar;
    } else if (std::strcmp(name, "avx2") == 0) {
        g_forced = avx2_ops() ? avx2_ops() : &g_scalar;
    } else {
        g_forced = pick_auto();
    }
}

const Ops& active() {
    if (!g_force_set) {
        const char* env = std::getenv("MM_KERNELS");
        force_impl(env);  // null -> auto
    }
    return *g_forced;
}

double logsumexp_scaled(const double* x, std::size_t n, double scale) {
    const Ops& ops = active();
    const double m = ops.reduce_max(x, n) * scale;
    // max over x*scale is max(x)*scale only for scale>0; recompute for safety
    double shift = m;
    if (scale < 0.0) {
        double lo = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) lo = std::min(lo, x[i]);
        shift = lo * scale;
    }
    return shift + std::log(ops.sum_exp(x, n, scale, shift));
}

void softmax_scaled(const double* x, std::size_t n, double scale, double* out) {
    const Ops& ops = active();
    double shift = ops.reduce_max(x, n) * scale;
    if (scale < 0.0) {
        double lo = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) lo = std::min(lo, x[i]);
        shift = lo * scale;
    }
    ops.exp_scaled(x, n, scale, shift, out);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += out[i];
    const double inv = 1.0 / s;
    for (std::size_t i = 0; i < n; ++i) out[i] *= inv;
}

}  // namespace mm::kernels
