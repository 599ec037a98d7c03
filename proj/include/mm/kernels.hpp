#pragma once

#include <cstddef>
#include <vector>

// Data-parallel arithmetic kernels with a scalar reference implementation and
// an AVX2 variant selected at runtime. Both paths are equivalence-tested; the
// scalar path is the semantic reference.
namespace mm::kernels {

struct Ops {
    const char* name;
    double (*reduce_max)(const double* x, std::size_t n);
    // sum_i exp(x[i]*scale - shift)
    double (*sum_exp)(const double* x, std::size_t n, double scale, double shift);
    // out[i] = exp(x[i]*scale - shift)
    void (*exp_scaled)(const double* x, std::size_t n, double scale, double shift, double* out);
    double (*dot)(const double* a, const double* b, std::size_t n);
};

const Ops& scalar_ops();
const Ops* avx2_ops();  // nullptr when unavailable on this CPU/build

// Active implementation: AVX2 when the CPU supports it, unless overridden by
// force_impl() or the MM_KERNELS env var ("scalar" / "avx2" / "auto").
const Ops& active();
void force_impl(const char* name);

// Convenience wrappers over active().
double logsumexp_scaled(const double* x, std::size_t n, double scale);
// out = softmax(x*scale); returns the normalizing sum after max-subtraction
void softmax_scaled(const double* x, std::size_t n, double scale, double* out);

inline double logsumexp_scaled(const std::vector<double>& x, double scale) {
    return logsumexp_scaled(x.data(), x.size(), scale);
}

}  // namespace mm::kernels
