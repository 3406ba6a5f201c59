#ifndef SDPF_UTIL_HPP
#define SDPF_UTIL_HPP

#include <cstdint>
#include <random>
#include <string>

namespace sdpf {

// splitmix64 step; used to derive independent seed streams from (seed, index)
// pairs so that per-sample / per-epoch randomness is stateless.
inline uint64_t mix_seed(uint64_t seed, uint64_t salt) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::mt19937_64 make_rng(uint64_t seed, uint64_t salt = 0) {
  return std::mt19937_64(mix_seed(seed, salt));
}

// Ubuntu's libopenblas misdetects masked-CPUID hosts and falls back to its
// SSE2 kernels. When the fallback is active and the CPU has AVX2/AVX-512,
// re-exec the process once with OPENBLAS_CORETYPE set. No-op otherwise.
// Call first thing in main(); argv must be the untouched process arguments.
void blas_boot(int argc, char** argv);

// Pins the OpenBLAS thread count (bitwise-deterministic GEMM partitioning).
void blas_set_threads(int n);

std::string format_g17(double v);

}  // namespace sdpf

#endif
