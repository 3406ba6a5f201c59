#include "sdpf/util.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <unistd.h>

extern "C" {
char* openblas_get_corename(void);
void openblas_set_num_threads(int);
}

namespace sdpf {

void blas_boot(int argc, char** argv) {
  (void)argc;
  if (getenv("SDPF_BLAS_BOOTED") != nullptr) return;
  if (getenv("OPENBLAS_CORETYPE") != nullptr) return;
  const char* core = openblas_get_corename();
  bool weak = core == nullptr || strcmp(core, "Prescott") == 0 ||
              strcmp(core, "generic") == 0 || strcmp(core, "NORTHWOOD") == 0;
  if (!weak) return;
  const char* want = nullptr;
  if (__builtin_cpu_supports("avx512f") && __builtin_cpu_supports("avx512dq"))
    want = "SKYLAKEX";
  else if (__builtin_cpu_supports("avx2"))
    want = "HASWELL";
  if (want == nullptr) return;
  setenv("OPENBLAS_CORETYPE", want, 1);
  setenv("SDPF_BLAS_BOOTED", "1", 1);
  execv("/proc/self/exe", argv);
  // exec failed; continue with the slow kernels
}

void blas_set_threads(int n) { openblas_set_num_threads(n); }

std::string format_g17(double v) {
  char buf[40];
  snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace sdpf
