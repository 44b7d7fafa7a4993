#include "vpair/threading.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace vpair {

int thread_count() {
#ifdef _OPENMP
  static const int n = [] {
    const char* s = std::getenv("VPAIR_THREADS");
    if (s == nullptr || *s == '\0') return 0;
    try {
      int v = std::stoi(s);
      return v < 0 ? 0 : v;
    } catch (...) {
      return 0;
    }
  }();
  return n == 0 ? omp_get_max_threads() : n;
#else
  return 1;
#endif
}

}  // namespace vpair
