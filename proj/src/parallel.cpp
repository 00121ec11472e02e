#include "wfa/parallel.hpp"

#include <algorithm>
#include <atomic>

#include <omp.h>

namespace wfa::parallel {

namespace {
std::atomic<int> g_threads{0};
}

void set_threads(int n) {
  g_threads = std::max(1, n);
  omp_set_num_threads(g_threads);
}

int threads() {
  const int t = g_threads;
  return t > 0 ? t : omp_get_max_threads();
}

}  // namespace wfa::parallel
