#include "hyperpin/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hyperpin {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int threads) {
  if (threads < 1) return;
#ifdef _OPENMP
  omp_set_num_threads(threads);
#endif
}

}  // namespace hyperpin
