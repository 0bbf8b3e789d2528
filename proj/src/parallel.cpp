#include "shiftdet/parallel.h"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace shiftdet {

int available_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_thread_cap(int threads) {
  if (threads < 1) return;
#ifdef _OPENMP
  omp_set_num_threads(threads);
#endif
}

}  // namespace shiftdet
