#include "qwork/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qwork {

int max_threads() {
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

int apply_thread_env() {
  if (const char* env = std::getenv("QWORK_THREADS")) {
    try {
      set_thread_cap(std::stoi(env));
    } catch (const std::exception&) {
      // unparsable value: keep the runtime default
    }
  }
  return max_threads();
}

}  // namespace qwork
