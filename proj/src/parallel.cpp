#include "mesoc/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mesoc {

int worker_count() {
#ifdef _OPENMP
  int workers = omp_get_max_threads();
#else
  int workers = 1;
#endif
  if (const char* cap = std::getenv("MESOC_KIT_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(cap, &end, 10);
    if (end != cap && *end == '\0' && parsed > 0) workers = std::min<long>(workers, parsed);
  }
  return std::max(workers, 1);
}

}  // namespace mesoc
