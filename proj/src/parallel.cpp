#include "sprobe/parallel.hpp"

namespace sprobe::exec {

namespace {
Policy g_policy = Policy::Parallel;
}

Policy default_policy() { return g_policy; }

void set_default_policy(Policy p) { g_policy = p; }

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace sprobe::exec
