#include "ustr/execution.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ustr {

std::size_t max_threads() noexcept {
#ifdef _OPENMP
    return static_cast<std::size_t>(omp_get_max_threads());
#else
    return 1;
#endif
}

}  // namespace ustr
