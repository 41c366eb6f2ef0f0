#include "revsurf/parallel.hpp"

#include <cstdlib>
#include <string>

namespace revsurf {

unsigned default_workers() {
  if (const char* env = std::getenv("REVSURF_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace revsurf
