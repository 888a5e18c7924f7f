#include "stackyfan/parallel.hpp"

#include <cstdlib>
#include <string>

namespace stackyfan {

std::size_t thread_cap() {
  if (const char* env = std::getenv("STACKY_FAN_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (...) {
      // malformed values fall through to the default
    }
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

}  // namespace stackyfan
