#include "flatknot/parallel.hpp"

#include <cstdlib>
#include <string>

namespace flatknot {

std::size_t thread_count() {
  std::size_t n = 0;
  if (const char* env = std::getenv("FLATKNOT_THREADS")) {
    try {
      n = static_cast<std::size_t>(std::stoul(env));
    } catch (const std::exception&) {
      n = 0;
    }
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

}  // namespace flatknot
