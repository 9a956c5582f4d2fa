#include "hoepr/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace hoepr {

namespace {
std::atomic<std::size_t> cap{0};
}

void set_thread_cap(std::size_t threads) { cap = threads; }

std::size_t thread_count() {
  if (const auto c = cap.load(); c > 0) return c;
  if (const char* env = std::getenv("HOEPR_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace hoepr
