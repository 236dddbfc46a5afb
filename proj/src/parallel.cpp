#include "haarmoments/parallel.hpp"

#include <cstdlib>
#include <string>

namespace haarmoments {

namespace {
std::atomic<int> g_override{0};
}

namespace detail {
int worker_override() { return g_override.load(); }
}  // namespace detail

int worker_count() {
  if (const int n = g_override.load(); n > 0) return n;
  if (const char* env = std::getenv("HAARMOMENTS_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
      // unparsable values fall through to the default
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void set_worker_count(int n) { g_override.store(n > 0 ? n : 0); }

ScopedWorkerCount::ScopedWorkerCount(int n) : previous_(g_override.load()) {
  set_worker_count(n);
}

ScopedWorkerCount::~ScopedWorkerCount() { g_override.store(previous_); }

}  // namespace haarmoments
