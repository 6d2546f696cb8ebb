#include "cscope/parallel.hpp"

#include <cstdlib>
#include <string>

namespace cscope {

std::size_t Budget::default_vertices() {
  if (const char* env = std::getenv("COARSE_SCOPE_BUDGET")) {
    try {
      const long long v = std::stoll(env);
      if (v > 0) return std::size_t(v);
    } catch (...) {
    }
  }
  return 5'000'000;
}

int Budget::default_threads() {
  if (const char* env = std::getenv("COARSE_SCOPE_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return v;
    } catch (...) {
    }
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : int(hc);
}

}  // namespace cscope
