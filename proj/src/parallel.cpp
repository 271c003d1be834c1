#include "summ/parallel.hpp"

#include <cstdlib>
#include <string>

namespace summ {

int thread_cap() {
  if (const char* env = std::getenv("SUMM_THREADS")) {
    try {
      const int n = std::stoi(env);
      return n < 1 ? 1 : n;
    } catch (...) {
      return 1;
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace summ
