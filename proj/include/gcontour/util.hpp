#pragma once

#include <cstdint>
#include <functional>
#include <random>

namespace gc {

// mt19937_64 with explicit output mapping so streams are identical across
// standard library implementations (uniform_real_distribution is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n); n must be positive. Rejection-free modulo is
  // fine here, bias is irrelevant at the n we use and determinism is not.
  std::uint64_t uniform_int(std::uint64_t n) { return eng_() % n; }

 private:
  std::mt19937_64 eng_;
};

// Worker cap from the GC_THREADS environment variable; at least 1.
int worker_count();

// Runs fn(begin, end) over disjoint chunks of [0, n). Falls back to a single
// inline call for small n or a cap of 1, so results never depend on the cap
// as long as fn only writes by index.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace gc
