#ifndef RELENERGY_SAMPLING_HPP
#define RELENERGY_SAMPLING_HPP

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace relenergy {

/// Counter-based pseudo-random stream. Each (seed, index) pair opens an
/// independent stream, so sampling loops can be partitioned across workers
/// without changing the drawn values.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static SplitMix64 at(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 g(seed + 0x9E3779B97F4A7C15ULL * (index + 1));
    g.next();
    return g;
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi].
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
  std::uint64_t state_;
};

inline unsigned default_worker_count() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

/// Max-reduction over [0, n); fn(begin, end) returns a chunk maximum.
/// The result is independent of the partition because max is exact.
template <typename Fn>
double parallel_max(std::uint64_t n, unsigned workers, Fn fn) {
  if (workers <= 1 || n < 4096) return fn(std::uint64_t{0}, n);
  workers = std::min<std::uint64_t>(workers, n);
  std::vector<double> partial(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::uint64_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t b = w * chunk;
    const std::uint64_t e = std::min(n, b + chunk);
    pool.emplace_back([&partial, w, b, e, &fn] { partial[w] = fn(b, e); });
  }
  for (auto& t : pool) t.join();
  double m = partial[0];
  for (unsigned w = 1; w < workers; ++w) m = std::max(m, partial[w]);
  return m;
}

/// Count-reduction over [0, n); fn(begin, end) returns a chunk count.
template <typename Fn>
std::uint64_t parallel_count(std::uint64_t n, unsigned workers, Fn fn) {
  if (workers <= 1 || n < 4096) return fn(std::uint64_t{0}, n);
  workers = std::min<std::uint64_t>(workers, n);
  std::vector<std::uint64_t> partial(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::uint64_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t b = w * chunk;
    const std::uint64_t e = std::min(n, b + chunk);
    pool.emplace_back([&partial, w, b, e, &fn] { partial[w] = fn(b, e); });
  }
  for (auto& t : pool) t.join();
  std::uint64_t c = 0;
  for (auto p : partial) c += p;
  return c;
}

} // namespace relenergy

#endif
