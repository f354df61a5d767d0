#ifndef OSA_COMMON_HPP
#define OSA_COMMON_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Core>

namespace osa {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Base type for everything this library throws.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

struct InvalidArgument : Error {
  explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

// Total sampling weight is (numerically) zero: the current span already
// fits every point. Callers usually treat this as early success.
struct DegenerateWeights : Error {
  explicit DegenerateWeights(const std::string& msg) : Error(msg) {}
};

// A combinatorial enumeration would exceed its configured budget.
struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string& msg) : Error(msg) {}
};

// Malformed input file; carries a 1-based line number when known.
struct DataFormatError : Error {
  DataFormatError(const std::string& msg, std::size_t line = 0)
      : Error(line ? msg + " (line " + std::to_string(line) + ")" : msg),
        line_number(line) {}
  std::size_t line_number;
};

// 64-bit seed. All randomness in the library flows from explicit seeds;
// derived streams are obtained with derive_seed so that independent
// parts of an algorithm (rounds, trials) never share a stream.
struct Seed {
  std::uint64_t value = 0;
  Seed() = default;
  explicit Seed(std::uint64_t v) : value(v) {}
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace detail

// Deterministic stream derivation: (seed, a, b) tuples map to
// well-separated child seeds.
inline Seed derive_seed(Seed seed, std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t h = seed.value;
  h = detail::splitmix64(h ^ (0x9e3779b97f4a7c15ull * (a + 1)));
  h = detail::splitmix64(h ^ (0xc2b2ae3d27d4eb4full * (b + 1)));
  return Seed(h);
}

// Small self-contained generator (splitmix64 core) so sampled streams are
// reproducible independently of the standard library implementation.
class Rng {
 public:
  explicit Rng(Seed seed) : state_(detail::splitmix64(seed.value ^ 0xd6e8feb86659fd93ull)) {}

  std::uint64_t next_u64() {
    state_ = state_ * 6364136223846793005ull + 1442695040888963407ull;
    return detail::splitmix64(state_);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n).
  std::size_t next_index(std::size_t n) {
    return static_cast<std::size_t>(next_double() * static_cast<double>(n)) % n;
  }

  // Standard normal via Box-Muller, caching the spare value.
  double next_gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = next_double();
    double u2 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Work is assigned
// by index so results keyed by i are identical for any job count.
template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace osa

#endif  // OSA_COMMON_HPP
