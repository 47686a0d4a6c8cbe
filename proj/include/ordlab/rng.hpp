#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string_view>
#include <thread>
#include <vector>

namespace ordlab {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives an independent substream seed from (root, label, index). Every
// source of randomness in the library is seeded through this, so results
// depend only on the root seed and the call site, never on thread count.
inline std::uint64_t derive_seed(std::uint64_t root, std::string_view label,
                                 std::uint64_t index = 0) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a over the label
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  std::uint64_t s = root ^ (h + 0x9e3779b97f4a7c15ULL * (index + 1));
  std::uint64_t mixed = splitmix64(s);
  return splitmix64(mixed);
}

// xoshiro256++ with a splitmix64-expanded seed. Bit-stable across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& w : state_) w = splitmix64(s);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0,1), 53 significant bits.
  double next_unit() { return (next_u64() >> 11) * 0x1.0p-53; }

  // Unbiased integer in [0, bound).
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("next_below: bound must be > 0");
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % bound;
  }

  // Standard normal via the polar method; one spare value is cached.
  double next_gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * next_unit() - 1.0;
      v = 2.0 * next_unit() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = next_below(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Runs job(0..count-1) on `threads` workers. Callers index any shared output
// by job id, so the assembled result is independent of the worker schedule.
inline void run_jobs(std::size_t count, int threads,
                     const std::function<void(std::size_t)>& job) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::vector<std::thread> pool;
  const int workers = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(threads), count));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = static_cast<std::size_t>(w); i < count;
           i += static_cast<std::size_t>(workers)) {
        job(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace ordlab
