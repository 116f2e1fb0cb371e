#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>

namespace flagforms {

// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based stream: the state is derived from (seed, ids...) only, so a
// sample's random numbers do not depend on which worker draws them.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::initializer_list<std::uint64_t> ids) : state_(mix64(seed)) {
    for (std::uint64_t id : ids) state_ = mix64(state_ ^ mix64(id + 0x632be59bd9b4e019ULL));
  }

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in (0, 1).
  double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

  // Standard normal via Box-Muller (one value per call; the partner is dropped
  // to keep the stream position independent of call history).
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  // Standard complex Gaussian: E|w|^2 = 1, density exp(-|w|^2)/pi.
  std::complex<double> complex_normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double rad = std::sqrt(-std::log(u1));
    return {rad * std::cos(2.0 * M_PI * u2), rad * std::sin(2.0 * M_PI * u2)};
  }

 private:
  std::uint64_t state_;
};

}  // namespace flagforms
