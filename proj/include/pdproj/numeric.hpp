#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace pdproj {

// Compensated accumulator for long sums of small terms.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

// Wraps x into [0, 2*pi).
inline double wrap_two_pi(double x) {
  double two_pi = 2.0 * M_PI;
  double r = std::fmod(x, two_pi);
  if (r < 0.0) r += two_pi;
  return r;
}

// Signed angular interval from `from` to `to` that passes through `witness`.
// Returns a value in (-2*pi, 2*pi): positive for counter-clockwise travel.
inline double signed_interval_through(double from, double to, double witness) {
  double direct = wrap_two_pi(to - from);
  double wit = wrap_two_pi(witness - from);
  if (direct < 1e-12) return direct;  // endpoints coincide; no travel
  return (wit <= direct) ? direct : direct - 2.0 * M_PI;
}

// Deterministic uniform double in [0, 1) from a 64-bit generator. Avoids
// std::uniform_real_distribution, whose output differs across library
// implementations.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

}  // namespace pdproj
