#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace fano {

/// Extended real in [0, +inf]. +inf is a tagged state, never a large float.
class ExtReal {
 public:
  ExtReal() : v_(0.0), inf_(false) {}
  ExtReal(double v) : v_(v), inf_(false) {}
  static ExtReal infinity() {
    ExtReal r;
    r.inf_ = true;
    return r;
  }

  bool isInfinite() const { return inf_; }
  double value() const {
    assert(!inf_);
    return v_;
  }
  /// For printing and comparisons only.
  double asDouble() const { return inf_ ? std::numeric_limits<double>::infinity() : v_; }

  ExtReal& operator+=(const ExtReal& o) {
    if (o.inf_) inf_ = true;
    if (!inf_) v_ += o.v_;
    return *this;
  }
  friend ExtReal operator+(ExtReal a, const ExtReal& b) { return a += b; }
  friend ExtReal operator*(double s, const ExtReal& a) {
    if (a.inf_) return s == 0.0 ? ExtReal(0.0) : ExtReal::infinity();
    return ExtReal(s * a.v_);
  }

 private:
  double v_;
  bool inf_;
};

/// Compensated (Kahan) accumulator; keeps sum-to-one drift below 1e-14
/// on the closed-form weight constructions.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double get() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

inline double kahanTotal(std::span<const double> xs) {
  KahanSum k;
  for (double x : xs) k.add(x);
  return k.get();
}

/// Running prefix sums pre[k] = x_1 + ... + x_k, pre[0] = 0, compensated.
inline std::vector<double> prefixSums(std::span<const double> xs) {
  std::vector<double> pre(xs.size() + 1, 0.0);
  KahanSum k;
  for (size_t i = 0; i < xs.size(); ++i) {
    k.add(xs[i]);
    pre[i + 1] = k.get();
  }
  return pre;
}

/// Comparisons against paper-defined strict inequalities round both sides
/// to this grid first, so index selection is reproducible near ties.
constexpr double kComparisonGrid = 1e12;  // grid spacing 1e-12

inline double gridRound(double u) { return std::nearbyint(u * kComparisonGrid) / kComparisonGrid; }

/// -1, 0, +1 for a<b, a==b, a>b on the 1e-12 comparison grid.
inline int gridCompare(double a, double b) {
  double ga = gridRound(a), gb = gridRound(b);
  if (ga < gb) return -1;
  if (ga > gb) return 1;
  return 0;
}

/// eta(u) = -u log u with eta(0) = 0; evaluates to 0 below 1e-300 to avoid
/// log underflow on denormals.
inline double eta(double u) {
  if (u < 1e-300) return 0.0;
  return -u * std::log(u);
}

/// Binomial coefficient saturating at 2^63-1.
inline std::uint64_t binomialSaturating(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  constexpr std::uint64_t cap = std::uint64_t(1) << 62;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    if (r > cap / n) return cap;
    r = r * (n - k + i) / i;
    if (r >= cap) return cap;
  }
  return r;
}

/// SplitMix64 (Steele, Lea, Flood): counter-based, published constants,
/// identical streams on every platform for a given seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform01() { return double(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

}  // namespace fano
