#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fano/errors.hpp"
#include "fano/numeric.hpp"

namespace fano {

/// Parametric model for the probability mass beyond the explicit support of
/// a Pmf. Each kind has closed forms for its total mass and for its Shannon
/// and l_alpha^alpha contributions, so truncation defects can be certified.
class TailModel {
 public:
  enum class Kind { none, geometric, poisson, log_power };

  TailModel() : kind_(Kind::none) {}

  /// Masses first * ratio^i, i = 0, 1, ...
  static TailModel geometric(double first, double ratio);

  /// Poisson(mean) masses mean^(k-1) e^-mean / (k-1)! for symbols
  /// k = start, start+1, ...  (1-based symbol convention).
  static TailModel poisson(double mean, long start);

  /// Masses scale * (1/log x - 1/log(x+1)) for x = start, start+1, ...,
  /// the telescoping discretization of scale/(x log^2 x): total mass is
  /// exactly scale/log(start) but the Shannon contribution diverges.
  static TailModel logPower(double scale, long start);

  Kind kind() const { return kind_; }
  bool none() const { return kind_ == Kind::none; }

  /// Total tail mass, closed form.
  double mass() const;
  /// Mass of the i-th tail term, i >= 0.
  double massAt(long i) const;
  /// Mass remaining after dropping the first n tail terms.
  double massAfter(long n) const;
  /// Sum of eta over the tail. +inf for log_power (integral-test divergence
  /// of sum eta(c/(x log^2 x))).
  ExtReal shannonContribution() const;
  /// Sum of mass^alpha over the tail; +inf for log_power when alpha < 1.
  ExtReal lpPowerContribution(double alpha) const;
  /// True when the tail terms are nonincreasing (geometric always; poisson
  /// only when the tail starts at or beyond the mode; log_power always).
  bool sortedDescending() const;
  /// Largest single tail mass.
  double maxMass() const;

  double first() const { return a_; }
  double ratio() const { return b_; }
  double mean() const { return a_; }
  double scale() const { return a_; }
  long start() const { return start_; }

 private:
  Kind kind_;
  double a_ = 0.0;  // geometric first / poisson mean / log-power scale
  double b_ = 0.0;  // geometric ratio
  long start_ = 0;  // poisson / log-power first tail symbol
};

struct MajorizationVerdict {
  bool holds = false;
  std::optional<int> witness;  // first prefix index k (1-based) where the inequality fails
};

/// Finite-support probability mass vector with an optional certified
/// parametric tail. Immutable after construction.
class Pmf {
 public:
  /// Checked construction. Normalization is never silent: a sum defect
  /// beyond 1e-9 is an error unless `renormalize` is set.
  static Pmf validate(std::vector<double> masses,
                      std::optional<std::vector<std::string>> labels = std::nullopt,
                      TailModel tail = TailModel(), bool renormalize = false);

  /// Trusted construction for closed-form internal results (masses known to
  /// sum to 1 by construction, drift < 1e-14 via compensated accumulation).
  static Pmf fromMasses(std::vector<double> masses, TailModel tail = TailModel());

  size_t size() const { return masses_.size(); }
  double mass(size_t i) const { return masses_[i]; }
  const std::vector<double>& masses() const { return masses_; }
  const std::optional<std::vector<std::string>>& labels() const { return labels_; }
  const TailModel& tail() const { return tail_; }
  bool tailFree() const { return tail_.none(); }

  double explicitMass() const { return kahanTotal(masses_); }

  /// Index of the last strictly positive explicit mass, +1; 0 for the
  /// all-zero edge case.
  size_t supportSize() const;

 private:
  std::vector<double> masses_;
  std::optional<std::vector<std::string>> labels_;
  TailModel tail_;
};

struct TruncateResult {
  Pmf pmf;            // tail-free
  double omitted;     // certified omitted tail mass
};

/// P-downarrow: same masses sorted nonincreasing; stable among ties
/// (original index order), labels permuted consistently.
Pmf decreasingRearrangement(const Pmf& p);

/// Majorization verdict for R over P: holds iff every k-prefix sum of the
/// rearrangement of R dominates that of P (each comparison at 1e-12).
/// Tailed inputs are truncated to a 1e-12 defect first.
MajorizationVerdict majorizes(const Pmf& r, const Pmf& p);

/// (1/2) sum |P(x) - Q(x)| over the aligned supports.
double variationalDistance(const Pmf& p, const Pmf& q);

/// Materialize tail terms until the certified remainder is at most
/// mass_tolerance. Off by default, renormalization spreads the defect.
TruncateResult truncate(const Pmf& p, double mass_tolerance, bool renormalize = false);

namespace detail {
/// Rearrangement on raw mass vectors: returns the permutation ord such that
/// masses[ord[0]] >= masses[ord[1]] >= ... with ties by original index.
std::vector<size_t> decreasingOrder(const std::vector<double>& masses);
std::vector<double> sortedDescending(std::vector<double> masses);
}  // namespace detail

}  // namespace fano
