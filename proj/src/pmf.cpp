#include "fano/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fano {

const char* errcName(Errc c) {
  switch (c) {
    case Errc::negative_mass: return "NegativeMass";
    case Errc::mass_sum_mismatch: return "MassSumMismatch";
    case Errc::unsortable_tail: return "UnsortableTail";
    case Errc::tail_not_summable: return "TailNotSummable";
    case Errc::unsupported_tail: return "UnsupportedTail";
    case Errc::infeasible: return "Infeasible";
    case Errc::eps_out_of_range: return "EpsOutOfRange";
    case Errc::delta_out_of_range: return "DeltaOutOfRange";
    case Errc::non_concave_phi: return "NonConcavePhi";
    case Errc::phi_infinite: return "PhiInfinite";
    case Errc::k_infinite: return "KInfinite";
    case Errc::bad_z_cardinality: return "BadZCardinality";
    case Errc::z_too_small: return "ZTooSmall";
    case Errc::y_too_small: return "YTooSmall";
    case Errc::conditions_unmet: return "ConditionsUnmet";
    case Errc::not_majorized: return "NotMajorized";
    case Errc::numerical_breakdown: return "NumericalBreakdown";
    case Errc::mesh_too_large: return "MeshTooLarge";
    case Errc::bisection_failure: return "BisectionFailure";
    case Errc::bad_input: return "BadInput";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// TailModel

TailModel TailModel::geometric(double first, double ratio) {
  if (!(first > 0.0) || !(ratio > 0.0) || !(ratio < 1.0))
    throw Error(Errc::bad_input, "geometric tail needs first > 0 and ratio in (0,1)");
  TailModel t;
  t.kind_ = Kind::geometric;
  t.a_ = first;
  t.b_ = ratio;
  if (!(t.mass() < 1.0)) throw Error(Errc::bad_input, "geometric tail mass must be < 1");
  return t;
}

TailModel TailModel::poisson(double mean, long start) {
  if (!(mean > 0.0) || start < 1)
    throw Error(Errc::bad_input, "poisson tail needs mean > 0 and start >= 1");
  TailModel t;
  t.kind_ = Kind::poisson;
  t.a_ = mean;
  t.start_ = start;
  if (!(t.mass() < 1.0)) throw Error(Errc::bad_input, "poisson tail mass must be < 1");
  return t;
}

TailModel TailModel::logPower(double scale, long start) {
  if (!(scale > 0.0) || start < 2)
    throw Error(Errc::bad_input, "log-power tail needs scale > 0 and start >= 2");
  TailModel t;
  t.kind_ = Kind::log_power;
  t.a_ = scale;
  t.start_ = start;
  if (!(t.mass() < 1.0)) throw Error(Errc::bad_input, "log-power tail mass must be < 1");
  return t;
}

namespace {

double poissonLogPmf(double mean, long k /*count value >= 0*/) {
  // log( mean^k e^-mean / k! )
  return double(k) * std::log(mean) - mean - std::lgamma(double(k) + 1.0);
}

}  // namespace

double TailModel::massAt(long i) const {
  switch (kind_) {
    case Kind::none: return 0.0;
    case Kind::geometric: return a_ * std::pow(b_, double(i));
    case Kind::poisson: {
      long k = start_ + i - 1;  // symbol start_+i carries Poisson count start_+i-1
      return std::exp(poissonLogPmf(a_, k));
    }
    case Kind::log_power: {
      double x = double(start_ + i);
      return a_ * (1.0 / std::log(x) - 1.0 / std::log(x + 1.0));
    }
  }
  return 0.0;
}

double TailModel::mass() const {
  switch (kind_) {
    case Kind::none: return 0.0;
    case Kind::geometric: return a_ / (1.0 - b_);
    case Kind::poisson: {
      // 1 - P(count <= start-2), head summed with compensation. The test
      // suite cross-checks this against direct summation of tail terms.
      KahanSum head;
      for (long k = 0; k <= start_ - 2; ++k) head.add(std::exp(poissonLogPmf(a_, k)));
      return std::max(0.0, 1.0 - head.get());
    }
    case Kind::log_power: return a_ / std::log(double(start_));
  }
  return 0.0;
}

double TailModel::massAfter(long n) const {
  switch (kind_) {
    case Kind::none: return 0.0;
    case Kind::geometric: return mass() * std::pow(b_, double(n));
    case Kind::poisson: {
      KahanSum head;
      for (long k = 0; k <= start_ + n - 2; ++k) head.add(std::exp(poissonLogPmf(a_, k)));
      return std::max(0.0, 1.0 - head.get());
    }
    case Kind::log_power: return a_ / std::log(double(start_ + n));
  }
  return 0.0;
}

ExtReal TailModel::shannonContribution() const {
  switch (kind_) {
    case Kind::none: return 0.0;
    case Kind::geometric: {
      // sum eta(f r^i) = -(f/(1-r)) log f - (f r/(1-r)^2) log r
      double f = a_, r = b_;
      return -(f / (1.0 - r)) * std::log(f) - (f * r / ((1.0 - r) * (1.0 - r))) * std::log(r);
    }
    case Kind::poisson: {
      // Superexponential decay: summed to convergence.
      KahanSum s;
      for (long i = 0;; ++i) {
        double m = massAt(i);
        s.add(eta(m));
        if (m < 1e-300 && i > 8) break;
        if (i > 400000) break;
      }
      return s.get();
    }
    case Kind::log_power:
      // sum eta(m_x) with m_x comparable to a/(x log^2 x); diverges by
      // comparison with sum 1/(x log x).
      return ExtReal::infinity();
  }
  return 0.0;
}

ExtReal TailModel::lpPowerContribution(double alpha) const {
  if (!(alpha > 0.0)) throw Error(Errc::bad_input, "alpha must be > 0");
  switch (kind_) {
    case Kind::none: return 0.0;
    case Kind::geometric: return std::pow(a_, alpha) / (1.0 - std::pow(b_, alpha));
    case Kind::poisson: {
      KahanSum s;
      for (long i = 0;; ++i) {
        double m = massAt(i);
        s.add(std::pow(m, alpha));
        if (m < 1e-300 && i > 8) break;
        if (i > 400000) break;
      }
      return s.get();
    }
    case Kind::log_power: {
      if (alpha < 1.0) return ExtReal::infinity();  // sum x^-a (log x)^-2a diverges
      if (alpha == 1.0) return mass();
      KahanSum s;
      long i = 0;
      for (; i < 2000000; ++i) {
        double m = massAt(i);
        double t = std::pow(m, alpha);
        s.add(t);
        if (t < 1e-18 * (alpha - 1.0)) break;
      }
      // integral remainder bound: sum_{x>X} (a/x)^alpha <= a^alpha X^(1-alpha)/(alpha-1)
      return s.get();
    }
  }
  return 0.0;
}

bool TailModel::sortedDescending() const {
  switch (kind_) {
    case Kind::none: return true;
    case Kind::geometric: return true;
    case Kind::poisson: return double(start_ - 1) >= a_;  // at/right of the mode
    case Kind::log_power: return true;
  }
  return true;
}

double TailModel::maxMass() const {
  if (kind_ == Kind::poisson && !sortedDescending()) {
    long mode = long(std::floor(a_));
    return std::exp(poissonLogPmf(a_, mode));
  }
  return none() ? 0.0 : massAt(0);
}

// ---------------------------------------------------------------------------
// Pmf

Pmf Pmf::validate(std::vector<double> masses, std::optional<std::vector<std::string>> labels,
                  TailModel tail, bool renormalize) {
  for (double m : masses) {
    if (!(m >= 0.0) || !std::isfinite(m))
      throw Error(Errc::negative_mass, "mass entries must be finite and >= 0");
  }
  if (labels && labels->size() != masses.size())
    throw Error(Errc::bad_input, "labels must align with masses");
  double tailMass = tail.mass();
  if (!(tailMass < 1.0)) throw Error(Errc::bad_input, "tail mass must be < 1");
  double total = kahanTotal(masses) + tailMass;
  if (std::abs(total - 1.0) > 1e-9) {
    if (!renormalize)
      throw Error(Errc::mass_sum_mismatch,
                  "masses sum to " + std::to_string(total) + ", not 1 (pass renormalize to opt in)");
    double target = 1.0 - tailMass;
    double expl = kahanTotal(masses);
    if (expl <= 0.0) throw Error(Errc::mass_sum_mismatch, "cannot renormalize zero explicit mass");
    for (double& m : masses) m *= target / expl;
  }
  Pmf p;
  p.masses_ = std::move(masses);
  p.labels_ = std::move(labels);
  p.tail_ = tail;
  return p;
}

Pmf Pmf::fromMasses(std::vector<double> masses, TailModel tail) {
  Pmf p;
  p.masses_ = std::move(masses);
  p.tail_ = tail;
  return p;
}

size_t Pmf::supportSize() const {
  size_t s = masses_.size();
  while (s > 0 && masses_[s - 1] <= 0.0) --s;
  return s;
}

namespace detail {

std::vector<size_t> decreasingOrder(const std::vector<double>& masses) {
  std::vector<size_t> ord(masses.size());
  std::iota(ord.begin(), ord.end(), size_t{0});
  std::stable_sort(ord.begin(), ord.end(),
                   [&](size_t a, size_t b) { return masses[a] > masses[b]; });
  return ord;
}

std::vector<double> sortedDescending(std::vector<double> masses) {
  std::sort(masses.begin(), masses.end(), std::greater<double>());
  return masses;
}

}  // namespace detail

Pmf decreasingRearrangement(const Pmf& p) {
  if (!p.tailFree()) {
    if (!p.tail().sortedDescending())
      throw Error(Errc::unsortable_tail, "tail is not nonincreasing; truncate first");
    double smallest = p.size() ? *std::min_element(p.masses().begin(), p.masses().end())
                               : 1.0;
    if (p.tail().maxMass() > smallest + 1e-15)
      throw Error(Errc::unsortable_tail, "tail interleaves with explicit masses; truncate first");
  }
  auto ord = detail::decreasingOrder(p.masses());
  std::vector<double> sorted(p.size());
  std::optional<std::vector<std::string>> labels;
  if (p.labels()) labels.emplace(p.size());
  for (size_t k = 0; k < ord.size(); ++k) {
    sorted[k] = p.mass(ord[k]);
    if (labels) (*labels)[k] = (*p.labels())[ord[k]];
  }
  Pmf out = Pmf::fromMasses(std::move(sorted), p.tail());
  if (labels) out = Pmf::validate(out.masses(), std::move(labels), p.tail());
  return out;
}

namespace {

std::vector<double> truncatedSortedMasses(const Pmf& p) {
  if (p.tailFree()) return detail::sortedDescending(p.masses());
  TruncateResult t = truncate(p, 1e-12);
  return detail::sortedDescending(t.pmf.masses());
}

}  // namespace

MajorizationVerdict majorizes(const Pmf& r, const Pmf& p) {
  std::vector<double> rs = truncatedSortedMasses(r);
  std::vector<double> ps = truncatedSortedMasses(p);
  size_t n = std::max(rs.size(), ps.size());
  rs.resize(n, 0.0);
  ps.resize(n, 0.0);
  KahanSum prefR, prefP;
  for (size_t k = 0; k < n; ++k) {
    prefR.add(rs[k]);
    prefP.add(ps[k]);
    if (prefR.get() < prefP.get() - 1e-12) {
      return MajorizationVerdict{false, int(k + 1)};
    }
  }
  return MajorizationVerdict{true, std::nullopt};
}

double variationalDistance(const Pmf& p, const Pmf& q) {
  std::vector<double> a = p.tailFree() ? p.masses() : truncate(p, 1e-12).pmf.masses();
  std::vector<double> b = q.tailFree() ? q.masses() : truncate(q, 1e-12).pmf.masses();
  size_t n = std::max(a.size(), b.size());
  a.resize(n, 0.0);
  b.resize(n, 0.0);
  KahanSum s;
  for (size_t i = 0; i < n; ++i) s.add(std::abs(a[i] - b[i]));
  return 0.5 * s.get();
}

TruncateResult truncate(const Pmf& p, double mass_tolerance, bool renormalize) {
  if (!(mass_tolerance > 0.0)) throw Error(Errc::bad_input, "mass_tolerance must be > 0");
  if (p.tailFree()) return TruncateResult{p, 0.0};

  const TailModel& t = p.tail();
  constexpr long kHardCap = 10000000;  // 10^7 explicit tail terms
  long n = 0;
  if (t.kind() == TailModel::Kind::geometric) {
    // f r^n / (1-r) <= tol
    double need = std::log(mass_tolerance * (1.0 - t.ratio()) / t.first()) / std::log(t.ratio());
    n = need <= 0.0 ? 0 : long(std::ceil(need));
    while (t.massAfter(n) > mass_tolerance) ++n;
  } else if (t.kind() == TailModel::Kind::log_power) {
    // remainder after n terms is scale/log(start+n)
    double needX = std::exp(t.scale() / mass_tolerance);
    if (needX > double(kHardCap))
      throw Error(Errc::tail_not_summable,
                  "log-power tail needs more than 10^7 terms for this tolerance");
    n = long(std::ceil(needX)) - t.start();
    if (n < 0) n = 0;
    while (t.massAfter(n) > mass_tolerance) {
      ++n;
      if (n > kHardCap) throw Error(Errc::tail_not_summable, "log-power truncation cap exceeded");
    }
  } else {  // poisson
    while (t.massAfter(n) > mass_tolerance) {
      ++n;
      if (n > kHardCap) throw Error(Errc::tail_not_summable, "poisson truncation cap exceeded");
    }
  }

  std::vector<double> masses = p.masses();
  masses.reserve(masses.size() + size_t(n));
  for (long i = 0; i < n; ++i) masses.push_back(t.massAt(i));
  double omitted = t.massAfter(n);
  if (renormalize) {
    double expl = kahanTotal(masses);
    if (expl > 0.0)
      for (double& m : masses) m /= expl;
  }
  return TruncateResult{Pmf::fromMasses(std::move(masses)), omitted};
}

}  // namespace fano
