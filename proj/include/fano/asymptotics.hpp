#pragma once

#include <string>
#include <vector>

#include "fano/bound.hpp"
#include "fano/errprob.hpp"
#include "fano/measures.hpp"
#include "fano/pmf.hpp"

namespace fano {

/// Positive schedule over n: constant c, reciprocal c/n, or geometric c*b^n.
struct Schedule {
  enum class Kind { constant, reciprocal, geometric };
  Kind kind = Kind::constant;
  double c = 1.0;
  double b = 1.0;

  static Schedule constant(double c) { return {Kind::constant, c, 1.0}; }
  static Schedule reciprocal(double c) { return {Kind::reciprocal, c, 1.0}; }
  static Schedule geometric(double c, double b) { return {Kind::geometric, c, b}; }
  double at(long n) const;
  /// Parse "const:2", "recip:1", "geom:1,10".
  static Schedule parse(const std::string& s);
};

/// Parameterized general-source sequence.
struct SourceFamily {
  enum class Kind { iid_product, poisson, counterexample, example5 };
  Kind kind = Kind::iid_product;
  Pmf base;            // iid_product
  Schedule mean;       // poisson: lambda_n
  double gamma = 1.0;  // counterexample
  int listSize = 2;    // counterexample / example5
  Schedule delta;      // counterexample: delta_n

  static SourceFamily iidProduct(Pmf base);
  static SourceFamily poisson(Schedule mean);
  static SourceFamily counterexample(double gamma, int L, Schedule delta);
  static SourceFamily example5(int L);
};

/// Shrinking-entropy-defect distribution P_{X_n}, truncated to a tail defect
/// of at most 1e-12.
Pmf realize(const SourceFamily& src, long n);

/// Root p of delta * h2(p) / p = gamma on (0, min(1, (1-delta)/(delta L))],
/// bisected to 1e-14 relative tolerance.
double counterexampleRate(double gamma, int L, double delta);

/// P{ -log P(X) <= (1 - delta) H(P) }, with the convention 0 when H(P) = 0.
double aepDefect(const Pmf& p, double delta);

struct TraceRow {
  long n = 0;
  double entropy = 0.0;     // H(X_n) (or H_alpha)
  double logL = 0.0;
  double eps = 0.0;
  double bound = 0.0;       // entropy of the type-1 distribution at eps
  double excess = 0.0;      // max(0, bound - log L)
  double excessRatio = 0.0; // excess / entropy
  bool feasible = true;
};

/// One row per n: the equivocation bound trajectory for the scheduled list
/// sizes and error budgets. alpha = 1 gives the Shannon route.
std::vector<TraceRow> equivocationTrace(const SourceFamily& src, Schedule listSize,
                                        Schedule epsSchedule, long nFrom, long nTo,
                                        double alpha = 1.0);

struct SymbolwisePosition {
  double pe = 0.0;
  double entropy = 0.0;
  double bound = 0.0;  // type-1 bound at this position's own error
};

struct SymbolwiseReport {
  double peSym = 0.0;        // arithmetic-mean list error
  double meanBound = 0.0;    // mean of per-position bounds
  double chainUpper = 0.0;   // sum of per-position conditional entropies
  double boundAtMeanEps = 0.0;  // bound at the averaged error (common marginal)
  bool commonMarginal = false;
  double logL = 0.0;
  std::vector<SymbolwisePosition> positions;
};

SymbolwiseReport symbolwiseTrace(const std::vector<JointDist>& positions, int L);

std::string traceCsv(const std::vector<TraceRow>& rows);

}  // namespace fano
