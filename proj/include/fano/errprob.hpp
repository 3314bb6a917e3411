#pragma once

#include <optional>
#include <vector>

#include "fano/measures.hpp"
#include "fano/pmf.hpp"

namespace fano {

/// Cardinality descriptor of the side-information alphabet.
struct YCard {
  std::optional<long> n;  // nullopt = countably infinite

  static YCard finite(long count) {
    if (count < 1) throw Error(Errc::bad_input, "finite Y needs cardinality >= 1");
    return YCard{count};
  }
  static YCard infinite() { return YCard{std::nullopt}; }
  bool isFinite() const { return n.has_value(); }
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// The system (Q, L, eps, Y). Construction validates the feasibility of eps;
/// an out-of-range eps is a hard error carrying the feasible interval.
struct SystemSpec {
  Pmf q;
  int L = 1;
  double eps = 0.0;
  YCard y = YCard::infinite();

  static SystemSpec checked(Pmf q, int L, double eps, YCard y);
};

/// Sum of the L largest entries; ties among equal masses broken by index.
double topLSum(const std::vector<double>& masses, int L);

/// P_e^(L)(X|Y) = 1 - sum_y p(y) * (top-L mass of the conditional at y).
double listMapError(const JointDist& j, int L);

/// P_e^(L)(Q) = 1 - top-L mass of Q-downarrow.
double marginalListError(const Pmf& q, int L);

/// [lo, hi]: lo = 1 - prefix_{#(Y)L} of Q-downarrow (0 plus the tail defect
/// when Y is infinite), hi = marginalListError.
Interval feasibleRange(const Pmf& q, int L, YCard y);

/// Decoding range restricted to Z (indices into the common X support):
/// keeps the top-L masses within Z only.
double restrictedListError(const JointDist& j, int L, const std::vector<int>& z);

/// Arithmetic mean of the per-position list errors.
double symbolwiseError(const std::vector<JointDist>& joints, int L);

}  // namespace fano
