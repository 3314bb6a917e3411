#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fano/errprob.hpp"
#include "fano/measures.hpp"
#include "fano/pmf.hpp"

namespace fano {

/// Index pair (J, K) and weights (V, W) of a type-1/2 construction.
/// J <= L <= K; K counts from the same 1-based axis as the masses.
struct FanoIndices {
  int J = 1;
  long K = 1;
  double V = 0.0;  // weight placed on positions J..L
  double W = 0.0;  // weight placed on positions L+1..K (0 when K == L)
};

/// Uniform head / uniform slack distribution on M symbols: (1-eps)/L on the
/// first L, eps/(M-L) on the next M-L.
Pmf fanoType0(int M, int L, double eps);

/// Extremal marginal for an infinite side-information alphabet: flattens
/// Q-downarrow to V(J) on J..L and W(K1) on L+1..K1, leaving the rest.
/// Requires a tail-free Q (truncate first); the result is its own
/// decreasing rearrangement.
std::pair<Pmf, FanoIndices> fanoType1(const Pmf& q, int L, double eps);

/// Finite-Y refinement: the K-search is capped at #(Y) * L, which lowers the
/// flat W segment. Output need not be sorted.
std::pair<Pmf, FanoIndices> fanoType2(const Pmf& q, int L, double eps, long yCard);

/// Decoding-range-restricted variant: recomputes masses only on Z (0-based
/// indices, |Z| = #(Y)*L) through the within-Z decreasing bijection, and
/// agrees with Q off Z.
Pmf fanoType3(const Pmf& q, int L, double eps, long yCard, const std::vector<int>& z);

/// Side-information cardinality sufficient for sharpness:
/// min{ C(K1-J+1, L-J+1), (K1-J)^2 + 1 }.
std::uint64_t spadeMinY(const Pmf& q, int L, double eps);

struct HoYeungResult {
  Pmf s;          // the entropy-minimizing point of the TV ball
  double entropy; // H(s) = min over the ball
  long b;         // truncation index
};

/// Entropy minimizer over { R : TV(Q, R) <= delta }: push delta onto the top
/// mass, peel it off the tail from index B.
HoYeungResult hoYeungTruncation(const Pmf& q, double delta);

enum class Finiteness { finite, infinite };

/// Whether phi(Q) is finite, decided from the tail's closed-form
/// contribution. Requires a separable phi.
Finiteness phiFinitenessGuard(const PhiFunctional& phi, const Pmf& q);

struct BoundReport {
  Measure measure;
  double value = 0.0;          // the bound on the conditional measure
  bool supremum = true;        // false: lower bound on an infimum (convex lp, alpha > 1)
  Pmf distribution;            // the extremal marginal the bound evaluates
  FanoIndices indices;
  std::vector<std::string> sharpness;   // equality conditions that verifiably hold
  double closedFormCheck = 0.0;         // direct evaluation of the flat-segment formula
  bool hasClosedFormCheck = false;
  double truncationDefect = 0.0;        // tail mass dropped before computing
};

/// Fano-type upper bound on the conditional measure for the system:
/// evaluates the measure at the type-2 distribution when Y is finite, at the
/// type-1 distribution otherwise. Rejects non-concave routes and, via the
/// finiteness guard, tails that make phi(Q) infinite while eps > 0.
BoundReport bound(const SystemSpec& sys, const Measure& m);

}  // namespace fano
