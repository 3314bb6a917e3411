#pragma once

#include <cstdint>

#include "fano/bound.hpp"
#include "fano/errprob.hpp"
#include "fano/extremal.hpp"
#include "fano/measures.hpp"

namespace fano {

struct OracleConfig {
  int restarts = 64;
  std::uint64_t seed = 0;
  int maxIters = 200;
  double stepTolerance = 1e-7;
  int gridResolution = 96;  // TV-ball oracle
};

struct OracleResult {
  double value = 0.0;
  JointDist argmax;
};

/// Brute-force certification of the supremum of the conditional measure over
/// desk-scale feasible joints: random-restart projected ascent on the
/// conditionals plus a structured family in which every conditional is a
/// permutation of one sorted candidate. Deterministic for a fixed seed.
OracleResult bruteForceSup(const Pmf& q, int L, double eps, long yCard, const Measure& m,
                           const OracleConfig& cfg);

/// Minimum Shannon entropy over a simplex grid of distributions within TV
/// distance delta of q. Lower-bounded by the true minimum; exceeds it by at
/// most an O(M/grid) slack.
double tvBallMinEntropy(const Pmf& q, double delta, const OracleConfig& cfg);

/// The Fannes-type continuity slack used when comparing the grid minimum
/// against the exact ball minimum.
double tvBallGridSlack(size_t supportSize, int gridResolution);

/// Exhaustive mesh over the constrained conditional polytope (binary or
/// ternary X, at most two side-information values). Grid cells infeasible
/// for the error constraint are snapped onto the constraint boundary along
/// the top-L concentration direction, so the mesh value approaches the
/// bound from below at rate O(1/mesh).
double exhaustiveSmall(const Pmf& q, int L, double eps, long yCard, const Measure& m, int mesh);

}  // namespace fano
