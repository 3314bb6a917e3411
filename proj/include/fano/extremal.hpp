#pragma once

#include <vector>

#include "fano/bound.hpp"
#include "fano/errprob.hpp"
#include "fano/measures.hpp"
#include "fano/pmf.hpp"

namespace fano {

class DoublyStochastic {
 public:
  static DoublyStochastic identity(int n);
  /// Validates entries in [0,1] and row/column sums 1 within 1e-12.
  static DoublyStochastic checked(int n, std::vector<double> rowMajor);
  /// Trusted constructor for matrices built internally.
  static DoublyStochastic fromRaw(int n, std::vector<double> rowMajor);

  int n() const { return n_; }
  double at(int i, int j) const { return a_[size_t(i) * size_t(n_) + size_t(j)]; }
  double& at(int i, int j) { return a_[size_t(i) * size_t(n_) + size_t(j)]; }

  std::vector<double> apply(const std::vector<double>& v) const;

 private:
  int n_ = 0;
  std::vector<double> a_;
};

/// Convex combination of permutations reproducing a doubly stochastic
/// matrix; perms[y][i] = j means row i maps to column j.
struct BirkhoffDecomp {
  std::vector<double> weights;
  std::vector<std::vector<int>> perms;
};

/// Doubly stochastic M with target-downarrow = M * source-downarrow, built
/// from at most n-1 pairwise (Robin Hood) transfers. Requires that the
/// source majorizes the target.
DoublyStochastic hlpTransfer(const Pmf& target, const Pmf& source);

/// Greedy extraction of positive-entry perfect matchings; at most
/// n^2 - 2n + 2 permutations.
BirkhoffDecomp birkhoffDecompose(const DoublyStochastic& m);

/// Joint attaining the type-1 bound: every conditional is a permutation of
/// the type-1 distribution inside the {J..K} window, the marginal is
/// Q-downarrow, and the list error equals eps.
JointDist extremalJointType1(const Pmf& q, int L, double eps);

/// Finite-Y variant; throws YTooSmall when the construction needs more than
/// yCard distinct side-information values.
JointDist extremalJointType2(const Pmf& q, int L, double eps, long yCard);

/// (upper, lower): the independent joint attaining the upper error endpoint
/// and the block construction attaining the lower one.
std::pair<JointDist, JointDist> endpointAchievers(const Pmf& q, int L, long yCard);

struct Certificate {
  double marginalTv = 0.0;  // TV(marginal, Q-downarrow)
  double peExcess = 0.0;    // max(0, P_e - eps)
  double phiGap = 0.0;      // bound value - conditional measure
  bool pass = false;
};

/// Residual check of a claimed extremal joint against the bound for the
/// system. The certificate may be failing; no error is raised for that.
Certificate verifyExtremal(const JointDist& j, const SystemSpec& sys, const Measure& m);

}  // namespace fano
