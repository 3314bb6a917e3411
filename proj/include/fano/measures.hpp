#pragma once

#include <string>
#include <vector>

#include "fano/pmf.hpp"

namespace fano {

/// Symmetric functional phi applied to a distribution; the building block of
/// the conditional measure h_phi(X|Y) = E[phi(P_{X|Y})].
struct PhiFunctional {
  enum class Kind { shannon, lp_norm, lp_norm_power, one_minus_lp2_squared, dbar };

  Kind kind = Kind::shannon;
  double alpha = 1.0;  // lp kinds; > 0, != 1
  int m = 0;           // dbar support size, >= 2

  static PhiFunctional shannon() { return {Kind::shannon, 1.0, 0}; }
  static PhiFunctional lpNorm(double a);
  static PhiFunctional lpNormPower(double a);
  static PhiFunctional quadraticComplement() { return {Kind::one_minus_lp2_squared, 2.0, 0}; }
  static PhiFunctional dbar(int m);

  bool concave() const;
  bool convex() const;
  bool strictlyConcave() const;
  /// Of the form g2(sum_x g1(P(x))) with g1(0) = 0 and g2 finite off infinity.
  bool separable() const;
};

/// Finite-Y joint: marginal weights over Y plus one tail-free conditional
/// per y, all on a common X support.
class JointDist {
 public:
  static JointDist validate(std::vector<double> py, std::vector<std::vector<double>> conditionals);
  /// Trusted constructor for closed-form constructions.
  static JointDist fromParts(std::vector<double> py, std::vector<std::vector<double>> conditionals);

  size_t ySize() const { return py_.size(); }
  size_t xSize() const { return cond_.empty() ? 0 : cond_[0].size(); }
  double py(size_t y) const { return py_[y]; }
  const std::vector<double>& pyVector() const { return py_; }
  const std::vector<double>& conditional(size_t y) const { return cond_[y]; }
  const std::vector<std::vector<double>>& conditionals() const { return cond_; }

  Pmf marginal() const;

 private:
  std::vector<double> py_;
  std::vector<std::vector<double>> cond_;
};

// Entropies and norms -------------------------------------------------------

ExtReal shannonEntropy(const Pmf& p);
double shannonEntropy(const std::vector<double>& masses);

/// Renyi entropy of order alpha > 0 (alpha = 1 dispatches to Shannon), nats.
ExtReal renyiEntropy(const Pmf& p, double alpha);

/// (sum P(x)^alpha)^(1/alpha).
ExtReal lpNorm(const Pmf& p, double alpha);
double lpNorm(const std::vector<double>& masses, double alpha);
double lpNormPower(const std::vector<double>& masses, double alpha);

double binaryEntropy(double u);
ExtReal binaryDivergence(double a, double b);

/// d-bar: (1/(2(M-1))) sum_{x,x'} |p_x - p_x'|, computed in O(M log M).
double dbarValue(const std::vector<double>& masses, int m);

ExtReal phiEval(const PhiFunctional& phi, const Pmf& p);
double phiEval(const PhiFunctional& phi, const std::vector<double>& masses);

// Conditional measures ------------------------------------------------------

ExtReal conditionalMeasure(const JointDist& j, const PhiFunctional& phi);

/// Arimoto: (alpha/(1-alpha)) log E[ ||P_{X|Y}||_alpha ]; alpha = 1 gives H(X|Y).
double arimoto(const JointDist& j, double alpha);
/// Hayashi: (1/(1-alpha)) log E[ ||P_{X|Y}||_alpha^alpha ]; alpha = 1 gives H(X|Y).
double hayashi(const JointDist& j, double alpha);

double bhattacharyya(const JointDist& j);    // E[ ||P_{X|Y}||_{1/2} ]
double quadraticEntropy(const JointDist& j); // E[ 1 - ||P_{X|Y}||_2^2 ]
double ktv(const JointDist& j);              // E[ dbar(P_{X|Y}) ]

// Measure selectors ----------------------------------------------------------

/// CLI-facing measure selector: shannon, renyi:a, arimoto:a, hayashi:a,
/// bhattacharyya, quadratic, ktv, lp:a, dbar.
struct Measure {
  enum class Kind { shannon, renyi, arimoto, hayashi, bhattacharyya, quadratic, ktv, lp, dbar };
  Kind kind = Kind::shannon;
  double alpha = 1.0;

  static Measure parse(const std::string& selector);
  std::string str() const;

  /// The phi functional whose expectation this measure is a (monotone
  /// function of). dbar/ktv map to the convex dbar functional.
  PhiFunctional phi(size_t supportSize) const;
};

/// Evaluate the measure on a joint (conditional form).
ExtReal conditionalMeasure(const JointDist& j, const Measure& m);

/// Evaluate the unconditional form on a marginal (Shannon/Renyi entropy,
/// lp norm, phi value).
ExtReal unconditionalMeasure(const Pmf& p, const Measure& m);

}  // namespace fano
