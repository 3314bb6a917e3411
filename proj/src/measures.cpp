#include "fano/measures.hpp"

#include <algorithm>
#include <cmath>

namespace fano {

// ---------------------------------------------------------------------------
// PhiFunctional

PhiFunctional PhiFunctional::lpNorm(double a) {
  if (!(a > 0.0)) throw Error(Errc::bad_input, "lp-norm needs alpha > 0");
  return {Kind::lp_norm, a, 0};
}

PhiFunctional PhiFunctional::lpNormPower(double a) {
  if (!(a > 0.0)) throw Error(Errc::bad_input, "lp-norm-power needs alpha > 0");
  return {Kind::lp_norm_power, a, 0};
}

PhiFunctional PhiFunctional::dbar(int m) {
  if (m < 2) throw Error(Errc::bad_input, "dbar needs finite M >= 2");
  return {Kind::dbar, 0.0, m};
}

bool PhiFunctional::concave() const {
  switch (kind) {
    case Kind::shannon: return true;
    case Kind::lp_norm: return alpha <= 1.0;
    case Kind::lp_norm_power: return alpha <= 1.0;
    case Kind::one_minus_lp2_squared: return true;
    case Kind::dbar: return false;
  }
  return false;
}

bool PhiFunctional::convex() const {
  switch (kind) {
    case Kind::shannon: return false;
    case Kind::lp_norm: return alpha >= 1.0;
    case Kind::lp_norm_power: return alpha >= 1.0;
    case Kind::one_minus_lp2_squared: return false;
    case Kind::dbar: return true;
  }
  return false;
}

bool PhiFunctional::strictlyConcave() const {
  switch (kind) {
    case Kind::shannon: return true;
    case Kind::lp_norm: return alpha < 1.0;
    case Kind::lp_norm_power: return alpha < 1.0;
    case Kind::one_minus_lp2_squared: return true;
    case Kind::dbar: return false;
  }
  return false;
}

bool PhiFunctional::separable() const { return kind != Kind::dbar; }

// ---------------------------------------------------------------------------
// JointDist

JointDist JointDist::validate(std::vector<double> py, std::vector<std::vector<double>> conds) {
  if (py.empty() || py.size() != conds.size())
    throw Error(Errc::bad_input, "py and conditionals must be nonempty and aligned");
  for (double w : py)
    if (!(w >= 0.0) || !std::isfinite(w)) throw Error(Errc::negative_mass, "py entries must be >= 0");
  if (std::abs(kahanTotal(py) - 1.0) > 1e-9)
    throw Error(Errc::mass_sum_mismatch, "py must sum to 1");
  size_t m = conds[0].size();
  for (const auto& c : conds) {
    if (c.size() != m) throw Error(Errc::bad_input, "conditionals must share one X support");
    for (double v : c)
      if (!(v >= 0.0) || !std::isfinite(v))
        throw Error(Errc::negative_mass, "conditional entries must be >= 0");
    if (std::abs(kahanTotal(c) - 1.0) > 1e-9)
      throw Error(Errc::mass_sum_mismatch, "each conditional must sum to 1");
  }
  return fromParts(std::move(py), std::move(conds));
}

JointDist JointDist::fromParts(std::vector<double> py, std::vector<std::vector<double>> conds) {
  JointDist j;
  j.py_ = std::move(py);
  j.cond_ = std::move(conds);
  return j;
}

Pmf JointDist::marginal() const {
  std::vector<double> m(xSize(), 0.0);
  for (size_t x = 0; x < m.size(); ++x) {
    KahanSum s;
    for (size_t y = 0; y < ySize(); ++y) s.add(py_[y] * cond_[y][x]);
    m[x] = s.get();
  }
  return Pmf::fromMasses(std::move(m));
}

// ---------------------------------------------------------------------------
// Entropies and norms

double shannonEntropy(const std::vector<double>& masses) {
  KahanSum s;
  for (double u : masses) s.add(eta(u));
  return s.get();
}

ExtReal shannonEntropy(const Pmf& p) {
  ExtReal tail = p.tail().shannonContribution();
  if (tail.isInfinite()) return ExtReal::infinity();
  return shannonEntropy(p.masses()) + tail.value();
}

double lpNormPower(const std::vector<double>& masses, double alpha) {
  KahanSum s;
  for (double u : masses)
    if (u > 0.0) s.add(std::pow(u, alpha));
  return s.get();
}

double lpNorm(const std::vector<double>& masses, double alpha) {
  return std::pow(lpNormPower(masses, alpha), 1.0 / alpha);
}

namespace {

ExtReal lpPowerTotal(const Pmf& p, double alpha) {
  ExtReal tail = p.tail().lpPowerContribution(alpha);
  if (tail.isInfinite()) return ExtReal::infinity();
  return lpNormPower(p.masses(), alpha) + tail.value();
}

}  // namespace

ExtReal lpNorm(const Pmf& p, double alpha) {
  ExtReal t = lpPowerTotal(p, alpha);
  if (t.isInfinite()) return ExtReal::infinity();
  return std::pow(t.value(), 1.0 / alpha);
}

ExtReal renyiEntropy(const Pmf& p, double alpha) {
  if (!(alpha > 0.0)) throw Error(Errc::bad_input, "renyi order must be > 0");
  if (alpha == 1.0) return shannonEntropy(p);
  ExtReal t = lpPowerTotal(p, alpha);
  if (t.isInfinite()) return alpha < 1.0 ? ExtReal::infinity() : ExtReal(0.0);
  return std::log(t.value()) / (1.0 - alpha);
}

double binaryEntropy(double u) { return eta(u) + eta(1.0 - u); }

ExtReal binaryDivergence(double a, double b) {
  if (!(a >= 0.0 && a <= 1.0)) throw Error(Errc::bad_input, "a must be in [0,1]");
  if (!(b >= 0.0 && b <= 1.0)) throw Error(Errc::bad_input, "b must be in [0,1]");
  auto term = [](double p, double q) -> ExtReal {
    if (p == 0.0) return 0.0;
    if (q == 0.0) return ExtReal::infinity();
    return p * std::log(p / q);
  };
  return term(a, b) + term(1.0 - a, 1.0 - b);
}

double dbarValue(const std::vector<double>& masses, int m) {
  if (m < 2) throw Error(Errc::bad_input, "dbar needs M >= 2");
  std::vector<double> p(masses);
  p.resize(size_t(m), 0.0);
  std::sort(p.begin(), p.end());  // ascending
  // sum_{x,x'} |p_x - p_x'| = 2 sum_i (2i - M - 1) p^(i), i ascending 1-based
  KahanSum s;
  for (int i = 1; i <= m; ++i) s.add(double(2 * i - m - 1) * p[size_t(i - 1)]);
  return s.get() / double(m - 1);
}

double phiEval(const PhiFunctional& phi, const std::vector<double>& masses) {
  switch (phi.kind) {
    case PhiFunctional::Kind::shannon: return shannonEntropy(masses);
    case PhiFunctional::Kind::lp_norm: return lpNorm(masses, phi.alpha);
    case PhiFunctional::Kind::lp_norm_power: return lpNormPower(masses, phi.alpha);
    case PhiFunctional::Kind::one_minus_lp2_squared: return 1.0 - lpNormPower(masses, 2.0);
    case PhiFunctional::Kind::dbar: return dbarValue(masses, phi.m);
  }
  return 0.0;
}

ExtReal phiEval(const PhiFunctional& phi, const Pmf& p) {
  if (p.tailFree()) return phiEval(phi, p.masses());
  switch (phi.kind) {
    case PhiFunctional::Kind::shannon: return shannonEntropy(p);
    case PhiFunctional::Kind::lp_norm: return lpNorm(p, phi.alpha);
    case PhiFunctional::Kind::lp_norm_power: return lpPowerTotal(p, phi.alpha);
    case PhiFunctional::Kind::one_minus_lp2_squared: {
      ExtReal t = lpPowerTotal(p, 2.0);
      return 1.0 - t.value();
    }
    case PhiFunctional::Kind::dbar:
      throw Error(Errc::unsupported_tail, "dbar needs a tail-free distribution");
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Conditional measures

ExtReal conditionalMeasure(const JointDist& j, const PhiFunctional& phi) {
  ExtReal acc(0.0);
  for (size_t y = 0; y < j.ySize(); ++y)
    acc += j.py(y) * ExtReal(phiEval(phi, j.conditional(y)));
  return acc;
}

namespace {

double expectedConditionalShannon(const JointDist& j) {
  KahanSum s;
  for (size_t y = 0; y < j.ySize(); ++y) s.add(j.py(y) * shannonEntropy(j.conditional(y)));
  return s.get();
}

}  // namespace

double arimoto(const JointDist& j, double alpha) {
  if (!(alpha > 0.0)) throw Error(Errc::bad_input, "order must be > 0");
  if (alpha == 1.0) return expectedConditionalShannon(j);
  KahanSum s;
  for (size_t y = 0; y < j.ySize(); ++y) s.add(j.py(y) * lpNorm(j.conditional(y), alpha));
  return (alpha / (1.0 - alpha)) * std::log(s.get());
}

double hayashi(const JointDist& j, double alpha) {
  if (!(alpha > 0.0)) throw Error(Errc::bad_input, "order must be > 0");
  if (alpha == 1.0) return expectedConditionalShannon(j);
  KahanSum s;
  for (size_t y = 0; y < j.ySize(); ++y) s.add(j.py(y) * lpNormPower(j.conditional(y), alpha));
  return std::log(s.get()) / (1.0 - alpha);
}

double bhattacharyya(const JointDist& j) {
  KahanSum s;
  for (size_t y = 0; y < j.ySize(); ++y) s.add(j.py(y) * lpNorm(j.conditional(y), 0.5));
  return s.get();
}

double quadraticEntropy(const JointDist& j) {
  KahanSum s;
  for (size_t y = 0; y < j.ySize(); ++y)
    s.add(j.py(y) * (1.0 - lpNormPower(j.conditional(y), 2.0)));
  return s.get();
}

double ktv(const JointDist& j) {
  int m = int(j.xSize());
  KahanSum s;
  for (size_t y = 0; y < j.ySize(); ++y) s.add(j.py(y) * dbarValue(j.conditional(y), m));
  return s.get();
}

// ---------------------------------------------------------------------------
// Measure selectors

Measure Measure::parse(const std::string& selector) {
  auto colon = selector.find(':');
  std::string name = selector.substr(0, colon);
  double a = 1.0;
  bool hasAlpha = colon != std::string::npos;
  if (hasAlpha) {
    try {
      a = std::stod(selector.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error(Errc::bad_input, "bad measure parameter in '" + selector + "'");
    }
  }
  auto need = [&](Kind k) {
    if (!hasAlpha) throw Error(Errc::bad_input, "measure '" + name + "' needs :alpha");
    if (!(a > 0.0)) throw Error(Errc::bad_input, "measure order must be > 0");
    return Measure{k, a};
  };
  if (name == "shannon") return {Kind::shannon, 1.0};
  if (name == "renyi") return need(Kind::renyi);
  if (name == "arimoto") return need(Kind::arimoto);
  if (name == "hayashi") return need(Kind::hayashi);
  if (name == "bhattacharyya") return {Kind::bhattacharyya, 0.5};
  if (name == "quadratic") return {Kind::quadratic, 2.0};
  if (name == "ktv") return {Kind::ktv, 1.0};
  if (name == "lp") return need(Kind::lp);
  if (name == "dbar") return {Kind::dbar, 1.0};
  throw Error(Errc::bad_input, "unknown measure '" + selector + "'");
}

std::string Measure::str() const {
  auto withAlpha = [&](const char* n) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s:%g", n, alpha);
    return std::string(buf);
  };
  switch (kind) {
    case Kind::shannon: return "shannon";
    case Kind::renyi: return withAlpha("renyi");
    case Kind::arimoto: return withAlpha("arimoto");
    case Kind::hayashi: return withAlpha("hayashi");
    case Kind::bhattacharyya: return "bhattacharyya";
    case Kind::quadratic: return "quadratic";
    case Kind::ktv: return "ktv";
    case Kind::lp: return withAlpha("lp");
    case Kind::dbar: return "dbar";
  }
  return "shannon";
}

PhiFunctional Measure::phi(size_t supportSize) const {
  switch (kind) {
    case Kind::shannon: return PhiFunctional::shannon();
    case Kind::renyi:
    case Kind::arimoto:
      return alpha == 1.0 ? PhiFunctional::shannon() : PhiFunctional::lpNorm(alpha);
    case Kind::hayashi:
      return alpha == 1.0 ? PhiFunctional::shannon() : PhiFunctional::lpNormPower(alpha);
    case Kind::bhattacharyya: return PhiFunctional::lpNorm(0.5);
    case Kind::quadratic: return PhiFunctional::quadraticComplement();
    case Kind::ktv:
    case Kind::dbar:
      return PhiFunctional::dbar(int(supportSize));
    case Kind::lp: return PhiFunctional::lpNorm(alpha);
  }
  return PhiFunctional::shannon();
}

ExtReal conditionalMeasure(const JointDist& j, const Measure& m) {
  switch (m.kind) {
    case Measure::Kind::shannon: return expectedConditionalShannon(j);
    case Measure::Kind::renyi:
    case Measure::Kind::arimoto: return arimoto(j, m.alpha);
    case Measure::Kind::hayashi: return hayashi(j, m.alpha);
    case Measure::Kind::bhattacharyya: return bhattacharyya(j);
    case Measure::Kind::quadratic: return quadraticEntropy(j);
    case Measure::Kind::ktv: return ktv(j);
    case Measure::Kind::lp: return conditionalMeasure(j, PhiFunctional::lpNorm(m.alpha));
    case Measure::Kind::dbar: return ktv(j);
  }
  return 0.0;
}

ExtReal unconditionalMeasure(const Pmf& p, const Measure& m) {
  switch (m.kind) {
    case Measure::Kind::shannon: return shannonEntropy(p);
    case Measure::Kind::renyi:
    case Measure::Kind::arimoto:
    case Measure::Kind::hayashi: return renyiEntropy(p, m.alpha);
    case Measure::Kind::bhattacharyya: return lpNorm(p, 0.5);
    case Measure::Kind::quadratic: return phiEval(PhiFunctional::quadraticComplement(), p);
    case Measure::Kind::ktv:
    case Measure::Kind::dbar: return phiEval(PhiFunctional::dbar(int(p.size())), p);
    case Measure::Kind::lp: return lpNorm(p, m.alpha);
  }
  return 0.0;
}

}  // namespace fano
