#include "fano/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace fano {

namespace {

int signFor(const Measure& m) {
  // E-domain ascent direction: l_alpha expectations shrink toward the
  // optimum when alpha > 1 (the Renyi map is decreasing there).
  if ((m.kind == Measure::Kind::lp || m.kind == Measure::Kind::renyi ||
       m.kind == Measure::Kind::arimoto || m.kind == Measure::Kind::hayashi) &&
      m.alpha > 1.0)
    return -1;
  return 1;
}

/// d(per-conditional functional)/d(mass); the measure-domain value is a
/// monotone map of the expectation, so ascending the expectation suffices.
void gradient(const Measure& m, const std::vector<double>& c, std::vector<double>& g) {
  g.resize(c.size());
  switch (m.kind) {
    case Measure::Kind::shannon: {
      for (size_t x = 0; x < c.size(); ++x) g[x] = -std::log(std::max(c[x], 1e-12)) - 1.0;
      return;
    }
    case Measure::Kind::renyi:
    case Measure::Kind::arimoto:
    case Measure::Kind::lp:
    case Measure::Kind::bhattacharyya: {
      double a = m.kind == Measure::Kind::bhattacharyya ? 0.5 : m.alpha;
      if (a == 1.0) {
        for (size_t x = 0; x < c.size(); ++x) g[x] = -std::log(std::max(c[x], 1e-12)) - 1.0;
        return;
      }
      double norm = lpNorm(c, a);
      double scale = std::pow(std::max(norm, 1e-12), 1.0 - a);
      for (size_t x = 0; x < c.size(); ++x)
        g[x] = scale * std::pow(std::max(c[x], 1e-12), a - 1.0);
      return;
    }
    case Measure::Kind::hayashi: {
      double a = m.alpha;
      if (a == 1.0) {
        for (size_t x = 0; x < c.size(); ++x) g[x] = -std::log(std::max(c[x], 1e-12)) - 1.0;
        return;
      }
      for (size_t x = 0; x < c.size(); ++x) g[x] = a * std::pow(std::max(c[x], 1e-12), a - 1.0);
      return;
    }
    case Measure::Kind::quadratic: {
      for (size_t x = 0; x < c.size(); ++x) g[x] = -2.0 * c[x];
      return;
    }
    case Measure::Kind::ktv:
    case Measure::Kind::dbar:
      throw Error(Errc::non_concave_phi, "no Fano-type bound to certify for dbar");
  }
}

struct Workspace {
  std::vector<double> qSorted;
  std::vector<double> py;
  std::vector<std::vector<double>> conds;
  int L = 1;
  double eps = 0.0;
};

std::vector<size_t> topLIndices(const std::vector<double>& c, int L) {
  std::vector<size_t> idx(c.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  size_t l = std::min<size_t>(size_t(L), c.size());
  std::partial_sort(idx.begin(), idx.begin() + long(l), idx.end(), [&](size_t a, size_t b) {
    if (c[a] != c[b]) return c[a] > c[b];
    return a < b;
  });
  idx.resize(l);
  return idx;
}

double jointListError(const Workspace& w) {
  KahanSum s;
  for (size_t y = 0; y < w.py.size(); ++y) s.add(w.py[y] * topLSum(w.conds[y], w.L));
  return std::max(0.0, 1.0 - s.get());
}

double marginalResidual(const Workspace& w, std::vector<double>& d) {
  d.assign(w.qSorted.size(), 0.0);
  for (size_t x = 0; x < d.size(); ++x) {
    KahanSum s;
    for (size_t y = 0; y < w.py.size(); ++y) s.add(w.py[y] * w.conds[y][x]);
    d[x] = w.qSorted[x] - s.get();
  }
  double tv = 0.0;
  for (double v : d) tv += std::abs(v);
  return 0.5 * tv;
}

/// Dykstra-style alternating repair: simplex clip, per-symbol additive
/// marginal correction, top-L water-fill for the error constraint.
bool project(Workspace& w, int rounds) {
  std::vector<double> d;
  for (int r = 0; r < rounds; ++r) {
    for (auto& c : w.conds) {
      double s = 0.0;
      for (double& v : c) {
        if (v < 0.0) v = 0.0;
        s += v;
      }
      if (s > 0.0)
        for (double& v : c) v /= s;
    }
    double tv = marginalResidual(w, d);
    for (auto& c : w.conds)
      for (size_t x = 0; x < c.size(); ++x) c[x] += d[x];

    double pe = jointListError(w);
    double peEx = std::max(0.0, pe - w.eps);
    if (peEx > 1e-13) {
      double target = 1.0 - w.eps;
      double have = 1.0 - pe;
      double gamma = (target - have) / std::max(1e-15, 1.0 - have);
      gamma = std::min(1.0, std::max(0.0, gamma));
      for (auto& c : w.conds) {
        auto top = topLIndices(c, w.L);
        double t = 0.0;
        for (size_t i : top) t += c[i];
        if (t >= 1.0 - 1e-15 || t <= 0.0) continue;
        std::vector<double> orig(c);
        for (size_t x = 0; x < c.size(); ++x) c[x] = (1.0 - gamma) * orig[x];
        for (size_t i : top) c[i] += gamma * orig[i] / t;
      }
      continue;
    }
    if (tv <= 1e-13 && peEx <= 1e-13) return true;
  }
  std::vector<double> dd;
  return marginalResidual(w, dd) <= 1e-10 && std::max(0.0, jointListError(w) - w.eps) <= 1e-10;
}

struct Candidate {
  double value = -std::numeric_limits<double>::infinity();
  JointDist joint;
  bool valid = false;
};

void consider(Candidate& best, const JointDist& j, const Measure& m, int sign) {
  ExtReal v = conditionalMeasure(j, m);
  if (v.isInfinite()) return;
  double val = v.value();
  if (!best.valid || sign * val > sign * best.value) {
    best.value = val;
    best.joint = j;
    best.valid = true;
  }
}

/// Joint with every conditional a permutation of the sorted candidate; null
/// when the Birkhoff route needs more than yCard distinct conditionals.
std::optional<JointDist> structuredJoint(const std::vector<double>& qSorted,
                                         std::vector<double> candidate, long yCard) {
  size_t n = std::max(qSorted.size(), candidate.size());
  candidate.resize(n, 0.0);
  std::vector<double> qs(qSorted);
  qs.resize(n, 0.0);
  Pmf target = Pmf::fromMasses(qs);
  Pmf source = Pmf::fromMasses(candidate);
  if (!majorizes(source, target).holds) return std::nullopt;
  try {
    DoublyStochastic mtx = hlpTransfer(target, source);
    BirkhoffDecomp bd = birkhoffDecompose(mtx);
    std::vector<double> py;
    std::vector<std::vector<double>> conds;
    for (size_t y = 0; y < bd.weights.size(); ++y) {
      std::vector<double> c(n, 0.0);
      for (size_t i = 0; i < n; ++i) c[i] = candidate[size_t(bd.perms[y][i])];
      bool merged = false;
      for (size_t k = 0; k < conds.size() && !merged; ++k) {
        bool same = true;
        for (size_t x = 0; same && x < n; ++x) same = std::abs(conds[k][x] - c[x]) <= 1e-12;
        if (same) {
          py[k] += bd.weights[y];
          merged = true;
        }
      }
      if (!merged) {
        py.push_back(bd.weights[y]);
        conds.push_back(std::move(c));
      }
    }
    if (long(py.size()) > yCard) return std::nullopt;
    return JointDist::fromParts(std::move(py), std::move(conds));
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

OracleResult bruteForceSup(const Pmf& qIn, int L, double eps, long yCard, const Measure& m,
                           const OracleConfig& cfg) {
  if (m.kind == Measure::Kind::ktv || m.kind == Measure::Kind::dbar)
    throw Error(Errc::non_concave_phi, "no Fano-type bound to certify for dbar");
  if (cfg.restarts < 1) throw Error(Errc::bad_input, "need at least one restart");
  Pmf q = qIn.tailFree() ? qIn : truncate(qIn, 1e-12).pmf;
  Interval range = feasibleRange(q, L, YCard::finite(yCard));
  if (gridCompare(eps, range.lo) < 0 || gridCompare(eps, range.hi) > 0)
    throw Error(Errc::infeasible, "eps outside the feasible interval", range.lo, range.hi);

  std::vector<double> qSorted = detail::sortedDescending(q.masses());
  const int sign = signFor(m);
  Candidate best;

  // Structured family: permutations of one sorted candidate on the feasible
  // polytope, seeded from the flattened extremal shapes.
  std::vector<std::vector<double>> seeds;
  try {
    seeds.push_back(fanoType2(q, L, eps, yCard).first.masses());
  } catch (const Error&) {
  }
  try {
    seeds.push_back(fanoType1(q, L, eps).first.masses());
  } catch (const Error&) {
  }
  if (gridCompare(range.hi, eps) <= 0) seeds.push_back(qSorted);  // independence feasible
  SplitMix64 seedRng(cfg.seed ^ 0xA5A5A5A5DEADBEEFull);
  size_t baseSeeds = seeds.size();
  for (int extra = 0; extra < 8 && baseSeeds > 0; ++extra) {
    // blends toward the point mass stay sorted, majorizing and feasible
    const auto& base = seeds[size_t(extra) % baseSeeds];
    double t = seedRng.uniform01();
    std::vector<double> r(base);
    for (size_t x = 0; x < r.size(); ++x) r[x] *= (1.0 - t);
    r[0] += t;
    seeds.push_back(std::move(r));
  }
  for (const auto& s : seeds) {
    double pe = std::max(0.0, 1.0 - topLSum(s, L));
    if (gridCompare(pe, eps) > 0) continue;
    if (auto j = structuredJoint(qSorted, s, yCard)) consider(best, *j, m, sign);
  }

  if (yCard == 1) {
    JointDist only = JointDist::fromParts({1.0}, {qSorted});
    consider(best, only, m, sign);
    return OracleResult{best.value, best.joint};
  }

  // Random-restart projected ascent on the conditionals.
  const size_t n = qSorted.size();
  std::vector<double> grad;
  for (int restart = 0; restart < cfg.restarts; ++restart) {
    SplitMix64 rng(cfg.seed + 0x9E3779B97F4A7C15ull * std::uint64_t(restart + 1));
    Workspace w;
    w.qSorted = qSorted;
    w.L = L;
    w.eps = eps;
    w.py.resize(size_t(yCard));
    double tot = 0.0;
    for (double& v : w.py) {
      v = -std::log(std::max(rng.uniform01(), 1e-12));
      tot += v;
    }
    for (double& v : w.py) v /= tot;
    w.conds.assign(size_t(yCard), qSorted);
    if (best.valid) {
      // reuse the structured argmax shape under a random shuffle
      for (auto& c : w.conds) {
        c = best.joint.conditional(rng.below(best.joint.ySize()));
        c.resize(n, 0.0);
      }
    }
    for (auto& c : w.conds)
      for (double& v : c) v = std::max(0.0, v + 0.05 * (rng.uniform01() - 0.5));
    if (!project(w, 400)) continue;

    double cur = conditionalMeasure(JointDist::fromParts(w.py, w.conds), m).value();
    double step = 0.05;
    for (int iter = 0; iter < cfg.maxIters && step > cfg.stepTolerance; ++iter) {
      Workspace trial = w;
      for (size_t y = 0; y < trial.conds.size(); ++y) {
        gradient(m, trial.conds[y], grad);
        double scale = 0.0;
        for (double gv : grad) scale = std::max(scale, std::abs(gv));
        if (scale <= 0.0) continue;
        for (size_t x = 0; x < trial.conds[y].size(); ++x)
          trial.conds[y][x] += sign * step * grad[x] / scale;
      }
      if (!project(trial, 400)) {
        step *= 0.5;
        continue;
      }
      double val = conditionalMeasure(JointDist::fromParts(trial.py, trial.conds), m).value();
      if (sign * val > sign * cur + 1e-15) {
        w = std::move(trial);
        cur = val;
        step = std::min(0.25, step * 1.25);
      } else {
        step *= 0.5;
      }
    }
    consider(best, JointDist::fromParts(w.py, w.conds), m, sign);
  }

  if (!best.valid) throw Error(Errc::numerical_breakdown, "no feasible joint found");
  return OracleResult{best.value, best.joint};
}

// ---------------------------------------------------------------------------
// TV-ball grid oracle

double tvBallGridSlack(size_t supportSize, int gridResolution) {
  double t = std::min(0.5, double(supportSize) / (2.0 * double(gridResolution)));
  double fan = binaryEntropy(t) + t * std::log(double(std::max<size_t>(supportSize - 1, 1)));
  return fan + 1e-9;
}

namespace {

void enumerateCompositions(int parts, int total, std::vector<int>& cur,
                           const std::function<void(const std::vector<int>&)>& emit) {
  if (parts == 1) {
    cur.push_back(total);
    emit(cur);
    cur.pop_back();
    return;
  }
  for (int k = 0; k <= total; ++k) {
    cur.push_back(k);
    enumerateCompositions(parts - 1, total - k, cur, emit);
    cur.pop_back();
  }
}

}  // namespace

double tvBallMinEntropy(const Pmf& qIn, double delta, const OracleConfig& cfg) {
  if (cfg.gridResolution < 1 || cfg.gridResolution > 200)
    throw Error(Errc::bad_input, "grid resolution must be in [1, 200]");
  Pmf q = qIn.tailFree() ? qIn : truncate(qIn, 1e-12).pmf;
  const auto& qm = q.masses();
  const int g = cfg.gridResolution;
  double best = shannonEntropy(qm);  // the center is always inside the ball

  std::vector<int> cur;
  std::vector<double> r(qm.size());
  enumerateCompositions(int(qm.size()), g, cur, [&](const std::vector<int>& comp) {
    double tv = 0.0;
    for (size_t x = 0; x < qm.size(); ++x) {
      r[x] = double(comp[x]) / double(g);
      tv += std::abs(r[x] - qm[x]);
    }
    if (0.5 * tv > delta + 1e-12) return;
    double h = shannonEntropy(r);
    if (h < best) best = h;
  });
  return best;
}

// ---------------------------------------------------------------------------
// Exhaustive micro-oracle

namespace {

struct MicroJoint {
  double p = 0.5;
  std::vector<double> c1, c2;
};

bool deriveSecond(const std::vector<double>& qm, double p, const std::vector<double>& c1,
                  std::vector<double>& c2) {
  c2.resize(qm.size());
  for (size_t x = 0; x < qm.size(); ++x) {
    double v = (qm[x] - p * c1[x]) / (1.0 - p);
    if (v < -1e-12) return false;
    c2[x] = std::max(0.0, v);
  }
  return true;
}

double microError(const MicroJoint& mj, int L) {
  return std::max(0.0, 1.0 - mj.p * topLSum(mj.c1, L) - (1.0 - mj.p) * topLSum(mj.c2, L));
}

}  // namespace

double exhaustiveSmall(const Pmf& qIn, int L, double eps, long yCard, const Measure& m,
                       int mesh) {
  if (mesh > 64) throw Error(Errc::mesh_too_large, "mesh capped at 64 per free coordinate");
  if (mesh < 2) throw Error(Errc::bad_input, "mesh must be at least 2");
  Pmf q = qIn.tailFree() ? qIn : truncate(qIn, 1e-12).pmf;
  if (q.size() > 3) throw Error(Errc::bad_input, "exhaustive oracle covers |X| <= 3");
  if (yCard < 1 || yCard > 2) throw Error(Errc::bad_input, "exhaustive oracle covers N <= 2");
  Interval range = feasibleRange(q, L, YCard::finite(yCard));
  if (gridCompare(eps, range.lo) < 0 || gridCompare(eps, range.hi) > 0)
    throw Error(Errc::infeasible, "eps outside the feasible interval", range.lo, range.hi);

  const std::vector<double> qm = detail::sortedDescending(q.masses());
  if (yCard == 1)
    return conditionalMeasure(JointDist::fromParts({1.0}, {qm}), m).value();

  double best = -std::numeric_limits<double>::infinity();
  auto evalJoint = [&](const MicroJoint& mj) {
    JointDist j = JointDist::fromParts({mj.p, 1.0 - mj.p}, {mj.c1, mj.c2});
    ExtReal v = conditionalMeasure(j, m);
    if (!v.isInfinite()) best = std::max(best, v.value());
  };

  // feasible anchor: the block construction attaining the lower endpoint
  {
    auto [upper, lowerJ] = endpointAchievers(q, L, yCard);
    (void)upper;
    if (listMapError(lowerJ, L) <= eps + 1e-12) {
      ExtReal v = conditionalMeasure(lowerJ, m);
      if (!v.isInfinite()) best = std::max(best, v.value());
    }
    if (gridCompare(range.hi, eps) <= 0) {
      ExtReal v = conditionalMeasure(JointDist::fromParts({1.0}, {qm}), m);
      if (!v.isInfinite()) best = std::max(best, v.value());
    }
  }

  std::vector<int> cur;
  for (int i = 1; i < mesh; ++i) {
    MicroJoint mj;
    mj.p = double(i) / double(mesh);
    enumerateCompositions(int(qm.size()), mesh, cur, [&](const std::vector<int>& comp) {
      mj.c1.resize(qm.size());
      for (size_t x = 0; x < qm.size(); ++x) mj.c1[x] = double(comp[x]) / double(mesh);
      if (!deriveSecond(qm, mj.p, mj.c1, mj.c2)) return;
      if (microError(mj, L) <= eps + 1e-12) {
        evalJoint(mj);
        return;
      }
      // snap onto the error-constraint boundary along the top-L
      // concentration direction of the first conditional
      auto top = topLIndices(mj.c1, L);
      double t = 0.0;
      for (size_t x : top) t += mj.c1[x];
      if (t <= 0.0 || t >= 1.0 - 1e-15) return;
      std::vector<double> base = mj.c1;
      auto blend = [&](double theta) {
        for (size_t x = 0; x < base.size(); ++x) mj.c1[x] = (1.0 - theta) * base[x];
        for (size_t x : top) mj.c1[x] += theta * base[x] / t;
      };
      blend(1.0);
      if (!deriveSecond(qm, mj.p, mj.c1, mj.c2) || microError(mj, L) > eps + 1e-12) return;
      double lo = 0.0, hi2 = 1.0;
      for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi2);
        blend(mid);
        bool ok = deriveSecond(qm, mj.p, mj.c1, mj.c2) && microError(mj, L) <= eps + 1e-12;
        (ok ? hi2 : lo) = mid;
      }
      blend(hi2);
      if (deriveSecond(qm, mj.p, mj.c1, mj.c2) && microError(mj, L) <= eps + 1e-12) evalJoint(mj);
    });
  }
  return best;
}

}  // namespace fano
