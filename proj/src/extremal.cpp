#include "fano/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace fano {

// ---------------------------------------------------------------------------
// DoublyStochastic

DoublyStochastic DoublyStochastic::identity(int n) {
  DoublyStochastic m;
  m.n_ = n;
  m.a_.assign(size_t(n) * size_t(n), 0.0);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

DoublyStochastic DoublyStochastic::fromRaw(int n, std::vector<double> rowMajor) {
  DoublyStochastic m;
  m.n_ = n;
  m.a_ = std::move(rowMajor);
  return m;
}

DoublyStochastic DoublyStochastic::checked(int n, std::vector<double> rowMajor) {
  if (n < 1 || rowMajor.size() != size_t(n) * size_t(n))
    throw Error(Errc::bad_input, "matrix shape mismatch");
  for (double v : rowMajor)
    if (!(v >= -1e-12) || !(v <= 1.0 + 1e-12))
      throw Error(Errc::bad_input, "entries must lie in [0,1]");
  DoublyStochastic m = fromRaw(n, std::move(rowMajor));
  for (int i = 0; i < n; ++i) {
    KahanSum row, col;
    for (int j = 0; j < n; ++j) {
      row.add(m.at(i, j));
      col.add(m.at(j, i));
    }
    if (std::abs(row.get() - 1.0) > 1e-12 || std::abs(col.get() - 1.0) > 1e-12)
      throw Error(Errc::bad_input, "row/column sums must equal 1");
  }
  return m;
}

std::vector<double> DoublyStochastic::apply(const std::vector<double>& v) const {
  if (v.size() != size_t(n_)) throw Error(Errc::bad_input, "dimension mismatch");
  std::vector<double> out(size_t(n_), 0.0);
  for (int i = 0; i < n_; ++i) {
    KahanSum s;
    for (int j = 0; j < n_; ++j) s.add(at(i, j) * v[size_t(j)]);
    out[size_t(i)] = s.get();
  }
  return out;
}

// ---------------------------------------------------------------------------
// HLP transfer

DoublyStochastic hlpTransfer(const Pmf& target, const Pmf& source) {
  std::vector<double> p = detail::sortedDescending(target.masses());
  std::vector<double> r = detail::sortedDescending(source.masses());
  size_t n = std::max(p.size(), r.size());
  p.resize(n, 0.0);
  r.resize(n, 0.0);
  if (!majorizes(source, target).holds)
    throw Error(Errc::not_majorized, "source must majorize target");

  DoublyStochastic m = DoublyStochastic::identity(int(n));
  auto applyTransform = [&](size_t i, size_t j, double lambda) {
    // M <- T M with T the transfer (1-lambda) I + lambda swap(i,j)
    for (size_t c = 0; c < n; ++c) {
      double mi = m.at(int(i), int(c));
      double mj = m.at(int(j), int(c));
      m.at(int(i), int(c)) = (1.0 - lambda) * mi + lambda * mj;
      m.at(int(j), int(c)) = (1.0 - lambda) * mj + lambda * mi;
    }
    double ri = r[i], rj = r[j];
    r[i] = (1.0 - lambda) * ri + lambda * rj;
    r[j] = (1.0 - lambda) * rj + lambda * ri;
  };

  constexpr double kDone = 1e-13;
  for (size_t step = 0; step < 4 * n + 4; ++step) {
    size_t surplus = n, deficit = n;
    double bestSurplus = kDone, bestDeficit = kDone;
    for (size_t k = 0; k < n; ++k) {
      double d = r[k] - p[k];
      if (d > bestSurplus) {
        bestSurplus = d;
        surplus = k;
      }
      if (-d > bestDeficit) {
        bestDeficit = -d;
        deficit = k;
      }
    }
    if (surplus == n || deficit == n) break;
    // Largest surplus to largest deficit; if that pair cannot host a valid
    // transfer, fall back to the leftmost unfixed coordinate, which always
    // can (its value exceeds every deficit coordinate's).
    if (r[surplus] - r[deficit] < std::min(bestSurplus, bestDeficit)) {
      for (size_t k = 0; k < n; ++k) {
        if (r[k] - p[k] > kDone) {
          surplus = k;
          bestSurplus = r[k] - p[k];
          break;
        }
      }
    }
    double delta = std::min(bestSurplus, bestDeficit);
    double gap = r[surplus] - r[deficit];
    if (!(gap > 0.0)) throw Error(Errc::numerical_breakdown, "transfer gap vanished");
    applyTransform(surplus, deficit, std::min(1.0, delta / gap));
  }

  for (size_t k = 0; k < n; ++k) {
    if (std::abs(r[k] - p[k]) > 1e-10)
      throw Error(Errc::numerical_breakdown, "transfer chain failed to converge");
  }
  return m;
}

// ---------------------------------------------------------------------------
// Birkhoff decomposition

namespace {

/// Kuhn's augmenting-path matching on the positivity graph. adj in row-major
/// bool form; matchL[i] = column matched to row i or -1.
bool tryAugment(int i, int n, const std::vector<char>& adj, std::vector<int>& matchR,
                std::vector<char>& used) {
  for (int j = 0; j < n; ++j) {
    if (!adj[size_t(i) * size_t(n) + size_t(j)] || used[size_t(j)]) continue;
    used[size_t(j)] = 1;
    if (matchR[size_t(j)] < 0 || tryAugment(matchR[size_t(j)], n, adj, matchR, used)) {
      matchR[size_t(j)] = i;
      return true;
    }
  }
  return false;
}

bool perfectMatching(int n, const std::vector<char>& adj, std::vector<int>& rowToCol) {
  std::vector<int> matchR(size_t(n), -1);
  for (int i = 0; i < n; ++i) {
    std::vector<char> used(size_t(n), 0);
    if (!tryAugment(i, n, adj, matchR, used)) return false;
  }
  rowToCol.assign(size_t(n), -1);
  for (int j = 0; j < n; ++j)
    if (matchR[size_t(j)] >= 0) rowToCol[size_t(matchR[size_t(j)])] = j;
  return true;
}

/// Lexicographically smallest perfect matching: fix rows in order, choosing
/// the smallest column that keeps the remainder matchable.
bool lexMatching(int n, const std::vector<char>& adj, std::vector<int>& rowToCol) {
  std::vector<char> work(adj);
  std::vector<int> probe;
  rowToCol.assign(size_t(n), -1);
  for (int i = 0; i < n; ++i) {
    bool fixed = false;
    for (int j = 0; j < n && !fixed; ++j) {
      if (!work[size_t(i) * size_t(n) + size_t(j)]) continue;
      // tentatively pin i -> j: clear row i and column j except (i, j)
      std::vector<char> trial(work);
      for (int c = 0; c < n; ++c)
        if (c != j) trial[size_t(i) * size_t(n) + size_t(c)] = 0;
      for (int r = 0; r < n; ++r)
        if (r != i) trial[size_t(r) * size_t(n) + size_t(j)] = 0;
      if (perfectMatching(n, trial, probe)) {
        work = std::move(trial);
        rowToCol[size_t(i)] = j;
        fixed = true;
      }
    }
    if (!fixed) return false;
  }
  return true;
}

}  // namespace

BirkhoffDecomp birkhoffDecompose(const DoublyStochastic& mIn) {
  const int n = mIn.n();
  std::vector<double> residual(size_t(n) * size_t(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) residual[size_t(i) * size_t(n) + size_t(j)] = mIn.at(i, j);

  BirkhoffDecomp out;
  double remaining = 1.0;
  constexpr double kZero = 1e-13;
  const size_t maxSteps = size_t(n) * size_t(n) + 2;

  for (size_t step = 0; step < maxSteps && remaining > 1e-12; ++step) {
    std::vector<char> adj(size_t(n) * size_t(n), 0);
    for (size_t k = 0; k < adj.size(); ++k) adj[k] = residual[k] > kZero ? 1 : 0;
    std::vector<int> perm;
    if (!lexMatching(n, adj, perm))
      throw Error(Errc::numerical_breakdown, "no positive perfect matching in residual");
    double w = remaining;
    for (int i = 0; i < n; ++i)
      w = std::min(w, residual[size_t(i) * size_t(n) + size_t(perm[size_t(i)])]);
    for (int i = 0; i < n; ++i) {
      double& cell = residual[size_t(i) * size_t(n) + size_t(perm[size_t(i)])];
      cell -= w;
      if (cell < kZero) cell = 0.0;
    }
    out.weights.push_back(w);
    out.perms.push_back(std::move(perm));
    remaining -= w;
  }

  if (remaining > 1e-9)
    throw Error(Errc::numerical_breakdown, "residual mass did not vanish");
  if (remaining > 0.0 && !out.weights.empty()) out.weights.back() += remaining;
  return out;
}

// ---------------------------------------------------------------------------
// Extremal joints

namespace {

struct MergedJoint {
  std::vector<double> py;
  std::vector<std::vector<double>> conds;
};

void mergeConditional(MergedJoint& acc, double weight, std::vector<double> cond) {
  if (weight <= 0.0) return;
  for (size_t k = 0; k < acc.conds.size(); ++k) {
    const auto& c = acc.conds[k];
    bool same = c.size() == cond.size();
    for (size_t x = 0; same && x < c.size(); ++x) same = std::abs(c[x] - cond[x]) <= 1e-12;
    if (same) {
      acc.py[k] += weight;
      return;
    }
  }
  acc.py.push_back(weight);
  acc.conds.push_back(std::move(cond));
}

/// Zero-error cover: distribute the L-J+1 copies of V over the support
/// {J..S} so symbol x is covered with probability Q(x)/V. Quotas laid on a
/// circle of circumference L-J+1 and cut by L-J+1 equally spaced knives;
/// each arc between consecutive breakpoints yields one cover set.
JointDist zeroErrorCover(const std::vector<double>& qSorted, int L, int J, double V,
                         size_t support) {
  size_t first = size_t(J - 1);  // 0-based first flattened position
  std::vector<double> cum;       // cumulative quotas over items first..support-1
  cum.push_back(0.0);
  KahanSum acc;
  for (size_t x = first; x < support; ++x) {
    acc.add(qSorted[x] / V);
    cum.push_back(acc.get());
  }
  int copies = L - J + 1;
  // breakpoints: fractional parts of the cumulative quotas
  std::vector<double> cuts{0.0, 1.0};
  for (size_t i = 1; i + 1 < cum.size(); ++i) {
    double f = cum[i] - std::floor(cum[i]);
    cuts.push_back(std::min(std::max(f, 0.0), 1.0));
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-14; }),
             cuts.end());

  MergedJoint m;
  size_t outLen = std::max(qSorted.size(), size_t(L));
  for (size_t c = 0; c + 1 < cuts.size(); ++c) {
    double t = 0.5 * (cuts[c] + cuts[c + 1]);
    double weight = cuts[c + 1] - cuts[c];
    std::vector<double> cond(outLen, 0.0);
    for (size_t x = 0; x < first; ++x) cond[x] = qSorted[x];
    for (int k = 0; k < copies; ++k) {
      double cut = t + double(k);
      size_t item = size_t(std::upper_bound(cum.begin(), cum.end(), cut) - cum.begin());
      if (item == 0 || item >= cum.size()) continue;  // cut beyond total quota
      cond[first + item - 1] = V;
    }
    mergeConditional(m, weight, std::move(cond));
  }
  return JointDist::fromParts(std::move(m.py), std::move(m.conds));
}

JointDist buildFromWindow(const std::vector<double>& qSorted, const Pmf& fanoDist, int J, long K) {
  size_t lo = size_t(J - 1), hi = size_t(K);  // window [lo, hi)
  std::vector<double> targetWin(qSorted.begin() + long(lo), qSorted.begin() + long(hi));
  std::vector<double> sourceWin(fanoDist.masses().begin() + long(lo),
                                fanoDist.masses().begin() + long(hi));
  DoublyStochastic m = hlpTransfer(Pmf::fromMasses(targetWin), Pmf::fromMasses(sourceWin));
  BirkhoffDecomp bd = birkhoffDecompose(m);

  MergedJoint out;
  for (size_t y = 0; y < bd.weights.size(); ++y) {
    std::vector<double> cond = fanoDist.masses();
    for (size_t i = 0; i < targetWin.size(); ++i)
      cond[lo + i] = sourceWin[size_t(bd.perms[y][i])];
    mergeConditional(out, bd.weights[y], std::move(cond));
  }
  return JointDist::fromParts(std::move(out.py), std::move(out.conds));
}

JointDist extremalCore(const Pmf& qIn, int L, double eps, YCard y) {
  if (!qIn.tailFree())
    throw Error(Errc::unsupported_tail, "extremal synthesis needs a tail-free marginal");
  auto [dist, idx] = y.isFinite() ? fanoType2(qIn, L, eps, *y.n) : fanoType1(qIn, L, eps);

  std::vector<double> qSorted = detail::sortedDescending(qIn.masses());
  double hi = marginalListError(qIn, L);
  if (gridCompare(eps, hi) == 0) {
    // endpoint: independence is optimal
    std::vector<double> cond(qSorted);
    cond.resize(std::max(cond.size(), dist.size()), 0.0);
    return JointDist::fromParts({1.0}, {std::move(cond)});
  }
  size_t support = qSorted.size();
  while (support > 0 && qSorted[support - 1] <= 0.0) --support;
  if (gridCompare(eps, 0.0) == 0)
    return zeroErrorCover(qSorted, L, idx.J, idx.V, support);
  return buildFromWindow(qSorted, dist, idx.J, idx.K);
}

}  // namespace

JointDist extremalJointType1(const Pmf& q, int L, double eps) {
  return extremalCore(q, L, eps, YCard::infinite());
}

JointDist extremalJointType2(const Pmf& q, int L, double eps, long yCard) {
  JointDist j = extremalCore(q, L, eps, YCard::finite(yCard));
  if (long(j.ySize()) > yCard)
    throw Error(Errc::y_too_small, "construction needs " + std::to_string(j.ySize()) +
                                       " side-information values, more than #(Y)");
  return j;
}

std::pair<JointDist, JointDist> endpointAchievers(const Pmf& q, int L, long yCard) {
  if (!q.tailFree()) throw Error(Errc::unsupported_tail, "endpoint achievers need tail-free input");
  if (L < 1 || yCard < 1) throw Error(Errc::bad_input, "need L >= 1 and #(Y) >= 1");
  std::vector<double> s = detail::sortedDescending(q.masses());

  JointDist upper = JointDist::fromParts({1.0}, {s});

  size_t cover = std::min(s.size(), size_t(yCard) * size_t(L));
  std::vector<double> blockMass(size_t(yCard), 0.0);
  KahanSum total;
  for (size_t v = 0; v < size_t(yCard); ++v) {
    KahanSum b;
    for (size_t u = v * size_t(L); u < std::min(cover, (v + 1) * size_t(L)); ++u) b.add(s[u]);
    blockMass[v] = b.get();
    total.add(b.get());
  }
  double omega2 = total.get();
  MergedJoint lower;
  for (size_t v = 0; v < size_t(yCard); ++v) {
    if (blockMass[v] <= 0.0) continue;
    std::vector<double> cond(s.size(), 0.0);
    for (size_t u = v * size_t(L); u < std::min(cover, (v + 1) * size_t(L)); ++u)
      cond[u] = (omega2 / blockMass[v]) * s[u];
    for (size_t u = cover; u < s.size(); ++u) cond[u] = s[u];
    lower.py.push_back(blockMass[v] / omega2);
    lower.conds.push_back(std::move(cond));
  }
  return {std::move(upper),
          JointDist::fromParts(std::move(lower.py), std::move(lower.conds))};
}

Certificate verifyExtremal(const JointDist& j, const SystemSpec& sys, const Measure& m) {
  Certificate c;
  Pmf qSorted = decreasingRearrangement(sys.q.tailFree() ? sys.q : truncate(sys.q, 1e-12).pmf);
  c.marginalTv = variationalDistance(j.marginal(), qSorted);
  c.peExcess = std::max(0.0, listMapError(j, sys.L) - sys.eps);
  BoundReport rep = bound(sys, m);
  ExtReal h = conditionalMeasure(j, m);
  c.phiGap = h.isInfinite() ? -std::numeric_limits<double>::infinity()
                            : rep.value - h.value();
  c.pass = c.marginalTv <= 1e-9 && c.peExcess <= 1e-10 && std::abs(c.phiGap) <= 1e-9;
  return c;
}

}  // namespace fano
