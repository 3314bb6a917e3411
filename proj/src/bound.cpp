#include "fano/bound.hpp"

#include <algorithm>
#include <cmath>

namespace fano {

namespace {

void requireTailFree(const Pmf& q, const char* who) {
  if (!q.tailFree())
    throw Error(Errc::unsupported_tail, std::string(who) + " needs a tail-free marginal; truncate first");
}

struct SortedSystem {
  std::vector<double> q;    // decreasing
  std::vector<double> pre;  // pre[k] = q(1)+...+q(k)
  size_t support;           // index of last positive mass
};

SortedSystem sortSystem(const Pmf& q) {
  SortedSystem s;
  s.q = detail::sortedDescending(q.masses());
  s.pre = prefixSums(s.q);
  s.support = s.q.size();
  while (s.support > 0 && s.q[s.support - 1] <= 0.0) --s.support;
  return s;
}

double weightV(const SortedSystem& s, int L, double eps, int j) {
  return ((1.0 - eps) - s.pre[size_t(j - 1)]) / double(L - j + 1);
}

double weightW(const SortedSystem& s, int L, double eps, long k) {
  return (s.pre[size_t(k)] - (1.0 - eps)) / double(k - L);
}

double qAt(const SortedSystem& s, long k /*1-based*/) {
  return size_t(k) <= s.q.size() ? s.q[size_t(k - 1)] : 0.0;
}

/// J = min{1 <= j <= L : Q(j) < V(j)} with ties on the comparison grid
/// counting as passes (min semantics).
int chooseJ(const SortedSystem& s, int L, double eps) {
  for (int j = 1; j <= L; ++j) {
    if (gridCompare(qAt(s, j), weightV(s, L, eps, j)) <= 0) return j;
  }
  throw Error(Errc::infeasible, "no admissible J index: eps above the feasible interval");
}

/// K = max{L <= k <= kmax : W(k) < Q(k)}; k = L always qualifies through the
/// W(L) = -1 sentinel, so the maximum exists. Ties count as passes (sup
/// semantics).
long chooseK(const SortedSystem& s, int L, double eps, long kmax) {
  long best = L;
  for (long k = L + 1; k <= kmax; ++k) {
    if (gridCompare(weightW(s, L, eps, k), qAt(s, k)) <= 0) best = k;
  }
  return best;
}

std::pair<Pmf, FanoIndices> buildFlattened(const Pmf& qIn, int L, double eps, YCard y) {
  requireTailFree(qIn, "fano distribution");
  if (L < 1) throw Error(Errc::bad_input, "list size must be >= 1");
  Interval range = feasibleRange(qIn, L, y);
  if (gridCompare(eps, range.lo) < 0 || gridCompare(eps, range.hi) > 0)
    throw Error(Errc::infeasible, "eps outside the feasible interval", range.lo, range.hi);

  SortedSystem s = sortSystem(qIn);
  long kmax = std::max<long>(long(s.support), L);
  if (y.isFinite()) kmax = std::min<long>(kmax, *y.n * long(L));
  kmax = std::max<long>(kmax, L);

  int J = chooseJ(s, L, eps);
  long K = chooseK(s, L, eps, kmax);
  double V = weightV(s, L, eps, J);
  double W = K > L ? std::max(0.0, weightW(s, L, eps, K)) : 0.0;

  std::vector<double> out = s.q;
  if (out.size() < size_t(std::max<long>(L, K))) out.resize(size_t(std::max<long>(L, K)), 0.0);
  for (int x = J; x <= L; ++x) out[size_t(x - 1)] = V;
  for (long x = L + 1; x <= K; ++x) out[size_t(x - 1)] = W;

  return {Pmf::fromMasses(std::move(out)), FanoIndices{J, K, V, W}};
}

}  // namespace

Pmf fanoType0(int M, int L, double eps) {
  if (!(1 <= L && L < M)) throw Error(Errc::bad_input, "need 1 <= L < M");
  double hi = 1.0 - double(L) / double(M);
  if (gridCompare(eps, 0.0) < 0 || gridCompare(eps, hi) > 0)
    throw Error(Errc::eps_out_of_range, "eps must be in [0, 1 - L/M]", 0.0, hi);
  std::vector<double> m(size_t(M), 0.0);
  for (int x = 0; x < L; ++x) m[size_t(x)] = (1.0 - eps) / double(L);
  for (int x = L; x < M; ++x) m[size_t(x)] = eps / double(M - L);
  return Pmf::fromMasses(std::move(m));
}

std::pair<Pmf, FanoIndices> fanoType1(const Pmf& q, int L, double eps) {
  return buildFlattened(q, L, eps, YCard::infinite());
}

std::pair<Pmf, FanoIndices> fanoType2(const Pmf& q, int L, double eps, long yCard) {
  return buildFlattened(q, L, eps, YCard::finite(yCard));
}

Pmf fanoType3(const Pmf& q, int L, double eps, long yCard, const std::vector<int>& z) {
  requireTailFree(q, "fano type-3");
  if (L < 1) throw Error(Errc::bad_input, "list size must be >= 1");
  if (yCard < 1) throw Error(Errc::bad_input, "need #(Y) >= 1");
  long need = yCard * long(L);
  if (long(z.size()) != need)
    throw Error(Errc::bad_z_cardinality, "restriction set must have exactly #(Y)*L symbols");
  std::vector<bool> seen(q.size(), false);
  for (int x : z) {
    if (x < 0 || size_t(x) >= q.size()) throw Error(Errc::bad_input, "restriction index out of range");
    if (seen[size_t(x)]) throw Error(Errc::bad_input, "restriction indices must be distinct");
    seen[size_t(x)] = true;
  }

  // beta: positions of Z in decreasing order of Q, stable by index.
  std::vector<int> beta(z);
  std::stable_sort(beta.begin(), beta.end(),
                   [&](int a, int b) { return q.mass(size_t(a)) > q.mass(size_t(b)); });
  std::vector<double> zMass(beta.size());
  for (size_t i = 0; i < beta.size(); ++i) zMass[i] = q.mass(size_t(beta[i]));
  std::vector<double> pre = prefixSums(zMass);

  double massZ = pre.back();
  double lo = std::max(0.0, 1.0 - massZ);
  KahanSum top;
  for (int i = 0; i < L; ++i) top.add(zMass[size_t(i)]);
  double hi = std::max(0.0, 1.0 - top.get());
  if (gridCompare(eps, lo) < 0 || gridCompare(eps, hi) > 0)
    throw Error(Errc::infeasible, "eps outside the restricted feasible interval", lo, hi);

  auto v3 = [&](int j) { return ((1.0 - eps) - pre[size_t(j - 1)]) / double(L - j + 1); };
  auto w3 = [&](long k) { return (pre[size_t(k)] - (1.0 - eps)) / double(k - L); };

  int J = 0;
  for (int j = 1; j <= L; ++j) {
    if (gridCompare(zMass[size_t(j - 1)], v3(j)) <= 0) {
      J = j;
      break;
    }
  }
  if (J == 0) throw Error(Errc::infeasible, "no admissible index on the restriction set");
  long K = L;
  for (long k = L + 1; k <= long(beta.size()); ++k) {
    if (gridCompare(w3(k), zMass[size_t(k - 1)]) <= 0) K = k;
  }

  std::vector<double> out = q.masses();
  double V = v3(J);
  double W = K > L ? std::max(0.0, w3(K)) : 0.0;
  for (int j = J; j <= L; ++j) out[size_t(beta[size_t(j - 1)])] = V;
  for (long k = L + 1; k <= K; ++k) out[size_t(beta[size_t(k - 1)])] = W;
  return Pmf::fromMasses(std::move(out));
}

std::uint64_t spadeMinY(const Pmf& q, int L, double eps) {
  auto [p1, idx] = fanoType1(q, L, eps);
  (void)p1;
  std::uint64_t window = std::uint64_t(idx.K - idx.J + 1);
  std::uint64_t picks = std::uint64_t(L - idx.J + 1);
  std::uint64_t viaBinomial = binomialSaturating(window, picks);
  std::uint64_t span = std::uint64_t(idx.K - idx.J);
  std::uint64_t viaSquare = span * span + 1;
  return std::min(viaBinomial, viaSquare);
}

HoYeungResult hoYeungTruncation(const Pmf& qIn, double delta) {
  Pmf q = qIn.tailFree() ? qIn : truncate(qIn, 1e-12).pmf;
  SortedSystem s = sortSystem(q);
  if (s.support == 0) throw Error(Errc::bad_input, "empty distribution");
  double dmax = 1.0 - s.q[0];
  if (gridCompare(delta, 0.0) < 0 || gridCompare(delta, dmax) > 0)
    throw Error(Errc::delta_out_of_range, "delta must be in [0, 1 - max mass]", 0.0, dmax);

  std::vector<double> out(s.q.begin(), s.q.begin() + long(s.support));
  if (gridCompare(delta, 0.0) == 0) {
    Pmf p = Pmf::fromMasses(std::move(out));
    double h = shannonEntropy(p.masses());
    return HoYeungResult{std::move(p), h, long(s.support)};
  }

  // B = sup{ b : sum_{k >= b} Q(k) >= delta }; the tail sum at b is
  // 1 - pre[b-1]. Ties on the grid extend B (sup semantics).
  long B = 1;
  for (long b = 1; b <= long(s.support); ++b) {
    if (gridCompare(1.0 - s.pre[size_t(b - 1)], delta) >= 0) B = b;
  }
  double tailAtB = 1.0 - s.pre[size_t(B - 1)];
  out[0] += delta;
  out[size_t(B - 1)] = std::max(0.0, tailAtB - delta);
  for (size_t x = size_t(B); x < out.size(); ++x) out[x] = 0.0;
  double h = shannonEntropy(out);
  return HoYeungResult{Pmf::fromMasses(std::move(out)), h, B};
}

Finiteness phiFinitenessGuard(const PhiFunctional& phi, const Pmf& q) {
  if (!phi.separable())
    throw Error(Errc::bad_input, "finiteness guard applies to separable functionals only");
  if (q.tailFree()) return Finiteness::finite;
  switch (phi.kind) {
    case PhiFunctional::Kind::shannon:
      return q.tail().shannonContribution().isInfinite() ? Finiteness::infinite : Finiteness::finite;
    case PhiFunctional::Kind::lp_norm:
    case PhiFunctional::Kind::lp_norm_power:
      return q.tail().lpPowerContribution(phi.alpha).isInfinite() ? Finiteness::infinite
                                                                  : Finiteness::finite;
    case PhiFunctional::Kind::one_minus_lp2_squared:
      return Finiteness::finite;
    case PhiFunctional::Kind::dbar:
      break;
  }
  throw Error(Errc::bad_input, "finiteness guard applies to separable functionals only");
}

namespace {

/// Flat-segment closed form for the Renyi family: the V weight appears
/// L-J+1 times and the W weight K-L times, the remaining masses are Q's.
double closedFormRenyi(const SortedSystem& s, const FanoIndices& idx, int L, double alpha) {
  KahanSum acc;
  if (alpha == 1.0) {
    acc.add(double(L - idx.J + 1) * eta(idx.V));
    acc.add(double(idx.K - L) * eta(idx.W));
    for (long x = 1; x < idx.J; ++x) acc.add(eta(qAt(s, x)));
    for (long x = idx.K + 1; x <= long(s.support); ++x) acc.add(eta(qAt(s, x)));
    return acc.get();
  }
  acc.add(double(L - idx.J + 1) * std::pow(idx.V, alpha));
  if (idx.K > L && idx.W > 0.0) acc.add(double(idx.K - L) * std::pow(idx.W, alpha));
  for (long x = 1; x < idx.J; ++x) acc.add(std::pow(qAt(s, x), alpha));
  for (long x = idx.K + 1; x <= long(s.support); ++x)
    if (qAt(s, x) > 0.0) acc.add(std::pow(qAt(s, x), alpha));
  return std::log(acc.get()) / (1.0 - alpha);
}

}  // namespace

BoundReport bound(const SystemSpec& sys, const Measure& m) {
  if (m.kind == Measure::Kind::ktv || m.kind == Measure::Kind::dbar)
    throw Error(Errc::non_concave_phi, "the dbar functional is convex; no Fano-type upper bound");

  Pmf q = sys.q;
  double defect = 0.0;
  if (!q.tailFree()) {
    if (gridCompare(sys.eps, 0.0) == 0)
      throw Error(Errc::bad_input, "eps = 0 requires a tail-free marginal; truncate first");
    PhiFunctional route = m.phi(std::max<size_t>(q.size(), 2));
    if (route.separable() && phiFinitenessGuard(route, q) == Finiteness::infinite)
      throw Error(Errc::phi_infinite,
                  "phi(Q) is infinite for this tail; no effective bound exists (eps > 0)");
    TruncateResult t = truncate(q, 1e-12);
    q = t.pmf;
    defect = t.omitted;
  }

  auto [dist, idx] = sys.y.isFinite() ? fanoType2(q, sys.L, sys.eps, *sys.y.n)
                                      : fanoType1(q, sys.L, sys.eps);

  BoundReport rep;
  rep.measure = m;
  rep.indices = idx;
  rep.truncationDefect = defect;
  rep.supremum = !(m.kind == Measure::Kind::lp && m.alpha > 1.0);

  SortedSystem s = sortSystem(q);
  switch (m.kind) {
    case Measure::Kind::shannon:
      rep.value = shannonEntropy(dist.masses());
      rep.closedFormCheck = closedFormRenyi(s, idx, sys.L, 1.0);
      rep.hasClosedFormCheck = true;
      break;
    case Measure::Kind::renyi:
    case Measure::Kind::arimoto:
    case Measure::Kind::hayashi:
      rep.value = renyiEntropy(dist, m.alpha).value();
      rep.closedFormCheck = closedFormRenyi(s, idx, sys.L, m.alpha);
      rep.hasClosedFormCheck = true;
      break;
    case Measure::Kind::bhattacharyya:
      rep.value = lpNorm(dist.masses(), 0.5);
      break;
    case Measure::Kind::quadratic:
      rep.value = 1.0 - lpNormPower(dist.masses(), 2.0);
      break;
    case Measure::Kind::lp:
      rep.value = lpNorm(dist.masses(), m.alpha);
      break;
    case Measure::Kind::ktv:
    case Measure::Kind::dbar:
      break;  // rejected above
  }

  double hi = marginalListError(q, sys.L);
  bool atEndpoint = gridCompare(sys.eps, hi) == 0;
  if (sys.y.isFinite()) {
    if (atEndpoint) rep.sharpness.push_back("endpoint");
    std::uint64_t window = std::uint64_t(idx.K - idx.J + 1);
    std::uint64_t picks = std::uint64_t(sys.L - idx.J + 1);
    std::uint64_t threshold =
        std::min(binomialSaturating(window, picks),
                 std::uint64_t(idx.K - idx.J) * std::uint64_t(idx.K - idx.J) + 1);
    if (std::uint64_t(*sys.y.n) >= threshold) rep.sharpness.push_back("cardinality");
  } else {
    if (atEndpoint) rep.sharpness.push_back("endpoint");
    if (!atEndpoint && gridCompare(sys.eps, 0.0) > 0) rep.sharpness.push_back("spade");
    if (!atEndpoint) rep.sharpness.push_back("spade-finite-support");
    if (idx.J == sys.L) rep.sharpness.push_back("J=L-countable-Y");
  }

  rep.distribution = std::move(dist);
  return rep;
}

}  // namespace fano
