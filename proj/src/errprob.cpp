#include "fano/errprob.hpp"

#include <algorithm>
#include <cmath>

namespace fano {

double topLSum(const std::vector<double>& masses, int L) {
  if (L <= 0) return 0.0;
  size_t l = std::min<size_t>(size_t(L), masses.size());
  std::vector<double> v(masses);
  std::partial_sort(v.begin(), v.begin() + long(l), v.end(), std::greater<double>());
  KahanSum s;
  for (size_t i = 0; i < l; ++i) s.add(v[i]);
  return s.get();
}

double listMapError(const JointDist& j, int L) {
  if (L < 1) throw Error(Errc::bad_input, "list size must be >= 1");
  KahanSum s;
  for (size_t y = 0; y < j.ySize(); ++y) s.add(j.py(y) * topLSum(j.conditional(y), L));
  return std::max(0.0, 1.0 - s.get());
}

namespace {

std::vector<double> sortedExplicit(const Pmf& q) {
  if (q.tailFree()) return detail::sortedDescending(q.masses());
  return detail::sortedDescending(truncate(q, 1e-12).pmf.masses());
}

}  // namespace

double marginalListError(const Pmf& q, int L) {
  if (L < 1) throw Error(Errc::bad_input, "list size must be >= 1");
  return std::max(0.0, 1.0 - topLSum(q.masses().size() ? sortedExplicit(q) : std::vector<double>{}, L));
}

Interval feasibleRange(const Pmf& q, int L, YCard y) {
  if (L < 1) throw Error(Errc::bad_input, "list size must be >= 1");
  std::vector<double> sorted = sortedExplicit(q);
  double hi = std::max(0.0, 1.0 - topLSum(sorted, L));
  double lo;
  if (y.isFinite()) {
    long cover = *y.n * long(L);
    size_t k = std::min<size_t>(size_t(std::max<long>(cover, 0)), sorted.size());
    KahanSum s;
    for (size_t i = 0; i < k; ++i) s.add(sorted[i]);
    lo = std::max(0.0, 1.0 - s.get());
  } else {
    // full support coverable; only a truncation defect can remain
    lo = std::max(0.0, 1.0 - kahanTotal(sorted));
  }
  return Interval{lo, hi};
}

SystemSpec SystemSpec::checked(Pmf q, int L, double eps, YCard y) {
  if (L < 1) throw Error(Errc::bad_input, "list size must be >= 1");
  if (!(eps >= 0.0 && eps <= 1.0)) throw Error(Errc::eps_out_of_range, "eps must be in [0,1]");
  Interval r = feasibleRange(q, L, y);
  if (gridCompare(eps, r.lo) < 0 || gridCompare(eps, r.hi) > 0)
    throw Error(Errc::infeasible, "eps outside the feasible interval", r.lo, r.hi);
  return SystemSpec{std::move(q), L, eps, y};
}

double restrictedListError(const JointDist& j, int L, const std::vector<int>& z) {
  if (L < 1) throw Error(Errc::bad_input, "list size must be >= 1");
  if (z.empty()) throw Error(Errc::z_too_small, "restriction set must be nonempty");
  for (int x : z)
    if (x < 0 || size_t(x) >= j.xSize()) throw Error(Errc::bad_input, "restriction index out of range");
  KahanSum s;
  std::vector<double> within(z.size());
  for (size_t y = 0; y < j.ySize(); ++y) {
    const auto& c = j.conditional(y);
    for (size_t i = 0; i < z.size(); ++i) within[i] = c[size_t(z[i])];
    s.add(j.py(y) * topLSum(within, L));
  }
  return std::max(0.0, 1.0 - s.get());
}

double symbolwiseError(const std::vector<JointDist>& joints, int L) {
  if (joints.empty()) throw Error(Errc::bad_input, "need at least one position");
  KahanSum s;
  for (const auto& j : joints) s.add(listMapError(j, L));
  return s.get() / double(joints.size());
}

}  // namespace fano
