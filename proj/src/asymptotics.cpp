#include "fano/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace fano {

double Schedule::at(long n) const {
  switch (kind) {
    case Kind::constant: return c;
    case Kind::reciprocal: return c / double(n);
    case Kind::geometric: return c * std::pow(b, double(n));
  }
  return c;
}

Schedule Schedule::parse(const std::string& s) {
  auto colon = s.find(':');
  std::string name = s.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : s.substr(colon + 1);
  try {
    if (name == "const") return constant(std::stod(rest));
    if (name == "recip") return reciprocal(std::stod(rest));
    if (name == "geom") {
      auto comma = rest.find(',');
      if (comma == std::string::npos) throw Error(Errc::bad_input, "geom needs c,b");
      return geometric(std::stod(rest.substr(0, comma)), std::stod(rest.substr(comma + 1)));
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error(Errc::bad_input, "bad schedule '" + s + "'");
  }
  throw Error(Errc::bad_input, "unknown schedule '" + s + "'");
}

SourceFamily SourceFamily::iidProduct(Pmf base) {
  SourceFamily f;
  f.kind = Kind::iid_product;
  f.base = std::move(base);
  return f;
}

SourceFamily SourceFamily::poisson(Schedule mean) {
  SourceFamily f;
  f.kind = Kind::poisson;
  f.mean = mean;
  return f;
}

SourceFamily SourceFamily::counterexample(double gamma, int L, Schedule delta) {
  if (!(gamma > 0.0) || L < 1) throw Error(Errc::bad_input, "need gamma > 0 and L >= 1");
  SourceFamily f;
  f.kind = Kind::counterexample;
  f.gamma = gamma;
  f.listSize = L;
  f.delta = delta;
  return f;
}

SourceFamily SourceFamily::example5(int L) {
  SourceFamily f;
  f.kind = Kind::example5;
  f.listSize = L;
  return f;
}

double counterexampleRate(double gamma, int L, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw Error(Errc::bad_input, "delta must be in (0,1)");
  double pmax = std::min(1.0, (1.0 - delta) / (delta * double(L)));
  auto f = [&](double p) { return delta * binaryEntropy(p) / p - gamma; };
  // h2(p)/p decreases on (0,1], blowing up at 0+: a root exists iff f(pmax) <= 0
  if (f(pmax) > 0.0)
    throw Error(Errc::bisection_failure, "no root in range; schedule invalid at this n");
  double lo = std::min(pmax, 1e-300), hi = pmax;
  // walk lo up until f(lo) > 0
  while (f(lo) <= 0.0) {
    lo *= 0.5;
    if (lo < 1e-308) throw Error(Errc::bisection_failure, "root bracket collapsed");
  }
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
    if ((hi - lo) <= 1e-14 * hi) break;
  }
  return 0.5 * (lo + hi);
}

namespace {

Pmf realizePoisson(double mean) {
  // 1-based symbols carry Poisson counts k-1; cover to a 1e-12 defect
  std::vector<double> masses;
  double logMean = std::log(mean);
  KahanSum total;
  long k = 0;
  while (true) {
    double logp = double(k) * logMean - mean - std::lgamma(double(k) + 1.0);
    double p = std::exp(logp);
    masses.push_back(p);
    total.add(p);
    ++k;
    if (1.0 - total.get() <= 1e-12 && double(k) > mean) break;
    if (k > 100000000) throw Error(Errc::bad_input, "poisson mean too large to realize");
  }
  return Pmf::fromMasses(std::move(masses));
}

}  // namespace

Pmf realize(const SourceFamily& src, long n) {
  if (n < 1) throw Error(Errc::bad_input, "n must be >= 1");
  switch (src.kind) {
    case SourceFamily::Kind::iid_product: {
      std::vector<double> acc{1.0};
      for (long i = 0; i < n; ++i) {
        std::vector<double> next;
        next.reserve(acc.size() * src.base.size());
        for (double a : acc)
          for (double b : src.base.masses()) next.push_back(a * b);
        if (next.size() > 2000000) throw Error(Errc::bad_input, "product support too large");
        acc = std::move(next);
      }
      return Pmf::fromMasses(std::move(acc));
    }
    case SourceFamily::Kind::poisson:
      return realizePoisson(src.mean.at(n));
    case SourceFamily::Kind::counterexample: {
      double delta = src.delta.at(n);
      double p = counterexampleRate(src.gamma, src.listSize, delta);
      std::vector<double> masses(size_t(src.listSize), (1.0 - delta) / double(src.listSize));
      TailModel tail = TailModel::geometric(delta * p, 1.0 - p);
      TruncateResult t = truncate(Pmf::fromMasses(std::move(masses), tail), 1e-12);
      return t.pmf;
    }
    case SourceFamily::Kind::example5:
      return Pmf::fromMasses({0.5, 0.5});
  }
  throw Error(Errc::bad_input, "unknown source kind");
}

double aepDefect(const Pmf& p, double delta) {
  if (!(delta > 0.0)) throw Error(Errc::bad_input, "delta must be > 0");
  ExtReal h = shannonEntropy(p);
  if (h.isInfinite()) throw Error(Errc::bad_input, "AEP defect needs finite entropy");
  if (h.value() <= 0.0) return 0.0;
  double threshold = (1.0 - delta) * h.value();
  Pmf q = p.tailFree() ? p : truncate(p, 1e-12).pmf;
  KahanSum s;
  for (double u : q.masses()) {
    if (u <= 0.0) continue;
    if (-std::log(u) <= threshold) s.add(u);
  }
  return s.get();
}

std::vector<TraceRow> equivocationTrace(const SourceFamily& src, Schedule listSize,
                                        Schedule epsSchedule, long nFrom, long nTo,
                                        double alpha) {
  if (nFrom < 1 || nTo < nFrom) throw Error(Errc::bad_input, "bad n range");
  std::vector<TraceRow> rows;
  for (long n = nFrom; n <= nTo; ++n) {
    TraceRow row;
    row.n = n;
    Pmf p = realize(src, n);
    int L = int(std::llround(listSize.at(n)));
    if (L < 1) L = 1;
    row.logL = std::log(double(L));
    row.eps = epsSchedule.at(n);
    ExtReal h = alpha == 1.0 ? shannonEntropy(p) : renyiEntropy(p, alpha);
    row.entropy = h.asDouble();
    try {
      auto [dist, idx] = fanoType1(p, L, row.eps);
      (void)idx;
      ExtReal b = alpha == 1.0 ? ExtReal(shannonEntropy(dist.masses()))
                               : renyiEntropy(dist, alpha);
      row.bound = b.asDouble();
      row.excess = std::max(0.0, row.bound - row.logL);
      row.excessRatio = row.entropy > 0.0 ? row.excess / row.entropy : 0.0;
    } catch (const Error& e) {
      if (e.code() != Errc::infeasible) throw;
      row.feasible = false;  // flagged, not dropped
    }
    rows.push_back(row);
  }
  return rows;
}

SymbolwiseReport symbolwiseTrace(const std::vector<JointDist>& positions, int L) {
  if (positions.empty()) throw Error(Errc::bad_input, "need at least one position");
  SymbolwiseReport rep;
  rep.logL = std::log(double(L));
  KahanSum peAcc, boundAcc, chainAcc;
  rep.commonMarginal = true;
  Pmf first = decreasingRearrangement(positions[0].marginal());
  for (const auto& j : positions) {
    SymbolwisePosition pos;
    pos.pe = listMapError(j, L);
    pos.entropy = conditionalMeasure(j, PhiFunctional::shannon()).value();
    Pmf marg = decreasingRearrangement(j.marginal());
    if (variationalDistance(marg, first) > 1e-12) rep.commonMarginal = false;
    auto [dist, idx] = fanoType1(marg, L, pos.pe);
    (void)idx;
    pos.bound = shannonEntropy(dist.masses());
    peAcc.add(pos.pe);
    boundAcc.add(pos.bound);
    chainAcc.add(pos.entropy);
    rep.positions.push_back(pos);
  }
  double inv = 1.0 / double(positions.size());
  rep.peSym = peAcc.get() * inv;
  rep.meanBound = boundAcc.get() * inv;
  rep.chainUpper = chainAcc.get();
  if (rep.commonMarginal) {
    auto [dist, idx] = fanoType1(first, L, rep.peSym);
    (void)idx;
    rep.boundAtMeanEps = shannonEntropy(dist.masses());
  }
  return rep;
}

std::string traceCsv(const std::vector<TraceRow>& rows) {
  std::string out = "n,H,logL,eps,bound,excess,excess_ratio\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.n, r.entropy,
                  r.logL, r.eps, r.bound, r.excess, r.excessRatio);
    out += buf;
  }
  return out;
}

}  // namespace fano
