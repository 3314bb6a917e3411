#include "fano/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "fano/asymptotics.hpp"
#include "fano/json_io.hpp"
#include "fano/oracle.hpp"

namespace fano {

namespace {

YCard parseY(const std::string& s) {
  if (s == "inf" || s == "infinite") return YCard::infinite();
  std::string body = s.rfind("finite:", 0) == 0 ? s.substr(7) : s;
  try {
    return YCard::finite(std::stol(body));
  } catch (const std::exception&) {
    throw Error(Errc::bad_input, "bad Y cardinality '" + s + "' (use inf or finite:N or N)");
  }
}

std::uint64_t defaultSeed() {
  if (const char* env = std::getenv("FANO_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
    }
  }
  return 0;
}

struct Options {
  std::string qPath, jointPath, outPath;
  std::string yDesc = "inf";
  std::string measure = "shannon";
  int L = 1;
  double eps = 0.0;
  std::uint64_t seed = defaultSeed();
  int restarts = 64;
  int mesh = 64;
  double delta = 0.0;
  bool endpoints = false;
  // asym
  std::string mode;  // poisson | counterexample | symbolwise
  std::string lnDesc = "const:1";
  std::string epsDesc = "recip:1";
  std::string meanDesc = "geom:1,10";
  std::string deltaDesc = "recip:1";
  double gamma = 1.0;
  double alpha = 1.0;
  long nFrom = 1, nTo = 6;
};

void emit(const Options& opt, const std::string& payload, std::string& out) {
  if (!opt.outPath.empty())
    writeFile(opt.outPath, payload + "\n");
  else
    out += payload + "\n";
}

int dispatch(const std::string& sub, const Options& opt, std::string& out) {
  if (sub == "bound") {
    Pmf q = pmfFromJson(readFile(opt.qPath));
    SystemSpec sys = SystemSpec::checked(q, opt.L, opt.eps, parseY(opt.yDesc));
    BoundReport rep = bound(sys, Measure::parse(opt.measure));
    emit(opt, toJson(rep), out);
    return 0;
  }
  if (sub == "extremal") {
    Pmf q = pmfFromJson(readFile(opt.qPath));
    YCard y = parseY(opt.yDesc);
    if (opt.endpoints) {
      if (!y.isFinite()) throw Error(Errc::bad_input, "endpoints need a finite Y");
      auto [upper, lower] = endpointAchievers(q, opt.L, *y.n);
      emit(opt, "{\"upper\":" + toJson(upper) + ",\"lower\":" + toJson(lower) + "}", out);
      return 0;
    }
    JointDist j = y.isFinite() ? extremalJointType2(q, opt.L, opt.eps, *y.n)
                               : extremalJointType1(q, opt.L, opt.eps);
    emit(opt, toJson(j), out);
    return 0;
  }
  if (sub == "verify") {
    Pmf q = pmfFromJson(readFile(opt.qPath));
    JointDist j = jointFromJson(readFile(opt.jointPath));
    SystemSpec sys = SystemSpec::checked(q, opt.L, opt.eps, parseY(opt.yDesc));
    Certificate cert = verifyExtremal(j, sys, Measure::parse(opt.measure));
    emit(opt, toJson(cert), out);
    return 0;
  }
  if (sub == "oracle") {
    Pmf q = pmfFromJson(readFile(opt.qPath));
    YCard y = parseY(opt.yDesc);
    if (!y.isFinite()) throw Error(Errc::bad_input, "the oracle needs a finite Y");
    OracleConfig cfg;
    cfg.restarts = opt.restarts;
    cfg.seed = opt.seed;
    Measure m = Measure::parse(opt.measure);
    OracleResult res = bruteForceSup(q, opt.L, opt.eps, *y.n, m, cfg);
    SystemSpec sys = SystemSpec::checked(q, opt.L, opt.eps, y);
    BoundReport rep = bound(sys, m);
    emit(opt, toJson(res, rep.value), out);
    return 0;
  }
  if (sub == "errprob") {
    if (!opt.jointPath.empty()) {
      JointDist j = jointFromJson(readFile(opt.jointPath));
      double pe = listMapError(j, opt.L);
      char buf[64];
      std::snprintf(buf, sizeof buf, "{\"pe\":%.17g}", pe);
      emit(opt, buf, out);
      return 0;
    }
    Pmf q = pmfFromJson(readFile(opt.qPath));
    Interval r = feasibleRange(q, opt.L, parseY(opt.yDesc));
    double pe = marginalListError(q, opt.L);
    char buf[160];
    std::snprintf(buf, sizeof buf, "{\"pe_marginal\":%.17g,\"range\":[%.17g,%.17g]}", pe, r.lo,
                  r.hi);
    emit(opt, buf, out);
    return 0;
  }
  if (sub == "measure") {
    Measure m = Measure::parse(opt.measure);
    ExtReal v;
    if (!opt.jointPath.empty())
      v = conditionalMeasure(jointFromJson(readFile(opt.jointPath)), m);
    else
      v = unconditionalMeasure(pmfFromJson(readFile(opt.qPath)), m);
    if (v.isInfinite())
      emit(opt, "{\"infinite\":true}", out);
    else {
      char buf[64];
      std::snprintf(buf, sizeof buf, "{\"value\":%.17g}", v.value());
      emit(opt, buf, out);
    }
    return 0;
  }
  if (sub == "asym") {
    if (opt.mode == "poisson") {
      auto rows = equivocationTrace(SourceFamily::poisson(Schedule::parse(opt.meanDesc)),
                                    Schedule::parse(opt.lnDesc), Schedule::parse(opt.epsDesc),
                                    opt.nFrom, opt.nTo, opt.alpha);
      emit(opt, traceCsv(rows), out);
      return 0;
    }
    if (opt.mode == "counterexample") {
      auto rows = equivocationTrace(
          SourceFamily::counterexample(opt.gamma, opt.L, Schedule::parse(opt.deltaDesc)),
          Schedule::constant(double(opt.L)), Schedule::parse(opt.deltaDesc), opt.nFrom, opt.nTo,
          opt.alpha);
      emit(opt, traceCsv(rows), out);
      return 0;
    }
    if (opt.mode == "symbolwise") {
      JointDist j = jointFromJson(readFile(opt.jointPath));
      std::vector<JointDist> positions(size_t(std::max<long>(opt.nTo, 1)), j);
      SymbolwiseReport rep = symbolwiseTrace(positions, opt.L);
      char buf[256];
      std::snprintf(buf, sizeof buf,
                    "{\"pe_sym\":%.17g,\"mean_bound\":%.17g,\"chain_upper\":%.17g,"
                    "\"logL\":%.17g}",
                    rep.peSym, rep.meanBound, rep.chainUpper, rep.logL);
      emit(opt, buf, out);
      return 0;
    }
    throw Error(Errc::bad_input, "asym mode must be poisson|counterexample|symbolwise");
  }
  throw Error(Errc::bad_input, "unknown subcommand");
}

}  // namespace

int runCli(const std::vector<std::string>& args, std::string& out, std::string& err) {
  CLI::App app{"Fano-type bounds on conditional information measures"};
  app.require_subcommand(1);
  Options opt;

  auto addCommon = [&](CLI::App* sub, bool needsQ) {
    if (needsQ) sub->add_option("--q", opt.qPath, "PMF JSON file");
    sub->add_option("-L,--list-size", opt.L, "list size");
    sub->add_option("--eps", opt.eps, "tolerated error probability");
    sub->add_option("--y", opt.yDesc, "Y cardinality: inf, finite:N, or N");
    sub->add_option("--measure", opt.measure, "measure selector");
    sub->add_option("--out", opt.outPath, "write the report here instead of stdout");
  };

  auto* bound = app.add_subcommand("bound", "Fano-type bound for a system");
  addCommon(bound, true);
  bound->get_option("--q")->required();

  auto* extremal = app.add_subcommand("extremal", "synthesize a bound-attaining joint");
  addCommon(extremal, true);
  extremal->get_option("--q")->required();
  extremal->add_flag("--endpoints", opt.endpoints, "emit the error-endpoint achievers instead");

  auto* verify = app.add_subcommand("verify", "certify a claimed extremal joint");
  addCommon(verify, true);
  verify->get_option("--q")->required();
  verify->add_option("--joint", opt.jointPath, "JointDist JSON file")->required();

  auto* oracle = app.add_subcommand("oracle", "brute-force certification");
  addCommon(oracle, true);
  oracle->get_option("--q")->required();
  oracle->add_option("--restarts", opt.restarts, "ascent restarts");
  oracle->add_option("--seed", opt.seed, "RNG seed (FANO_SEED overrides the default)");

  auto* errprob = app.add_subcommand("errprob", "list-decoding error probabilities");
  addCommon(errprob, true);
  errprob->add_option("--joint", opt.jointPath, "JointDist JSON file");

  auto* measure = app.add_subcommand("measure", "evaluate a measure");
  addCommon(measure, true);
  measure->add_option("--joint", opt.jointPath, "JointDist JSON file");

  auto* asym = app.add_subcommand("asym", "asymptotic traces (CSV)");
  asym->add_option("mode", opt.mode, "poisson|counterexample|symbolwise")->required();
  asym->add_option("--Ln", opt.lnDesc, "list-size schedule");
  asym->add_option("--eps-n", opt.epsDesc, "error schedule");
  asym->add_option("--mean", opt.meanDesc, "poisson mean schedule");
  asym->add_option("--delta-n", opt.deltaDesc, "counterexample delta schedule");
  asym->add_option("--gamma", opt.gamma, "counterexample gamma");
  asym->add_option("--alpha", opt.alpha, "entropy order");
  asym->add_option("-L,--list-size", opt.L, "list size");
  asym->add_option("--n-from", opt.nFrom, "first n");
  asym->add_option("--n-to", opt.nTo, "last n");
  asym->add_option("--joint", opt.jointPath, "per-position joint (symbolwise)");
  asym->add_option("--out", opt.outPath, "write output here instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    int code = app.exit(e, os, os);
    err += os.str();
    return code == 0 ? 0 : 2;
  }

  try {
    for (auto* sub : {bound, extremal, verify, oracle, errprob, measure, asym})
      if (sub->parsed()) return dispatch(sub->get_name(), opt, out);
    return 2;
  } catch (const Error& e) {
    out += errorJson(e) + "\n";
    return 1;
  } catch (const std::exception& e) {
    err += std::string("internal error: ") + e.what() + "\n";
    return 1;
  }
}

int cliMain(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string out, err;
  int code = runCli(args, out, err);
  if (!out.empty()) std::fputs(out.c_str(), stdout);
  if (!err.empty()) std::fputs(err.c_str(), stderr);
  return code;
}

}  // namespace fano
