#include "fano/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fano {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

namespace {

/// 17 significant digits, locale-independent.
std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Numbers are emitted as raw 17-digit literals so goldens are byte-stable.
class NumberList {
 public:
  void push(double v) {
    if (!items_.empty()) items_ += ',';
    items_ += fmt(v);
  }
  std::string str() const { return "[" + items_ + "]"; }

 private:
  std::string items_;
};

std::string vecJson(const std::vector<double>& v) {
  NumberList nl;
  for (double x : v) nl.push(x);
  return nl.str();
}

std::string tailJson(const TailModel& t) {
  switch (t.kind()) {
    case TailModel::Kind::none: return "";
    case TailModel::Kind::geometric:
      return std::string("{\"kind\":\"geometric\",\"first\":") + fmt(t.first()) +
             ",\"ratio\":" + fmt(t.ratio()) + "}";
    case TailModel::Kind::poisson:
      return std::string("{\"kind\":\"poisson\",\"mean\":") + fmt(t.mean()) +
             ",\"start\":" + std::to_string(t.start()) + "}";
    case TailModel::Kind::log_power:
      return std::string("{\"kind\":\"log-power\",\"scale\":") + fmt(t.scale()) +
             ",\"start\":" + std::to_string(t.start()) + "}";
  }
  return "";
}

TailModel tailFromJson(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "geometric")
    return TailModel::geometric(j.at("first").get<double>(), j.at("ratio").get<double>());
  if (kind == "poisson")
    return TailModel::poisson(j.at("mean").get<double>(), j.at("start").get<long>());
  if (kind == "log-power")
    return TailModel::logPower(j.at("scale").get<double>(), j.at("start").get<long>());
  throw Error(Errc::bad_input, "unknown tail kind '" + kind + "'");
}

}  // namespace

std::string toJson(const Pmf& p) {
  std::string out = "{\"masses\":" + vecJson(p.masses());
  if (p.labels()) {
    json labels = *p.labels();
    out += ",\"labels\":" + labels.dump();
  }
  std::string tail = tailJson(p.tail());
  if (!tail.empty()) out += ",\"tail\":" + tail;
  out += "}";
  return out;
}

Pmf pmfFromJson(const std::string& text, bool renormalize) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw Error(Errc::bad_input, std::string("bad pmf JSON: ") + e.what());
  }
  std::vector<double> masses = j.at("masses").get<std::vector<double>>();
  std::optional<std::vector<std::string>> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  TailModel tail;
  if (j.contains("tail") && !j.at("tail").is_null()) tail = tailFromJson(j.at("tail"));
  return Pmf::validate(std::move(masses), std::move(labels), tail, renormalize);
}

std::string toJson(const JointDist& j) {
  std::string out = "{\"py\":" + vecJson(j.pyVector()) + ",\"conditionals\":[";
  for (size_t y = 0; y < j.ySize(); ++y) {
    if (y) out += ',';
    out += vecJson(j.conditional(y));
  }
  out += "]}";
  return out;
}

JointDist jointFromJson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw Error(Errc::bad_input, std::string("bad joint JSON: ") + e.what());
  }
  return JointDist::validate(j.at("py").get<std::vector<double>>(),
                             j.at("conditionals").get<std::vector<std::vector<double>>>());
}

std::string toJson(const BoundReport& rep) {
  std::string out = "{\"measure\":\"" + rep.measure.str() + "\"";
  out += ",\"value\":" + fmt(rep.value);
  out += rep.supremum ? ",\"direction\":\"sup\"" : ",\"direction\":\"inf\"";
  out += ",\"distribution\":" + toJson(rep.distribution);
  out += ",\"indices\":{\"J\":" + std::to_string(rep.indices.J) +
         ",\"K\":" + std::to_string(rep.indices.K) + ",\"V\":" + fmt(rep.indices.V) +
         ",\"W\":" + fmt(rep.indices.W) + "}";
  json sharp = rep.sharpness;
  out += ",\"sharp\":" + sharp.dump();
  if (rep.hasClosedFormCheck) out += ",\"closed_form_check\":" + fmt(rep.closedFormCheck);
  if (rep.truncationDefect > 0.0) out += ",\"truncation_defect\":" + fmt(rep.truncationDefect);
  out += "}";
  return out;
}

std::string toJson(const Certificate& cert) {
  std::string out = "{\"marginal_tv\":" + fmt(cert.marginalTv);
  out += ",\"pe_excess\":" + fmt(cert.peExcess);
  out += ",\"phi_gap\":" + fmt(cert.phiGap);
  out += cert.pass ? ",\"pass\":true}" : ",\"pass\":false}";
  return out;
}

std::string toJson(const OracleResult& res, double boundValue) {
  std::string out = "{\"oracle_value\":" + fmt(res.value);
  out += ",\"bound_value\":" + fmt(boundValue);
  out += ",\"gap\":" + fmt(boundValue - res.value);
  out += ",\"argmax_joint\":" + toJson(res.argmax) + "}";
  return out;
}

std::string errorJson(const Error& e) {
  std::string out = std::string("{\"error\":\"") + errcName(e.code()) + "\"";
  json msg = std::string(e.what());
  out += ",\"detail\":" + msg.dump();
  if (e.range()) out += ",\"range\":[" + fmt(e.range()->first) + "," + fmt(e.range()->second) + "]";
  out += "}";
  return out;
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::bad_input, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::bad_input, "cannot write '" + path + "'");
  out << content;
}

}  // namespace fano
