#pragma once

#include <string>

#include "fano/bound.hpp"
#include "fano/extremal.hpp"
#include "fano/measures.hpp"
#include "fano/oracle.hpp"
#include "fano/pmf.hpp"

namespace fano {

/// Serialization contracts:
///   Pmf        {"masses":[...], "labels":[...]?, "tail":{"kind":...}?}
///   JointDist  {"py":[...], "conditionals":[[...],[...]]}
/// Floats carry 17 significant digits so round-trips are byte-stable.

std::string toJson(const Pmf& p);
Pmf pmfFromJson(const std::string& text, bool renormalize = false);

std::string toJson(const JointDist& j);
JointDist jointFromJson(const std::string& text);

std::string toJson(const BoundReport& rep);
std::string toJson(const Certificate& cert);
std::string toJson(const OracleResult& res, double boundValue);

std::string errorJson(const Error& e);

std::string readFile(const std::string& path);
void writeFile(const std::string& path, const std::string& content);

}  // namespace fano
