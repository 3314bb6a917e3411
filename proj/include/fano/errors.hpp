#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace fano {

enum class Errc {
  negative_mass,
  mass_sum_mismatch,
  unsortable_tail,
  tail_not_summable,
  unsupported_tail,
  infeasible,
  eps_out_of_range,
  delta_out_of_range,
  non_concave_phi,
  phi_infinite,
  k_infinite,
  bad_z_cardinality,
  z_too_small,
  y_too_small,
  conditions_unmet,
  not_majorized,
  numerical_breakdown,
  mesh_too_large,
  bisection_failure,
  bad_input,
};

const char* errcName(Errc c);

/// Domain error. `range()` carries the feasible interval for errors that
/// have one (Infeasible, EpsOutOfRange, DeltaOutOfRange).
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string what) : std::runtime_error(std::move(what)), code_(code) {}
  Error(Errc code, std::string what, double lo, double hi)
      : std::runtime_error(std::move(what)), code_(code), range_(std::make_pair(lo, hi)) {}

  Errc code() const { return code_; }
  const std::optional<std::pair<double, double>>& range() const { return range_; }

 private:
  Errc code_;
  std::optional<std::pair<double, double>> range_;
};

}  // namespace fano
