#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tlink/records.hpp"

namespace tlink {

// Piecewise-linear map from a day difference to the plausibility that one
// mother gave birth to both children, linearly interpolated between
// breakpoints and 0 beyond the last one.
class TemporalModel {
 public:
  struct Breakpoint {
    std::int64_t day = 0;
    double plausibility = 0.0;
    friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
  };

  // Throws Error unless days start at 0 and strictly increase and every
  // plausibility lies in [0, 1].
  explicit TemporalModel(std::vector<Breakpoint> breakpoints);

  // Twins and triplets within a couple of days, an implausible gap up to
  // roughly nine months, a plateau to 35 years and a ramp to zero at 40.
  static TemporalModel birth_interval_default();
  // Plausibility 1 everywhere (up to the largest representable gap).
  static TemporalModel constant_one();

  std::span<const Breakpoint> breakpoints() const { return breakpoints_; }

  double plausibility(std::int64_t day_difference) const;

  friend bool operator==(const TemporalModel&, const TemporalModel&) = default;

 private:
  std::vector<Breakpoint> breakpoints_;
};

inline constexpr double kDefaultMinPlausibility = 0.5;

// A model together with the minimum plausibility a pair must reach.
struct TemporalConstraint {
  TemporalModel model = TemporalModel::birth_interval_default();
  double p_min = kDefaultMinPlausibility;
};

bool pair_plausible(const TemporalModel& model, Date a, Date b, double p_min);

// True iff `candidate` is plausible with every date in `members`; always true
// when no constraint is supplied.
bool cluster_plausible(const std::optional<TemporalConstraint>& constraint,
                       Date candidate, std::span<const Date> members);

}  // namespace tlink
