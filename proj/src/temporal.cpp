#include "tlink/temporal.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace tlink {

TemporalModel::TemporalModel(std::vector<Breakpoint> breakpoints)
    : breakpoints_(std::move(breakpoints)) {
  if (breakpoints_.empty() || breakpoints_.front().day != 0) {
    throw Error("temporal model must start with a breakpoint at day 0");
  }
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    const auto& bp = breakpoints_[i];
    if (!(bp.plausibility >= 0.0 && bp.plausibility <= 1.0)) {
      throw Error("temporal breakpoint " + std::to_string(i) +
                  " has plausibility outside [0, 1]");
    }
    if (i > 0 && bp.day <= breakpoints_[i - 1].day) {
      throw Error("temporal breakpoint days must be strictly increasing (at " +
                  std::to_string(i) + ")");
    }
  }
}

TemporalModel TemporalModel::birth_interval_default() {
  return TemporalModel({{0, 1.0},
                        {2, 1.0},
                        {14, 0.0},
                        {200, 0.0},
                        {280, 1.0},
                        {12775, 1.0},
                        {14600, 0.0}});
}

TemporalModel TemporalModel::constant_one() {
  return TemporalModel(
      {{0, 1.0}, {std::numeric_limits<std::int64_t>::max(), 1.0}});
}

double TemporalModel::plausibility(std::int64_t day_difference) const {
  if (day_difference < 0) day_difference = -day_difference;
  const auto upper = std::upper_bound(
      breakpoints_.begin(), breakpoints_.end(), day_difference,
      [](std::int64_t d, const Breakpoint& bp) { return d < bp.day; });
  if (upper == breakpoints_.end()) {
    const auto& last = breakpoints_.back();
    return day_difference == last.day ? last.plausibility : 0.0;
  }
  // upper != begin because the first breakpoint is at day 0.
  const auto& lo = *(upper - 1);
  const auto& hi = *upper;
  const double frac = static_cast<double>(day_difference - lo.day) /
                      static_cast<double>(hi.day - lo.day);
  return lo.plausibility + frac * (hi.plausibility - lo.plausibility);
}

bool pair_plausible(const TemporalModel& model, Date a, Date b, double p_min) {
  return model.plausibility(days_between(a, b)) >= p_min;
}

bool cluster_plausible(const std::optional<TemporalConstraint>& constraint,
                       Date candidate, std::span<const Date> members) {
  if (!constraint) return true;
  return std::all_of(members.begin(), members.end(), [&](Date m) {
    return pair_plausible(constraint->model, candidate, m, constraint->p_min);
  });
}

}  // namespace tlink
