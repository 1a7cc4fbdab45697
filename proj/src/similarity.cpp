#include "tlink/similarity.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace tlink {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::optional<long> parse_year(std::string_view text) {
  long value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

}  // namespace

std::string canonicalise(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && is_space(text[begin])) ++begin;
  while (end > begin && is_space(text[end - 1])) --end;
  std::string out(text.substr(begin, end - begin));
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

double jaro(std::string_view a, std::string_view b) {
  if (a.empty() || b.empty()) return 0.0;
  if (a == b) return 1.0;
  const std::size_t window =
      std::max<std::size_t>(std::max(a.size(), b.size()) / 2, 1) - 1;

  std::vector<bool> a_matched(a.size(), false);
  std::vector<bool> b_matched(b.size(), false);
  std::size_t matches = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::size_t lo = i > window ? i - window : 0;
    const std::size_t hi = std::min(i + window + 1, b.size());
    for (std::size_t j = lo; j < hi; ++j) {
      if (b_matched[j] || a[i] != b[j]) continue;
      a_matched[i] = b_matched[j] = true;
      ++matches;
      break;
    }
  }
  if (matches == 0) return 0.0;

  std::size_t half_transpositions = 0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a_matched[i]) continue;
    while (!b_matched[k]) ++k;
    if (a[i] != b[k]) ++half_transpositions;
    ++k;
  }
  const double m = static_cast<double>(matches);
  const double t = static_cast<double>(half_transpositions / 2);
  return (m / static_cast<double>(a.size()) + m / static_cast<double>(b.size()) +
          (m - t) / m) /
         3.0;
}

double jaro_winkler(std::string_view a, std::string_view b) {
  const double j = jaro(a, b);
  if (j == 0.0 || j == 1.0) return j;
  std::size_t prefix = 0;
  const std::size_t max_prefix = std::min<std::size_t>({4, a.size(), b.size()});
  while (prefix < max_prefix && a[prefix] == b[prefix]) ++prefix;
  return j + static_cast<double>(prefix) * 0.1 * (1.0 - j);
}

double jaro_winkler_value(const std::optional<std::string>& a,
                          const std::optional<std::string>& b) {
  if (!a || !b) return 0.0;
  const std::string ca = canonicalise(*a);
  const std::string cb = canonicalise(*b);
  return jaro_winkler(std::string_view(ca), std::string_view(cb));
}

double exact(const std::optional<std::string>& a,
             const std::optional<std::string>& b) {
  if (!a || !b) return 0.0;
  return canonicalise(*a) == canonicalise(*b) ? 1.0 : 0.0;
}

double year_difference(const std::optional<std::string>& a,
                       const std::optional<std::string>& b, int max_diff) {
  if (!a || !b || max_diff <= 0) return 0.0;
  const auto ya = parse_year(canonicalise(*a));
  const auto yb = parse_year(canonicalise(*b));
  if (!ya || !yb) return 0.0;
  const double diff = static_cast<double>(std::labs(*ya - *yb));
  return std::max(0.0, 1.0 - diff / static_cast<double>(max_diff));
}

std::string_view to_string(SimFunction f) {
  switch (f) {
    case SimFunction::kJaroWinkler: return "jaro_winkler";
    case SimFunction::kExact: return "exact";
    case SimFunction::kYearDifference: return "year_difference";
  }
  return "?";
}

SimFunction parse_sim_function(std::string_view name) {
  if (name == "jaro_winkler") return SimFunction::kJaroWinkler;
  if (name == "exact") return SimFunction::kExact;
  if (name == "year_difference") return SimFunction::kYearDifference;
  throw Error("unknown similarity function '" + std::string(name) + "'");
}

std::string_view to_string(MissingPolicy p) {
  return p == MissingPolicy::kZero ? "zero" : "drop";
}

MissingPolicy parse_missing_policy(std::string_view name) {
  if (name == "zero") return MissingPolicy::kZero;
  if (name == "drop") return MissingPolicy::kDrop;
  throw Error("unknown missing-value policy '" + std::string(name) + "'");
}

double ComparisonProfile::total_weight() const {
  double total = 0.0;
  for (std::size_t i = 0; i < comparators.size(); ++i) {
    total += effective_weight(i);
  }
  return total;
}

std::vector<std::string> ComparisonProfile::attributes() const {
  std::vector<std::string> out;
  out.reserve(comparators.size());
  for (const auto& c : comparators) out.push_back(c.attribute);
  return out;
}

ComparisonProfile standard_profile(std::string_view name, bool weighted) {
  using enum SimFunction;
  // Attribute weights for the birth-certificate comparisons.
  static const std::vector<AttributeComparator> kParentNames = {
      {"father_first", kJaroWinkler, 6.578},
      {"father_last", kJaroWinkler, 7.168},
      {"mother_first", kJaroWinkler, 4.483},
      {"mother_last", kJaroWinkler, 7.168},
      {"mother_maiden", kJaroWinkler, 5.985},
  };
  static const std::vector<AttributeComparator> kMarriage = {
      {"marriage_day", kExact, 4.610},
      {"marriage_month", kExact, 3.855},
      {"marriage_year", kYearDifference, 5.240},
      {"marriage_place1", kJaroWinkler, 4.435},
      {"marriage_place2", kJaroWinkler, 3.607},
  };
  static const std::vector<AttributeComparator> kOccupations = {
      {"father_occupation", kJaroWinkler, 2.247},
      {"mother_occupation", kJaroWinkler, 1.274},
  };
  static const std::vector<AttributeComparator> kAddresses = {
      {"address1", kJaroWinkler, 4.715},
      {"address2", kJaroWinkler, 3.548},
      {"parish", kJaroWinkler, 4.562},
  };

  ComparisonProfile p;
  p.name = std::string(name);
  p.weighted = weighted;
  auto append = [&](const std::vector<AttributeComparator>& group) {
    p.comparators.insert(p.comparators.end(), group.begin(), group.end());
  };
  if (name == "all") {
    append(kParentNames);
    append(kMarriage);
    append(kOccupations);
    append(kAddresses);
  } else if (name == "parent-names") {
    append(kParentNames);
  } else if (name == "parent-names-addresses") {
    append(kParentNames);
    append(kAddresses);
  } else {
    throw Error("unknown comparison profile '" + std::string(name) + "'");
  }
  return p;
}

std::vector<std::string> standard_profile_names() {
  return {"all", "parent-names", "parent-names-addresses"};
}

RecordComparator::RecordComparator(ComparisonProfile profile,
                                   const Schema& schema)
    : profile_(std::move(profile)) {
  columns_.reserve(profile_.comparators.size());
  for (std::size_t i = 0; i < profile_.comparators.size(); ++i) {
    const auto& c = profile_.comparators[i];
    if (!(c.weight > 0.0)) {
      throw Error("comparator for '" + c.attribute +
                  "' must have a positive weight");
    }
    columns_.push_back(schema.require(c.attribute));
  }
  if (!(profile_.total_weight() > 0.0)) {
    throw Error("comparison profile '" + profile_.name + "' has no weight");
  }
}

SimilarityVector RecordComparator::compare(const Record& a,
                                           const Record& b) const {
  SimilarityVector v;
  v.values.reserve(columns_.size());
  v.present.reserve(columns_.size());
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    const auto& c = profile_.comparators[i];
    const auto& va = a.value(columns_[i]);
    const auto& vb = b.value(columns_[i]);
    double s = 0.0;
    switch (c.function) {
      case SimFunction::kJaroWinkler: s = jaro_winkler_value(va, vb); break;
      case SimFunction::kExact: s = exact(va, vb); break;
      case SimFunction::kYearDifference:
        s = year_difference(va, vb, c.year_max_diff);
        break;
    }
    v.values.push_back(s * profile_.effective_weight(i));
    v.present.push_back(va.has_value() && vb.has_value());
  }
  return v;
}

double RecordComparator::normalise(const SimilarityVector& v) const {
  return tlink::normalise(v, profile_);
}

double RecordComparator::similarity(const Record& a, const Record& b) const {
  return normalise(compare(a, b));
}

SimilarityVector compare_records(const Record& a, const Record& b,
                                 const ComparisonProfile& profile,
                                 const Schema& schema) {
  return RecordComparator(profile, schema).compare(a, b);
}

double normalise(const SimilarityVector& v, const ComparisonProfile& profile) {
  if (v.values.size() != profile.comparators.size()) {
    throw Error("similarity vector does not match profile '" + profile.name +
                "'");
  }
  double numerator = 0.0;
  double denominator = 0.0;
  for (std::size_t i = 0; i < v.values.size(); ++i) {
    const bool present = v.present.empty() || v.present[i];
    if (profile.missing == MissingPolicy::kDrop && !present) continue;
    numerator += v.values[i];
    denominator += profile.effective_weight(i);
  }
  if (!(denominator > 0.0)) {
    if (profile.missing == MissingPolicy::kDrop && profile.total_weight() > 0.0) {
      return 0.0;  // nothing comparable
    }
    throw Error("comparison profile '" + profile.name + "' has zero weight");
  }
  return std::clamp(numerator / denominator, 0.0, 1.0);
}

}  // namespace tlink
