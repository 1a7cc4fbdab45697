#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tlink/records.hpp"

namespace tlink {

// Trims ASCII whitespace and lower-cases ASCII letters.
std::string canonicalise(std::string_view text);

// Jaro-Winkler similarity (prefix scale 0.1, prefix capped at 4 characters)
// of the raw byte strings. 0 when either operand is empty.
double jaro_winkler(std::string_view a, std::string_view b);
double jaro(std::string_view a, std::string_view b);

// The attribute-level functions below canonicalise both operands first and
// score 0 whenever either value is missing.
double jaro_winkler_value(const std::optional<std::string>& a,
                          const std::optional<std::string>& b);
double exact(const std::optional<std::string>& a,
             const std::optional<std::string>& b);
// max(0, 1 - |a - b| / max_diff) for integer years; values that do not parse
// as integers count as missing.
double year_difference(const std::optional<std::string>& a,
                       const std::optional<std::string>& b, int max_diff = 10);

enum class SimFunction { kJaroWinkler, kExact, kYearDifference };

std::string_view to_string(SimFunction f);
SimFunction parse_sim_function(std::string_view name);

struct AttributeComparator {
  std::string attribute;
  SimFunction function = SimFunction::kJaroWinkler;
  double weight = 1.0;
  int year_max_diff = 10;  // only used by kYearDifference
};

// How a comparison involving a missing value enters the normalised score.
enum class MissingPolicy {
  kZero,  // scores 0, weight stays in the denominator
  kDrop,  // attribute removed from numerator and denominator
};

std::string_view to_string(MissingPolicy p);
MissingPolicy parse_missing_policy(std::string_view name);

struct ComparisonProfile {
  std::string name;
  std::vector<AttributeComparator> comparators;
  bool weighted = true;
  MissingPolicy missing = MissingPolicy::kZero;

  // The weight actually applied to comparator i (1.0 when unweighted).
  double effective_weight(std::size_t i) const {
    return weighted ? comparators[i].weight : 1.0;
  }
  double total_weight() const;
  std::vector<std::string> attributes() const;
};

// Named presets: "all", "parent-names", "parent-names-addresses".
ComparisonProfile standard_profile(std::string_view name, bool weighted = true);
std::vector<std::string> standard_profile_names();

// Per-attribute weighted similarities, aligned with the profile's comparators.
// `present[i]` is false when either record lacks attribute i.
struct SimilarityVector {
  std::vector<double> values;
  std::vector<bool> present;
};

// A profile bound to a schema: comparator attributes resolved to columns.
class RecordComparator {
 public:
  // Throws Error when a comparator attribute is not in the schema or the
  // profile has no positive total weight.
  RecordComparator(ComparisonProfile profile, const Schema& schema);

  const ComparisonProfile& profile() const { return profile_; }
  std::span<const std::size_t> columns() const { return columns_; }

  SimilarityVector compare(const Record& a, const Record& b) const;
  // normalise(compare(a, b)).
  double similarity(const Record& a, const Record& b) const;
  double normalise(const SimilarityVector& v) const;

 private:
  ComparisonProfile profile_;
  std::vector<std::size_t> columns_;
};

SimilarityVector compare_records(const Record& a, const Record& b,
                                 const ComparisonProfile& profile,
                                 const Schema& schema);

// (sum of weighted similarities) / (sum of weights). Throws Error when the
// applicable weight total is zero.
double normalise(const SimilarityVector& v, const ComparisonProfile& profile);

}  // namespace tlink
