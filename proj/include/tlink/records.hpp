#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tlink/error.hpp"

namespace tlink {

using RecordId = std::uint64_t;

// A calendar day, stored as the number of days since 1970-01-01.
class Date {
 public:
  constexpr Date() = default;
  constexpr explicit Date(std::int32_t days_since_epoch)
      : days_(days_since_epoch) {}

  // Throws Error when (year, month, day) is not a valid calendar date.
  static Date from_ymd(int year, unsigned month, unsigned day);
  // Parses an ISO 8601 day ("YYYY-MM-DD"); nullopt when malformed.
  static std::optional<Date> parse(std::string_view iso);

  constexpr std::int32_t days() const { return days_; }
  int year() const;
  std::string to_string() const;

  constexpr Date plus_days(std::int32_t n) const { return Date(days_ + n); }

  friend constexpr auto operator<=>(Date, Date) = default;

 private:
  std::int32_t days_ = 0;
};

// Absolute difference between two dates in whole days.
constexpr std::int64_t days_between(Date a, Date b) {
  const std::int64_t d = std::int64_t{a.days()} - std::int64_t{b.days()};
  return d < 0 ? -d : d;
}

// Ordered list of attribute names with index lookup.
class Schema {
 public:
  Schema() = default;
  explicit Schema(std::vector<std::string> names);

  std::span<const std::string> names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  std::optional<std::size_t> index_of(std::string_view name) const;
  // Like index_of but throws Error naming the attribute when absent.
  std::size_t require(std::string_view name) const;

  friend bool operator==(const Schema& a, const Schema& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
};

// The fifteen birth-certificate attributes used by the standard comparison
// profiles, in their canonical column order.
const Schema& standard_schema();

// One birth registration. `values` is aligned with the owning RecordSet's
// schema; nullopt marks a missing value, which is distinct from "".
struct Record {
  RecordId id = 0;
  Date date;
  std::vector<std::optional<std::string>> values;

  const std::optional<std::string>& value(std::size_t column) const {
    return values.at(column);
  }
};

class RecordSet {
 public:
  RecordSet() = default;
  // Throws Error on duplicate ids or records whose width differs from the
  // schema.
  RecordSet(Schema schema, std::vector<Record> records);

  const Schema& schema() const { return schema_; }
  std::span<const Record> records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  const Record* find(RecordId id) const;
  bool contains(RecordId id) const { return index_.contains(id); }
  // All ids in ascending order.
  std::vector<RecordId> ids() const;

 private:
  Schema schema_;
  std::vector<Record> records_;
  std::unordered_map<RecordId, std::size_t> index_;
};

// Maps record id to entity label. Induces a partition of the covered ids.
class GroundTruth {
 public:
  GroundTruth() = default;
  explicit GroundTruth(std::map<RecordId, std::string> entity_of)
      : entity_of_(std::move(entity_of)) {}

  const std::map<RecordId, std::string>& assignments() const {
    return entity_of_;
  }
  // Entity label -> ascending member ids.
  std::map<std::string, std::vector<RecordId>> entities() const;
  std::optional<std::string_view> entity_of(RecordId id) const;
  std::size_t size() const { return entity_of_.size(); }
  bool empty() const { return entity_of_.empty(); }

 private:
  std::map<RecordId, std::string> entity_of_;
};

// Records files are delimiter-separated text with a header row holding
// `id`, `date` and at least the schema attributes (in any order; extra columns
// are ignored). An empty unquoted field is a missing value; a quoted empty
// field ("") is a present empty string.
RecordSet read_records(std::istream& in, const Schema& schema,
                       char delimiter = ',');
RecordSet load_records(const std::filesystem::path& path, const Schema& schema,
                       char delimiter = ',');
void write_records(std::ostream& out, const RecordSet& records,
                   char delimiter = ',');

// Ground-truth files have two columns (record id, entity id). A header row is
// optional and recognised by a non-numeric first field.
GroundTruth read_ground_truth(std::istream& in, const RecordSet& records,
                              char delimiter = ',');
GroundTruth load_ground_truth(const std::filesystem::path& path,
                              const RecordSet& records, char delimiter = ',');
void write_ground_truth(std::ostream& out, const GroundTruth& truth,
                        char delimiter = ',');

}  // namespace tlink
