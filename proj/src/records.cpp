#include "tlink/records.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "csv.hpp"

namespace tlink {

namespace {

namespace chr = std::chrono;

template <typename Int>
std::optional<Int> parse_int(std::string_view text) {
  Int value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) return std::nullopt;
  return value;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

Date Date::from_ymd(int year, unsigned month, unsigned day) {
  const chr::year_month_day ymd{chr::year{year}, chr::month{month},
                                chr::day{day}};
  if (!ymd.ok()) {
    throw Error("invalid calendar date " + std::to_string(year) + "-" +
                std::to_string(month) + "-" + std::to_string(day));
  }
  return Date(static_cast<std::int32_t>(
      chr::sys_days{ymd}.time_since_epoch().count()));
}

std::optional<Date> Date::parse(std::string_view iso) {
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') return std::nullopt;
  const auto y = parse_int<int>(iso.substr(0, 4));
  const auto m = parse_int<unsigned>(iso.substr(5, 2));
  const auto d = parse_int<unsigned>(iso.substr(8, 2));
  if (!y || !m || !d) return std::nullopt;
  const chr::year_month_day ymd{chr::year{*y}, chr::month{*m}, chr::day{*d}};
  if (!ymd.ok()) return std::nullopt;
  return Date(static_cast<std::int32_t>(
      chr::sys_days{ymd}.time_since_epoch().count()));
}

int Date::year() const {
  const chr::year_month_day ymd{chr::sys_days{chr::days{days_}}};
  return static_cast<int>(ymd.year());
}

std::string Date::to_string() const {
  const chr::year_month_day ymd{chr::sys_days{chr::days{days_}}};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()));
  return buf;
}

Schema::Schema(std::vector<std::string> names) : names_(std::move(names)) {
  std::set<std::string_view> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw Error("schema contains an empty attribute name");
    if (n == "id" || n == "date") {
      throw Error("schema attribute '" + n + "' clashes with a reserved column");
    }
    if (!seen.insert(n).second) {
      throw Error("schema lists attribute '" + n + "' twice");
    }
  }
}

std::optional<std::size_t> Schema::index_of(std::string_view name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

std::size_t Schema::require(std::string_view name) const {
  if (auto idx = index_of(name)) return *idx;
  throw Error("attribute '" + std::string(name) + "' is not in the schema");
}

const Schema& standard_schema() {
  static const Schema schema({
      "father_first", "father_last", "mother_first", "mother_last",
      "mother_maiden", "marriage_day", "marriage_month", "marriage_year",
      "marriage_place1", "marriage_place2", "father_occupation",
      "mother_occupation", "address1", "address2", "parish"});
  return schema;
}

RecordSet::RecordSet(Schema schema, std::vector<Record> records)
    : schema_(std::move(schema)), records_(std::move(records)) {
  index_.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const Record& r = records_[i];
    if (r.values.size() != schema_.size()) {
      throw Error("record " + std::to_string(r.id) + " has " +
                  std::to_string(r.values.size()) + " values, schema has " +
                  std::to_string(schema_.size()));
    }
    if (!index_.emplace(r.id, i).second) {
      throw Error("duplicate record id " + std::to_string(r.id));
    }
  }
}

const Record* RecordSet::find(RecordId id) const {
  const auto it = index_.find(id);
  return it == index_.end() ? nullptr : &records_[it->second];
}

std::vector<RecordId> RecordSet::ids() const {
  std::vector<RecordId> out;
  out.reserve(records_.size());
  for (const auto& r : records_) out.push_back(r.id);
  std::sort(out.begin(), out.end());
  return out;
}

std::map<std::string, std::vector<RecordId>> GroundTruth::entities() const {
  std::map<std::string, std::vector<RecordId>> out;
  for (const auto& [id, entity] : entity_of_) out[entity].push_back(id);
  return out;
}

std::optional<std::string_view> GroundTruth::entity_of(RecordId id) const {
  const auto it = entity_of_.find(id);
  if (it == entity_of_.end()) return std::nullopt;
  return it->second;
}

RecordSet read_records(std::istream& in, const Schema& schema, char delimiter) {
  std::string line;
  if (!std::getline(in, line)) throw Error("records file is empty (no header)");
  const auto header = csv::split(csv::strip_cr(line), delimiter);

  auto column = [&](std::string_view name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i].text == name) return i;
    }
    throw Error("records header lacks column '" + std::string(name) + "'");
  };
  const std::size_t id_col = column("id");
  const std::size_t date_col = column("date");
  std::vector<std::size_t> attr_cols;
  for (const auto& name : schema.names()) attr_cols.push_back(column(name));

  std::vector<Record> records;
  std::set<RecordId> seen;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    const auto text = csv::strip_cr(line);
    if (text.empty()) continue;
    const auto fields = csv::split(text, delimiter);
    if (fields.size() != header.size()) {
      throw Error("row " + std::to_string(row) + ": expected " +
                  std::to_string(header.size()) + " fields, found " +
                  std::to_string(fields.size()));
    }
    Record r;
    const auto id = parse_int<RecordId>(fields[id_col].text);
    if (!id) {
      throw Error("row " + std::to_string(row) + ": invalid id '" +
                  fields[id_col].text + "'");
    }
    r.id = *id;
    if (!seen.insert(r.id).second) {
      throw Error("row " + std::to_string(row) + ": duplicate id " +
                  std::to_string(r.id));
    }
    const auto date = Date::parse(fields[date_col].text);
    if (!date) {
      throw Error("row " + std::to_string(row) + ": unparseable date '" +
                  fields[date_col].text + "'");
    }
    r.date = *date;
    r.values.reserve(attr_cols.size());
    for (std::size_t c : attr_cols) {
      const auto& f = fields[c];
      if (f.text.empty() && !f.quoted) {
        r.values.emplace_back(std::nullopt);
      } else {
        r.values.emplace_back(f.text);
      }
    }
    records.push_back(std::move(r));
  }
  return RecordSet(schema, std::move(records));
}

RecordSet load_records(const std::filesystem::path& path, const Schema& schema,
                       char delimiter) {
  auto in = open_input(path);
  return read_records(in, schema, delimiter);
}

void write_records(std::ostream& out, const RecordSet& records,
                   char delimiter) {
  out << "id" << delimiter << "date";
  for (const auto& name : records.schema().names()) {
    out << delimiter << csv::quote(name, delimiter);
  }
  out << '\n';
  for (const auto& r : records.records()) {
    out << r.id << delimiter << r.date.to_string();
    for (const auto& v : r.values) {
      out << delimiter;
      if (!v) continue;
      if (v->find_first_of("\r\n") != std::string::npos) {
        throw Error("record " + std::to_string(r.id) +
                    " has a value containing a line break");
      }
      out << csv::quote(*v, delimiter);
    }
    out << '\n';
  }
}

GroundTruth read_ground_truth(std::istream& in, const RecordSet& records,
                              char delimiter) {
  std::map<RecordId, std::string> entity_of;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    const auto text = csv::strip_cr(line);
    if (text.empty()) continue;
    const auto fields = csv::split(text, delimiter);
    if (fields.size() != 2) {
      throw Error("ground truth row " + std::to_string(row) +
                  ": expected 2 fields, found " + std::to_string(fields.size()));
    }
    const auto id = parse_int<RecordId>(fields[0].text);
    if (!id) {
      if (row == 1) continue;  // header
      throw Error("ground truth row " + std::to_string(row) +
                  ": invalid record id '" + fields[0].text + "'");
    }
    if (!records.contains(*id)) {
      throw Error("ground truth row " + std::to_string(row) +
                  ": unknown record id " + std::to_string(*id));
    }
    if (!entity_of.emplace(*id, fields[1].text).second) {
      throw Error("ground truth row " + std::to_string(row) + ": record id " +
                  std::to_string(*id) + " assigned twice");
    }
  }
  return GroundTruth(std::move(entity_of));
}

GroundTruth load_ground_truth(const std::filesystem::path& path,
                              const RecordSet& records, char delimiter) {
  auto in = open_input(path);
  return read_ground_truth(in, records, delimiter);
}

void write_ground_truth(std::ostream& out, const GroundTruth& truth,
                        char delimiter) {
  out << "id" << delimiter << "entity\n";
  for (const auto& [id, entity] : truth.assignments()) {
    out << id << delimiter << csv::quote(entity, delimiter) << '\n';
  }
}

}  // namespace tlink
