#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "support.hpp"
#include "tlink/records.hpp"
#include "tlink/synthetic.hpp"
#include "tlink/temporal.hpp"

using namespace tlink;

namespace {

std::string header() {
  std::string h = "id,date";
  for (const auto& n : standard_schema().names()) h += "," + n;
  return h + "\n";
}

std::string blank_row(const std::string& id, const std::string& date) {
  return id + "," + date + std::string(standard_schema().size(), ',') + "\n";
}

}  // namespace

TEST_CASE("Date") {
  const auto d = Date::from_ymd(1880, 2, 29);
  CHECK(d.to_string() == "1880-02-29");
  CHECK(d.year() == 1880);
  CHECK(Date::parse("1880-02-29") == d);
  CHECK(Date::from_ymd(1970, 1, 1).days() == 0);
  CHECK(d.plus_days(1).to_string() == "1880-03-01");
  CHECK(days_between(Date::from_ymd(1880, 1, 1), Date::from_ymd(1881, 1, 1)) ==
        366);
  CHECK(days_between(d, d) == 0);
  CHECK_FALSE(Date::parse("1881-02-29"));
  CHECK_FALSE(Date::parse("1880-2-3"));
  CHECK_FALSE(Date::parse("18800203"));
  CHECK_FALSE(Date::parse(""));
  CHECK_THROWS_AS(Date::from_ymd(1880, 13, 1), Error);
}

TEST_CASE("Schema") {
  const Schema s({"a", "b"});
  CHECK(s.size() == 2);
  CHECK(s.index_of("b") == 1u);
  CHECK_FALSE(s.index_of("c"));
  CHECK_THROWS_AS(s.require("c"), Error);
  CHECK_THROWS_AS(Schema({"a", "a"}), Error);
  CHECK_THROWS_AS(Schema({"id"}), Error);
  CHECK_THROWS_AS(Schema({""}), Error);
  CHECK(standard_schema().size() == 15);
}

TEST_CASE("RecordSet") {
  const Schema s({"a"});
  const RecordSet rs(s, {{3, fixtures::day(0), {"x"}},
                         {1, fixtures::day(5), {std::nullopt}}});
  CHECK(rs.size() == 2);
  CHECK(rs.ids() == std::vector<RecordId>{1, 3});
  CHECK(rs.find(3)->value(0) == "x");
  CHECK(rs.find(2) == nullptr);
  CHECK(rs.contains(1));
  CHECK_THROWS_AS(RecordSet(s, {{1, fixtures::day(0), {"x"}},
                                {1, fixtures::day(0), {"y"}}}),
                  Error);
  CHECK_THROWS_AS(RecordSet(s, {{1, fixtures::day(0), {"x", "y"}}}), Error);
}

TEST_CASE("reading records") {
  SUBCASE("missing versus present-but-empty") {
    std::istringstream in("id,date,b,a\n7,1875-03-04,\"\",x\n8,1876-01-01,,\n");
    const auto rs = read_records(in, Schema({"a", "b"}));
    CHECK(rs.find(7)->date.to_string() == "1875-03-04");
    CHECK(rs.find(7)->value(0) == "x");
    CHECK(rs.find(7)->value(1) == "");
    CHECK_FALSE(rs.find(8)->value(0));
    CHECK_FALSE(rs.find(8)->value(1));
  }
  SUBCASE("quoted delimiters and quotes") {
    std::istringstream in("id,date,a\n1,1870-01-01,\"Kyle, \"\"West\"\"\"\n");
    const auto rs = read_records(in, Schema({"a"}));
    CHECK(rs.find(1)->value(0) == "Kyle, \"West\"");
  }
  SUBCASE("other delimiter and CRLF") {
    std::istringstream in("id\tdate\ta\r\n1\t1870-01-01\tx\r\n");
    const auto rs = read_records(in, Schema({"a"}), '\t');
    CHECK(rs.find(1)->value(0) == "x");
  }
  SUBCASE("errors name the row") {
    std::istringstream dup(header() + blank_row("1", "1870-01-01") +
                           blank_row("1", "1870-01-02"));
    CHECK_THROWS_WITH_AS(read_records(dup, standard_schema()),
                         doctest::Contains("row 3: duplicate id 1"), Error);
    std::istringstream bad_date(header() + blank_row("1", "1870-13-01"));
    CHECK_THROWS_WITH_AS(read_records(bad_date, standard_schema()),
                         doctest::Contains("row 2"), Error);
    std::istringstream short_row(header() + "1,1870-01-01,a\n");
    CHECK_THROWS_AS(read_records(short_row, standard_schema()), Error);
    std::istringstream no_col("id,date\n");
    CHECK_THROWS_WITH_AS(read_records(no_col, standard_schema()),
                         doctest::Contains("father_first"), Error);
    std::istringstream empty("");
    CHECK_THROWS_AS(read_records(empty, standard_schema()), Error);
    std::istringstream quote("id,date,a\n1,1870-01-01,\"open\n");
    CHECK_THROWS_AS(read_records(quote, Schema({"a"})), Error);
  }
  CHECK_THROWS_AS(load_records("/nonexistent/records.csv", standard_schema()),
                  Error);
}

TEST_CASE("records round-trip byte-exactly") {
  std::mt19937_64 rng(5);
  const std::string alphabet = "ab ,\"'x";
  std::vector<Record> recs;
  for (RecordId id = 1; id <= 60; ++id) {
    Record r{id, fixtures::day(static_cast<std::int32_t>(rng() % 9000)), {}};
    for (int c = 0; c < 3; ++c) {
      if (rng() % 4 == 0) {
        r.values.push_back(std::nullopt);
        continue;
      }
      std::string v(rng() % 6, ' ');
      for (char& ch : v) ch = alphabet[rng() % alphabet.size()];
      r.values.push_back(v);
    }
    recs.push_back(std::move(r));
  }
  const RecordSet original(Schema({"x", "y", "z"}), recs);
  for (char delim : {',', ';', '\t'}) {
    std::ostringstream out;
    write_records(out, original, delim);
    std::istringstream in(out.str());
    const auto back = read_records(in, original.schema(), delim);
    REQUIRE(back.size() == original.size());
    for (const auto& r : original.records()) {
      const auto* b = back.find(r.id);
      REQUIRE(b != nullptr);
      CHECK(b->date == r.date);
      CHECK(b->values == r.values);
    }
    std::ostringstream again;
    write_records(again, back, delim);
    CHECK(again.str() == out.str());
  }
  const RecordSet newline(Schema({"x"}), {{1, fixtures::day(0), {"a\nb"}}});
  std::ostringstream out;
  CHECK_THROWS_AS(write_records(out, newline), Error);
}

TEST_CASE("ground truth") {
  const RecordSet rs(Schema({"a"}), {{1, fixtures::day(0), {"x"}},
                                     {2, fixtures::day(1), {"y"}},
                                     {3, fixtures::day(2), {"z"}}});
  std::istringstream with_header("id,entity\n1,m1\n2,m1\n3,m2\n");
  const auto gt = read_ground_truth(with_header, rs);
  CHECK(gt.size() == 3);
  CHECK(gt.entity_of(2) == "m1");
  CHECK_FALSE(gt.entity_of(9));
  CHECK(gt.entities().at("m1") == std::vector<RecordId>{1, 2});

  std::istringstream bare("1,m1\n2,m1\n3,m2\n");
  CHECK(read_ground_truth(bare, rs).assignments() == gt.assignments());

  std::ostringstream out;
  write_ground_truth(out, gt);
  CHECK(out.str() == "id,entity\n1,m1\n2,m1\n3,m2\n");

  std::istringstream unknown("1,m1\n4,m2\n");
  CHECK_THROWS_WITH_AS(read_ground_truth(unknown, rs),
                       doctest::Contains("row 2"), Error);
  std::istringstream twice("1,m1\n1,m2\n");
  CHECK_THROWS_AS(read_ground_truth(twice, rs), Error);
}

TEST_CASE("synthetic generation is a pure function of its config") {
  SyntheticConfig cfg;
  cfg.num_entities = 120;
  cfg.seed = 9;
  const auto a = generate_synthetic(cfg);
  const auto b = generate_synthetic(cfg);
  std::ostringstream ra, rb, ga, gb;
  write_records(ra, a.records);
  write_records(rb, b.records);
  write_ground_truth(ga, a.truth);
  write_ground_truth(gb, b.truth);
  CHECK(ra.str() == rb.str());
  CHECK(ga.str() == gb.str());

  cfg.seed = 10;
  std::ostringstream rc;
  write_records(rc, generate_synthetic(cfg).records);
  CHECK(rc.str() != ra.str());
}

TEST_CASE("synthetic data invariants") {
  SyntheticConfig cfg;
  cfg.num_entities = 1000;
  cfg.seed = 4;
  const auto data = generate_synthetic(cfg);
  const auto& rs = data.records;

  // Ids are 1..n in date order and every record has an entity.
  const auto ids = rs.ids();
  REQUIRE(ids.size() == rs.size());
  CHECK(ids.front() == 1);
  CHECK(ids.back() == rs.size());
  for (std::size_t i = 1; i < ids.size(); ++i) {
    CHECK(rs.find(ids[i - 1])->date <= rs.find(ids[i])->date);
  }
  CHECK(data.truth.size() == rs.size());

  // Re-serialise and re-load: the files validate.
  std::ostringstream out;
  write_records(out, rs);
  std::istringstream in(out.str());
  CHECK(read_records(in, standard_schema()).size() == rs.size());

  // Each entity's births are pairwise plausible.
  const auto model = TemporalModel::birth_interval_default();
  const auto entities = data.truth.entities();
  CHECK(entities.size() >= 1000);
  for (const auto& [entity, members] : entities) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        CHECK(pair_plausible(model, rs.find(members[i])->date,
                             rs.find(members[j])->date, kDefaultMinPlausibility));
      }
    }
  }

  // Lookalikes copy names but can never be plausibly linked to the original.
  REQUIRE_FALSE(data.lookalike_of.empty());
  const auto first = standard_schema().require("mother_first");
  for (const auto& [fake, original] : data.lookalike_of) {
    const auto& fakes = entities.at(fake);
    const auto& originals = entities.at(original);
    for (RecordId f : fakes) {
      for (RecordId o : originals) {
        CHECK(model.plausibility(days_between(rs.find(f)->date,
                                              rs.find(o)->date)) == 0.0);
      }
    }
  }
  (void)first;

  // Skewed first names: the ten most frequent cover a large share.
  std::map<std::string, int> counts;
  int present = 0;
  for (const auto& r : rs.records()) {
    if (const auto& v = r.value(first)) {
      ++counts[*v];
      ++present;
    }
  }
  std::vector<int> freq;
  for (const auto& [name, n] : counts) freq.push_back(n);
  std::sort(freq.rbegin(), freq.rend());
  int top = 0;
  for (std::size_t i = 0; i < std::min<std::size_t>(10, freq.size()); ++i) {
    top += freq[i];
  }
  CHECK(static_cast<double>(top) / present > 0.25);
}

TEST_CASE("synthetic config validation") {
  SyntheticConfig cfg;
  cfg.num_entities = 0;
  CHECK_THROWS_WITH_AS(validate(cfg), doctest::Contains("num_entities"), Error);
  cfg = {};
  cfg.typo_rate = 1.5;
  CHECK_THROWS_WITH_AS(validate(cfg), doctest::Contains("typo_rate"), Error);
  cfg = {};
  cfg.births_min = 3;
  cfg.births_max = 2;
  CHECK_THROWS_AS(validate(cfg), Error);
  cfg = {};
  cfg.last_year = cfg.first_year - 1;
  CHECK_THROWS_AS(generate_synthetic(cfg), Error);
}
