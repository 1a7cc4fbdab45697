#include "tlink/synthetic.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <optional>
#include <set>
#include <string_view>
#include <tuple>

#include "rng.hpp"
#include "tlink/temporal.hpp"

namespace tlink {

namespace {

using namespace std::string_view_literals;

// Seed vocabularies, most frequent first.
constexpr std::array kMaleFirst = {
    "John"sv,    "Donald"sv,  "Alexander"sv, "Malcolm"sv,  "Neil"sv,
    "Angus"sv,   "William"sv, "Murdo"sv,     "Norman"sv,   "Ewen"sv,
    "Roderick"sv, "Kenneth"sv, "James"sv,    "Duncan"sv,   "Lachlan"sv,
    "Archibald"sv, "Allan"sv, "Hugh"sv,      "Peter"sv,    "Charles"sv,
    "Samuel"sv,  "Finlay"sv,  "Martin"sv,    "Robert"sv,   "Andrew"sv,
    "Farquhar"sv, "Torquil"sv, "Calum"sv,    "Ronald"sv,   "Hector"sv};
constexpr std::array kFemaleFirst = {
    "Mary"sv,     "Catherine"sv, "Ann"sv,      "Margaret"sv, "Christina"sv,
    "Marion"sv,   "Flora"sv,     "Janet"sv,    "Effie"sv,    "Isabella"sv,
    "Jessie"sv,   "Kate"sv,      "Johanna"sv,  "Peggy"sv,    "Sarah"sv,
    "Rachel"sv,   "Euphemia"sv,  "Elizabeth"sv, "Jane"sv,    "Helen"sv,
    "Grace"sv,    "Marjory"sv,   "Alexandrina"sv, "Henrietta"sv, "Betsy"sv,
    "Jemima"sv,   "Mora"sv,      "Lexy"sv,     "Annabella"sv, "Wilhelmina"sv};
constexpr std::array kSurnames = {
    "Mcleod"sv,   "Mcdonald"sv,  "Mckinnon"sv, "Nicolson"sv,  "Mclean"sv,
    "Campbell"sv, "Mcinnes"sv,   "Mckenzie"sv, "Matheson"sv,  "Mcpherson"sv,
    "Robertson"sv, "Macaskill"sv, "Mcrae"sv,   "Beaton"sv,    "Stewart"sv,
    "Ross"sv,     "Murray"sv,    "Morrison"sv, "Grant"sv,     "Fraser"sv,
    "Mackay"sv,   "Mcqueen"sv,   "Gillies"sv,  "Lamont"sv,    "Macintyre"sv,
    "Shaw"sv,     "Cameron"sv,   "Kennedy"sv,  "Munro"sv,     "Buchanan"sv,
    "Ferguson"sv, "Mcmillan"sv,  "Graham"sv,   "Bain"sv,      "Finlayson"sv,
    "Mcswan"sv,   "Mcintosh"sv,  "Macleay"sv,  "Maclure"sv,   "Ramsay"sv};
constexpr std::array kAddresses = {
    "Breakish"sv, "Aird"sv,      "Roag"sv,      "Edinbain"sv,  "Bernisdale"sv,
    "Clachan"sv,  "Torrin"sv,    "Portree"sv,   "Digg"sv,      "Carbost"sv,
    "Dunvegan"sv, "Uig"sv,       "Staffin"sv,   "Kilmuir"sv,   "Elgol"sv,
    "Broadford"sv, "Sconser"sv,  "Glendale"sv,  "Waternish"sv, "Kyleakin"sv,
    "Drynoch"sv,  "Struan"sv,    "Harlosh"sv,   "Borve"sv,     "Skeabost"sv,
    "Kensaleyre"sv, "Flodigarry"sv, "Earlish"sv, "Colbost"sv,  "Milovaig"sv};
constexpr std::array kParishes = {"Portree"sv,   "Snizort"sv,  "Kilmuir"sv,
                                  "Duirinish"sv, "Bracadale"sv, "Strath"sv,
                                  "Sleat"sv};
constexpr std::array kFatherOccupations = {
    "Crofter"sv,  "Fisherman"sv, "Cottar"sv,   "Labourer"sv, "Shepherd"sv,
    "Carpenter"sv, "Merchant"sv, "Tailor"sv,   "Weaver"sv,   "Mason"sv,
    "Shoemaker"sv, "Seaman"sv,   "Farmer"sv,   "Blacksmith"sv, "Innkeeper"sv};
constexpr std::array kMotherOccupations = {
    "Domestic servant"sv, "Dairymaid"sv, "Spinner"sv, "Knitter"sv,
    "Housekeeper"sv};

constexpr std::array kOnsets = {"b"sv,  "c"sv,  "d"sv,  "f"sv,  "g"sv,
                                "h"sv,  "k"sv,  "l"sv,  "m"sv,  "n"sv,
                                "r"sv,  "s"sv,  "t"sv,  "br"sv, "dr"sv,
                                "gr"sv, "fl"sv, "st"sv, "th"sv, "w"sv};
constexpr std::array kVowels = {"a"sv,  "e"sv,  "i"sv,  "o"sv,
                                "u"sv,  "ai"sv, "ea"sv, "ou"sv};
constexpr std::array kCodas = {"n"sv,  "r"sv, "ll"sv, "ck"sv, "ss"sv,
                               "d"sv,  "g"sv, "m"sv,  "th"sv, "rt"sv};

template <std::size_t N>
std::span<const std::string_view> as_span(const std::array<std::string_view, N>& a) {
  return {a.data(), a.size()};
}

std::string capitalise(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') {
    s[0] = static_cast<char>(s[0] - 'a' + 'A');
  }
  return s;
}

// The seed names followed by invented ones until `size` distinct names exist.
std::vector<std::string> build_vocab(std::span<const std::string_view> seed,
                                     std::size_t size, bool surname, Rng& rng) {
  std::vector<std::string> vocab;
  std::set<std::string> seen;
  for (auto s : seed) {
    if (vocab.size() == size) break;
    if (seen.emplace(s).second) vocab.emplace_back(s);
  }
  while (vocab.size() < size) {
    std::string name;
    if (surname && rng.chance(0.4)) name = rng.chance(0.5) ? "mac" : "mc";
    const auto syllables = rng.uniform_int(1, 2);
    for (std::int64_t k = 0; k < syllables; ++k) {
      name += rng.pick(as_span(kOnsets));
      name += rng.pick(as_span(kVowels));
    }
    name += rng.pick(as_span(kCodas));
    name = capitalise(std::move(name));
    if (seen.insert(name).second) vocab.push_back(std::move(name));
  }
  return vocab;
}

std::string introduce_typo(const std::string& value, Rng& rng) {
  if (value.empty()) return value;
  std::string s = value;
  const auto pos = static_cast<std::size_t>(
      rng.uniform_int(0, static_cast<std::int64_t>(s.size()) - 1));
  const bool digit = s[pos] >= '0' && s[pos] <= '9';
  auto random_char = [&] {
    return digit ? static_cast<char>('0' + rng.uniform_int(0, 9))
                 : static_cast<char>('a' + rng.uniform_int(0, 25));
  };
  const auto op = rng.uniform_int(0, s.size() >= 2 ? 3 : 1);
  switch (op) {
    case 0: s[pos] = random_char(); break;
    case 1: s.insert(s.begin() + static_cast<std::ptrdiff_t>(pos), random_char()); break;
    case 2: s.erase(pos, 1); break;
    default: {
      const std::size_t p = std::min(pos, s.size() - 2);
      std::swap(s[p], s[p + 1]);
      break;
    }
  }
  return s;
}

struct Vocabularies {
  std::vector<std::string> male_first;
  std::vector<std::string> female_first;
  std::vector<std::string> surnames;
  ZipfSampler first_sampler;
  ZipfSampler last_sampler;
  ZipfSampler address_sampler{kAddresses.size(), 0.8};
  ZipfSampler parish_sampler{kParishes.size(), 0.5};
  ZipfSampler occupation_sampler{kFatherOccupations.size(), 1.2};

  Vocabularies(const SyntheticConfig& c, Rng& rng)
      : male_first(build_vocab(as_span(kMaleFirst),
                               static_cast<std::size_t>(c.first_name_vocab),
                               false, rng)),
        female_first(build_vocab(as_span(kFemaleFirst),
                                 static_cast<std::size_t>(c.first_name_vocab),
                                 false, rng)),
        surnames(build_vocab(as_span(kSurnames),
                             static_cast<std::size_t>(c.last_name_vocab), true,
                             rng)),
        first_sampler(static_cast<std::size_t>(c.first_name_vocab),
                      c.first_name_skew),
        last_sampler(static_cast<std::size_t>(c.last_name_vocab),
                     c.last_name_skew) {}
};

struct Mother {
  std::string entity;
  bool married = true;
  std::string father_first, father_last, mother_first, mother_last, maiden;
  std::string marriage_day, marriage_month, marriage_year;
  std::string marriage_place1, marriage_place2;
  std::string father_occupation, mother_occupation;
  std::size_t address = 0;
  std::string parish;
  std::vector<Date> births;
};

Date random_date(int first_year, int last_year, Rng& rng) {
  const Date lo = Date::from_ymd(first_year, 1, 1);
  const Date hi = Date::from_ymd(last_year, 12, 31);
  return lo.plus_days(static_cast<std::int32_t>(
      rng.uniform_int(0, hi.days() - lo.days())));
}

// Appends births after `first`, each plausible with all earlier ones.
std::vector<Date> sibling_dates(Date first, int count,
                                const SyntheticConfig& c, Rng& rng) {
  static const TemporalModel model = TemporalModel::birth_interval_default();
  std::vector<Date> births{first};
  Date last = first;
  for (int k = 1; k < count; ++k) {
    const bool twin = rng.chance(c.twin_rate);
    const auto gap = twin ? rng.uniform_int(0, 2) : rng.uniform_int(280, 5 * 365);
    Date next = last.plus_days(static_cast<std::int32_t>(gap));
    for (int attempt = 0; attempt < 20; ++attempt) {
      const auto noise = rng.uniform_int(-c.date_noise_days, c.date_noise_days);
      const Date noisy = next.plus_days(static_cast<std::int32_t>(noise));
      const bool ok = std::all_of(births.begin(), births.end(), [&](Date b) {
        return pair_plausible(model, noisy, b, kDefaultMinPlausibility);
      });
      if (ok) {
        next = noisy;
        break;
      }
    }
    births.push_back(next);
    last = std::max(last, next);
  }
  return births;
}

void fill_household(Mother& m, const Vocabularies& v, Rng& rng) {
  const Date first = m.births.front();
  m.marriage_day = std::to_string(rng.uniform_int(1, 28));
  m.marriage_month = std::to_string(rng.uniform_int(1, 12));
  m.marriage_year = std::to_string(first.year() - rng.uniform_int(0, 3));
  m.marriage_place1 = std::string(kAddresses[v.address_sampler(rng)]);
  m.marriage_place2 = std::string(kParishes[v.parish_sampler(rng)]);
  m.father_occupation = std::string(kFatherOccupations[v.occupation_sampler(rng)]);
  m.mother_occupation = std::string(rng.pick(as_span(kMotherOccupations)));
  m.address = v.address_sampler(rng);
  m.parish = std::string(kParishes[v.parish_sampler(rng)]);
}

Mother make_mother(std::string entity, const SyntheticConfig& c,
                   const Vocabularies& v, Rng& rng) {
  Mother m;
  m.entity = std::move(entity);
  m.married = !rng.chance(c.unmarried_rate);
  m.father_first = v.male_first[v.first_sampler(rng)];
  m.father_last = v.surnames[v.last_sampler(rng)];
  m.mother_first = v.female_first[v.first_sampler(rng)];
  m.maiden = v.surnames[v.last_sampler(rng)];
  m.mother_last = m.married ? m.father_last : m.maiden;
  const int count = static_cast<int>(rng.uniform_int(c.births_min, c.births_max));
  m.births = sibling_dates(random_date(c.first_year, c.last_year, rng), count,
                           c, rng);
  fill_household(m, v, rng);
  return m;
}

// Same names as `original`; every birth more than forty years after the
// original's last one.
Mother make_lookalike(const Mother& original, const SyntheticConfig& c,
                      const Vocabularies& v, Rng& rng) {
  Mother m = original;
  m.entity = original.entity + "-lookalike";
  const Date last = *std::max_element(original.births.begin(),
                                      original.births.end());
  const Date first =
      last.plus_days(static_cast<std::int32_t>(rng.uniform_int(14601, 14601 + 3650)));
  const int count = static_cast<int>(rng.uniform_int(c.births_min, c.births_max));
  m.births = sibling_dates(first, count, c, rng);
  fill_household(m, v, rng);
  return m;
}

}  // namespace

void validate(const SyntheticConfig& c) {
  auto rate = [](double r, const char* name) {
    if (!(r >= 0.0 && r <= 1.0)) {
      throw Error(std::string("synthetic ") + name + " must lie in [0, 1]");
    }
  };
  if (c.num_entities <= 0) throw Error("synthetic num_entities must be positive");
  if (c.births_min < 1 || c.births_max < c.births_min) {
    throw Error("synthetic births_min/births_max must satisfy 1 <= min <= max");
  }
  if (c.births_max > 8) {
    throw Error("synthetic births_max above 8 cannot stay within 35 years");
  }
  if (c.first_name_vocab < 1 || c.last_name_vocab < 1) {
    throw Error("synthetic vocabulary sizes must be positive");
  }
  if (!(c.first_name_skew >= 0.0) || !(c.last_name_skew >= 0.0)) {
    throw Error("synthetic Zipf skews must be non-negative");
  }
  rate(c.name_missing_rate, "name_missing_rate");
  rate(c.marriage_missing_rate, "marriage_missing_rate");
  rate(c.occupation_missing_rate, "occupation_missing_rate");
  rate(c.mother_occupation_missing_rate, "mother_occupation_missing_rate");
  rate(c.address_missing_rate, "address_missing_rate");
  rate(c.unmarried_rate, "unmarried_rate");
  rate(c.address_change_rate, "address_change_rate");
  rate(c.typo_rate, "typo_rate");
  rate(c.twin_rate, "twin_rate");
  rate(c.lookalike_rate, "lookalike_rate");
  if (c.date_noise_days < 0 || c.date_noise_days > 30) {
    throw Error("synthetic date_noise_days must lie in [0, 30]");
  }
  if (c.last_year < c.first_year) {
    throw Error("synthetic last_year must not precede first_year");
  }
}

SyntheticData generate_synthetic(const SyntheticConfig& c) {
  validate(c);
  Rng rng(c.seed);
  const Vocabularies vocab(c, rng);

  std::vector<Mother> mothers;
  std::map<std::string, std::string> lookalike_of;
  for (int i = 0; i < c.num_entities; ++i) {
    char label[16];
    std::snprintf(label, sizeof label, "m%06d", i);
    mothers.push_back(make_mother(label, c, vocab, rng));
    if (rng.chance(c.lookalike_rate)) {
      mothers.push_back(make_lookalike(mothers.back(), c, vocab, rng));
      lookalike_of.emplace(mothers.back().entity, label);
    }
  }

  struct Draft {
    Date date;
    std::size_t mother;
    std::size_t birth;
    std::vector<std::optional<std::string>> values;
  };
  std::vector<Draft> drafts;
  for (std::size_t mi = 0; mi < mothers.size(); ++mi) {
    Mother& m = mothers[mi];
    for (std::size_t b = 0; b < m.births.size(); ++b) {
      if (b > 0 && rng.chance(c.address_change_rate)) {
        m.address = vocab.address_sampler(rng);
      }
      auto field = [&](const std::string& value, double missing_rate)
          -> std::optional<std::string> {
        if (rng.chance(missing_rate)) return std::nullopt;
        if (rng.chance(c.typo_rate)) return introduce_typo(value, rng);
        return value;
      };
      auto father = [&](const std::string& value, double missing_rate)
          -> std::optional<std::string> {
        if (!m.married) return std::nullopt;
        return field(value, missing_rate);
      };
      const std::string address(kAddresses[m.address]);
      const std::string district(kParishes[m.address % kParishes.size()]);
      Draft d{m.births[b], mi, b, {}};
      d.values = {
          father(m.father_first, c.name_missing_rate),
          father(m.father_last, c.name_missing_rate),
          field(m.mother_first, c.name_missing_rate),
          field(m.mother_last, c.name_missing_rate),
          field(m.maiden, c.name_missing_rate),
          father(m.marriage_day, c.marriage_missing_rate),
          father(m.marriage_month, c.marriage_missing_rate),
          father(m.marriage_year, c.marriage_missing_rate),
          father(m.marriage_place1, c.marriage_missing_rate),
          father(m.marriage_place2, c.marriage_missing_rate),
          father(m.father_occupation, c.occupation_missing_rate),
          field(m.mother_occupation, c.mother_occupation_missing_rate),
          field(address, c.address_missing_rate),
          field(district, c.address_missing_rate),
          field(m.parish, c.address_missing_rate),
      };
      drafts.push_back(std::move(d));
    }
  }

  std::sort(drafts.begin(), drafts.end(), [](const Draft& a, const Draft& b) {
    return std::tie(a.date, a.mother, a.birth) <
           std::tie(b.date, b.mother, b.birth);
  });

  std::vector<Record> records;
  std::map<RecordId, std::string> truth;
  records.reserve(drafts.size());
  RecordId next_id = 1;
  for (auto& d : drafts) {
    truth.emplace(next_id, mothers[d.mother].entity);
    records.push_back(Record{next_id, d.date, std::move(d.values)});
    ++next_id;
  }
  return SyntheticData{RecordSet(standard_schema(), std::move(records)),
                       GroundTruth(std::move(truth)), std::move(lookalike_of)};
}

}  // namespace tlink
