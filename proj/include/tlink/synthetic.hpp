#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "tlink/records.hpp"

namespace tlink {

// Parameters of the synthetic birth-register generator. Each entity is a
// mother with one or more births; names follow Zipf distributions over
// finite vocabularies, values go missing or pick up typos at the given rates,
// and "lookalike" mothers copy another mother's names but give birth more than
// forty years after her last child.
struct SyntheticConfig {
  int num_entities = 1000;
  int births_min = 1;
  int births_max = 6;

  int first_name_vocab = 200;  // per parent sex
  int last_name_vocab = 200;
  double first_name_skew = 0.85;  // Zipf exponents
  double last_name_skew = 0.85;

  double name_missing_rate = 0.02;
  double marriage_missing_rate = 0.1;
  double occupation_missing_rate = 0.25;
  double mother_occupation_missing_rate = 0.85;
  double address_missing_rate = 0.15;
  double unmarried_rate = 0.03;  // father details missing
  double address_change_rate = 0.15;  // per birth after the first

  double typo_rate = 0.05;  // per attribute value
  int date_noise_days = 3;
  double twin_rate = 0.03;
  double lookalike_rate = 0.1;

  int first_year = 1861;
  int last_year = 1880;  // latest first-birth year

  std::uint64_t seed = 1;
};

// Throws Error naming the offending field.
void validate(const SyntheticConfig& config);

struct SyntheticData {
  RecordSet records;  // standard_schema(), ids 1..n in date order
  GroundTruth truth;
  // Lookalike entity -> entity whose names it copies.
  std::map<std::string, std::string> lookalike_of;
};

// A pure function of `config`: the same config yields identical output.
SyntheticData generate_synthetic(const SyntheticConfig& config);

}  // namespace tlink
