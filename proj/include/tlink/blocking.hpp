#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tlink/records.hpp"
#include "tlink/similarity.hpp"

namespace tlink {

struct LshParams {
  int bands = 100;
  int band_size = 4;
  std::uint64_t seed = 1;

  int signature_length() const { return bands * band_size; }
};

// Attribute-tagged character 2-grams of the canonicalised values of the
// profile's attributes, sorted and de-duplicated. Values shorter than two
// characters contribute themselves as a single token; missing values
// contribute nothing.
std::vector<std::string> shingle(const Record& record,
                                 const RecordComparator& comparator);

// Min-hash signature: for each of bands * band_size seeded hash functions the
// minimum hash over the tokens. Empty for an empty token set (the sentinel,
// which never shares a block).
std::vector<std::uint64_t> signature(const std::vector<std::string>& tokens,
                                     const LshParams& params);

using IdPair = std::pair<RecordId, RecordId>;

class MinHashIndex {
 public:
  struct Block {
    std::uint64_t key = 0;
    std::vector<RecordId> members;  // ascending
  };

  MinHashIndex() = default;
  MinHashIndex(LshParams params, std::vector<std::vector<Block>> bands);

  const LshParams& params() const { return params_; }
  // bands()[b] lists the blocks of band b ordered by key.
  const std::vector<std::vector<Block>>& bands() const { return bands_; }
  std::size_t block_count() const;

 private:
  LshParams params_;
  std::vector<std::vector<Block>> bands_;
};

// Places every record with a non-empty signature in one block per band, keyed
// by the hash of that band's slice of its signature. Throws Error when bands
// or band_size is below 1.
MinHashIndex build_index(const RecordSet& records,
                         const RecordComparator& comparator,
                         const LshParams& params);

// All unordered pairs sharing at least one block, smaller id first, sorted and
// unique. Only blocks with two or more members contribute.
std::vector<IdPair> candidate_pairs(const MinHashIndex& index);

}  // namespace tlink
