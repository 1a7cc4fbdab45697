#include "tlink/blocking.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "hashing.hpp"

namespace tlink {

std::vector<std::string> shingle(const Record& record,
                                 const RecordComparator& comparator) {
  std::vector<std::string> tokens;
  const auto& comparators = comparator.profile().comparators;
  const auto columns = comparator.columns();
  for (std::size_t i = 0; i < columns.size(); ++i) {
    const auto& value = record.value(columns[i]);
    if (!value) continue;
    const std::string text = canonicalise(*value);
    const std::string tag = comparators[i].attribute + ':';
    if (text.size() < 2) {
      if (!text.empty()) tokens.push_back(tag + text);
      continue;
    }
    for (std::size_t k = 0; k + 1 < text.size(); ++k) {
      tokens.push_back(tag + text.substr(k, 2));
    }
  }
  std::sort(tokens.begin(), tokens.end());
  tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
  return tokens;
}

namespace {

// Seeded multiply-shift hash functions, one per signature position.
class HashFamily {
 public:
  explicit HashFamily(const LshParams& params) {
    if (params.bands < 1 || params.band_size < 1) {
      throw Error("LSH bands and band size must be at least 1");
    }
    const auto n = static_cast<std::size_t>(params.signature_length());
    hashing::SplitMix64 seeds(params.seed);
    mul_.reserve(n);
    add_.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      mul_.push_back(seeds.next() | 1u);
      add_.push_back(seeds.next());
    }
  }

  std::vector<std::uint64_t> apply(const std::vector<std::string>& tokens) const {
    if (tokens.empty()) return {};
    std::vector<std::uint64_t> base;
    base.reserve(tokens.size());
    for (const auto& t : tokens) base.push_back(hashing::fnv1a(t));

    std::vector<std::uint64_t> sig(mul_.size());
    for (std::size_t k = 0; k < mul_.size(); ++k) {
      std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
      for (std::uint64_t x : base) {
        best = std::min(best, hashing::mix(mul_[k] * x + add_[k]));
      }
      sig[k] = best;
    }
    return sig;
  }

 private:
  std::vector<std::uint64_t> mul_;
  std::vector<std::uint64_t> add_;
};

}  // namespace

std::vector<std::uint64_t> signature(const std::vector<std::string>& tokens,
                                     const LshParams& params) {
  return HashFamily(params).apply(tokens);
}

MinHashIndex::MinHashIndex(LshParams params,
                           std::vector<std::vector<Block>> bands)
    : params_(params), bands_(std::move(bands)) {}

std::size_t MinHashIndex::block_count() const {
  std::size_t n = 0;
  for (const auto& band : bands_) n += band.size();
  return n;
}

MinHashIndex build_index(const RecordSet& records,
                         const RecordComparator& comparator,
                         const LshParams& params) {
  const HashFamily family(params);
  const auto bands = static_cast<std::size_t>(params.bands);
  const auto rows = static_cast<std::size_t>(params.band_size);
  std::vector<std::unordered_map<std::uint64_t, std::vector<RecordId>>> buckets(
      bands);

  // Records are inserted in ascending id order so block members come out
  // sorted.
  for (RecordId id : records.ids()) {
    const auto sig = family.apply(shingle(*records.find(id), comparator));
    if (sig.empty()) continue;
    for (std::size_t b = 0; b < bands; ++b) {
      std::uint64_t key = hashing::mix(b + 1);
      for (std::size_t k = 0; k < rows; ++k) {
        key = hashing::combine(key, sig[b * rows + k]);
      }
      buckets[b][key].push_back(id);
    }
  }

  std::vector<std::vector<MinHashIndex::Block>> out(bands);
  for (std::size_t b = 0; b < bands; ++b) {
    out[b].reserve(buckets[b].size());
    for (auto& [key, members] : buckets[b]) {
      out[b].push_back({key, std::move(members)});
    }
    std::sort(out[b].begin(), out[b].end(),
              [](const auto& x, const auto& y) { return x.key < y.key; });
  }
  return MinHashIndex(params, std::move(out));
}

std::vector<IdPair> candidate_pairs(const MinHashIndex& index) {
  std::vector<IdPair> pairs;
  for (const auto& band : index.bands()) {
    for (const auto& block : band) {
      const auto& m = block.members;
      for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = i + 1; j < m.size(); ++j) {
          pairs.emplace_back(std::min(m[i], m[j]), std::max(m[i], m[j]));
        }
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

}  // namespace tlink
