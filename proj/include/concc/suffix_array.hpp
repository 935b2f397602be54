#pragma once

// String indexes over integer alphabets.

#include <cstdint>
#include <span>
#include <vector>

namespace concc {

// Suffix array of `s` (values in [0, sigma)) by prefix doubling with radix
// sort, O(n log n).
std::vector<std::int32_t> suffix_array(std::span<std::int32_t const> s,
                                       std::int32_t sigma);

// lcp[i] = longest common prefix of suffixes sa[i-1] and sa[i]; lcp[0] = 0.
// Kasai's algorithm.
std::vector<std::int32_t> lcp_array(std::span<std::int32_t const> s,
                                    std::span<std::int32_t const> sa);

// Suffix automaton over [0, sigma).
class SuffixAutomaton {
 public:
  SuffixAutomaton(std::span<std::int32_t const> s, std::int32_t sigma);

  // out[i] = length of the longest prefix of p[i..] occurring in the indexed
  // text. Uses an automaton of the reversed text, so build with the reversed
  // text for this purpose.
  std::vector<std::int32_t> matching_statistics_reversed(
      std::span<std::int32_t const> p) const;

  std::size_t states() const noexcept { return len_.size(); }

 private:
  std::int32_t extend(std::int32_t last, std::int32_t c);

  std::int32_t sigma_;
  std::vector<std::int32_t> next_;  // states * sigma, -1 = none
  std::vector<std::int32_t> link_;
  std::vector<std::int32_t> len_;
};

}  // namespace concc
