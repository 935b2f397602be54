#include "concc/suffix_array.hpp"

#include <algorithm>
#include <numeric>

namespace concc {

std::vector<std::int32_t> suffix_array(std::span<std::int32_t const> s,
                                       std::int32_t sigma) {
  auto const n = static_cast<std::int32_t>(s.size());
  std::vector<std::int32_t> sa(n), rank(n), tmp(n), cnt;
  if (n == 0) {
    return sa;
  }
  // Initial counting sort by first symbol.
  cnt.assign(std::max(sigma, n) + 1, 0);
  for (auto c : s) {
    ++cnt[c];
  }
  for (std::size_t i = 1; i < cnt.size(); ++i) {
    cnt[i] += cnt[i - 1];
  }
  for (std::int32_t i = n; i-- > 0;) {
    sa[--cnt[s[i]]] = i;
  }
  rank[sa[0]] = 0;
  std::int32_t classes = 1;
  for (std::int32_t i = 1; i < n; ++i) {
    if (s[sa[i]] != s[sa[i - 1]]) {
      ++classes;
    }
    rank[sa[i]] = classes - 1;
  }
  // Ranks are of prefixes of length k; a missing second half sorts first.
  for (std::int32_t k = 1; k < n && classes < n; k <<= 1) {
    // Sort by second key: suffixes without a second half come first, the
    // rest in the order of their second halves.
    std::int32_t p = 0;
    for (std::int32_t i = n - k; i < n; ++i) {
      tmp[p++] = i;
    }
    for (std::int32_t i = 0; i < n; ++i) {
      if (sa[i] >= k) {
        tmp[p++] = sa[i] - k;
      }
    }
    std::fill(cnt.begin(), cnt.begin() + classes + 1, 0);
    for (std::int32_t i = 0; i < n; ++i) {
      ++cnt[rank[i]];
    }
    for (std::int32_t i = 1; i <= classes; ++i) {
      cnt[i] += cnt[i - 1];
    }
    for (std::int32_t i = n; i-- > 0;) {
      sa[--cnt[rank[tmp[i]]]] = tmp[i];
    }
    auto second = [&](std::int32_t i) { return i + k < n ? rank[i + k] : -1; };
    tmp[sa[0]] = 0;
    classes = 1;
    for (std::int32_t i = 1; i < n; ++i) {
      if (rank[sa[i]] != rank[sa[i - 1]] ||
          second(sa[i]) != second(sa[i - 1])) {
        ++classes;
      }
      tmp[sa[i]] = classes - 1;
    }
    rank.swap(tmp);
  }
  return sa;
}

std::vector<std::int32_t> lcp_array(std::span<std::int32_t const> s,
                                    std::span<std::int32_t const> sa) {
  auto const n = static_cast<std::int32_t>(s.size());
  std::vector<std::int32_t> rank(n), lcp(n, 0);
  for (std::int32_t i = 0; i < n; ++i) {
    rank[sa[i]] = i;
  }
  std::int32_t h = 0;
  for (std::int32_t i = 0; i < n; ++i) {
    if (rank[i] == 0) {
      h = 0;
      continue;
    }
    std::int32_t const j = sa[rank[i] - 1];
    while (i + h < n && j + h < n && s[i + h] == s[j + h]) {
      ++h;
    }
    lcp[rank[i]] = h;
    if (h > 0) {
      --h;
    }
  }
  return lcp;
}

SuffixAutomaton::SuffixAutomaton(std::span<std::int32_t const> s,
                                 std::int32_t sigma)
    : sigma_(sigma) {
  std::size_t const cap = 2 * s.size() + 2;
  next_.reserve(cap * sigma_);
  link_.reserve(cap);
  len_.reserve(cap);
  next_.assign(sigma_, -1);
  link_.push_back(-1);
  len_.push_back(0);
  std::int32_t last = 0;
  for (auto c : s) {
    last = extend(last, c);
  }
}

std::int32_t SuffixAutomaton::extend(std::int32_t last, std::int32_t c) {
  auto const cur = static_cast<std::int32_t>(len_.size());
  len_.push_back(len_[last] + 1);
  link_.push_back(0);
  next_.resize(next_.size() + sigma_, -1);
  std::int32_t p = last;
  while (p != -1 && next_[p * sigma_ + c] == -1) {
    next_[p * sigma_ + c] = cur;
    p = link_[p];
  }
  if (p == -1) {
    link_[cur] = 0;
    return cur;
  }
  std::int32_t const q = next_[p * sigma_ + c];
  if (len_[p] + 1 == len_[q]) {
    link_[cur] = q;
    return cur;
  }
  auto const clone = static_cast<std::int32_t>(len_.size());
  len_.push_back(len_[p] + 1);
  link_.push_back(link_[q]);
  next_.resize(next_.size() + sigma_);
  std::copy_n(next_.begin() + q * sigma_, sigma_,
              next_.begin() + clone * sigma_);
  while (p != -1 && next_[p * sigma_ + c] == q) {
    next_[p * sigma_ + c] = clone;
    p = link_[p];
  }
  link_[q] = clone;
  link_[cur] = clone;
  return cur;
}

std::vector<std::int32_t> SuffixAutomaton::matching_statistics_reversed(
    std::span<std::int32_t const> p) const {
  auto const n = static_cast<std::int32_t>(p.size());
  std::vector<std::int32_t> out(n, 0);
  std::int32_t v = 0;
  std::int32_t l = 0;
  for (std::int32_t i = n; i-- > 0;) {
    std::int32_t const c = p[i];
    while (v != 0 && next_[v * sigma_ + c] == -1) {
      v = link_[v];
      l = len_[v];
    }
    if (next_[v * sigma_ + c] != -1) {
      v = next_[v * sigma_ + c];
      ++l;
    } else {
      v = 0;
      l = 0;
    }
    out[i] = l;
  }
  return out;
}

}  // namespace concc
