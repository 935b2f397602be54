#pragma once

// Slow, independent reference implementations used to cross-check the
// library. They share nothing with it beyond the Letter encoding.

#include <algorithm>
#include <boost/rational.hpp>
#include <cstdint>
#include <deque>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

namespace oracle {

using Raw = std::vector<int>;  // +(g+1) / -(g+1)

inline Raw free_reduce(Raw const& w) {
  Raw out;
  for (int l : w) {
    if (!out.empty() && out.back() == -l) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

inline Raw inv(Raw const& w) {
  Raw out(w.rbegin(), w.rend());
  for (int& l : out) {
    l = -l;
  }
  return out;
}

inline Raw power(Raw const& w, int k) {
  Raw base = k < 0 ? inv(w) : w;
  Raw out;
  for (int i = 0; i < std::abs(k); ++i) {
    out.insert(out.end(), base.begin(), base.end());
  }
  return free_reduce(out);
}

inline Raw cyclic_core(Raw w) {
  w = free_reduce(w);
  while (w.size() >= 2 && w.front() == -w.back()) {
    w = Raw(w.begin() + 1, w.end() - 1);
  }
  return w;
}

// Conjugacy in a free group by trying every rotation.
inline bool conjugate(Raw const& u, Raw const& v) {
  Raw const a = cyclic_core(u);
  Raw const b = cyclic_core(v);
  if (a.size() != b.size()) {
    return false;
  }
  if (a.empty()) {
    return true;
  }
  for (std::size_t r = 0; r < a.size(); ++r) {
    bool same = true;
    for (std::size_t i = 0; i < a.size() && same; ++i) {
      same = a[(r + i) % a.size()] == b[i];
    }
    if (same) {
      return true;
    }
  }
  return false;
}

// u^k ~ v^l for some 1 <= k <= bound, 1 <= |l| <= bound.
inline bool commensurable(Raw const& u, Raw const& v, int bound = 6) {
  for (int k = 1; k <= bound; ++k) {
    Raw const uk = power(u, k);
    for (int l = 1; l <= bound; ++l) {
      if (conjugate(uk, power(v, l)) || conjugate(uk, power(v, -l))) {
        return true;
      }
    }
  }
  return false;
}

// Every reduced nonidentity word over `rank` generators of length <= n.
inline std::vector<Raw> all_words(int rank, std::size_t n) {
  std::vector<Raw> out;
  std::vector<Raw> layer{{}};
  for (std::size_t len = 1; len <= n; ++len) {
    std::vector<Raw> next;
    for (auto const& w : layer) {
      for (int g = 1; g <= rank; ++g) {
        for (int l : {g, -g}) {
          if (!w.empty() && w.back() == -l) {
            continue;
          }
          Raw x = w;
          x.push_back(l);
          next.push_back(x);
        }
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

// Every cyclic permutation of every relator and of its inverse.
inline std::vector<Raw> closure(std::vector<Raw> const& relators) {
  std::set<Raw> s;
  for (auto const& r0 : relators) {
    for (auto const& r : {cyclic_core(r0), cyclic_core(inv(r0))}) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        Raw rot(r.begin() + i, r.end());
        rot.insert(rot.end(), r.begin(), r.begin() + i);
        s.insert(rot);
      }
    }
  }
  return {s.begin(), s.end()};
}

// Longest common prefix over all pairs of distinct members.
inline std::size_t max_piece(std::vector<Raw> const& members) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      auto const& a = members[i];
      auto const& b = members[j];
      std::size_t k = 0;
      while (k < a.size() && k < b.size() && a[k] == b[k]) {
        ++k;
      }
      best = std::max(best, k);
    }
  }
  return best;
}

// Two distinct members of the closure share a prefix of length L. Works on
// the cyclic words themselves (relators and inverses, pairwise not
// rotations of each other, no proper powers), so it scales to long relators:
// every cyclic window of length L is hashed and equal hashes are compared
// letter by letter.
inline bool repeated_window(std::vector<Raw> const& cyclic_words,
                            std::size_t L) {
  using u64 = std::uint64_t;
  constexpr u64 mod = (u64{1} << 61) - 1;
  auto mulmod = [](u64 a, u64 b) {
    auto const p = static_cast<unsigned __int128>(a) * b;
    u64 r = static_cast<u64>(p & mod) + static_cast<u64>(p >> 61);
    return r >= mod ? r - mod : r;
  };
  u64 const base = 1000003;
  u64 top = 1;
  for (std::size_t i = 1; i < L; ++i) {
    top = mulmod(top, base);
  }
  auto code = [](int l) { return static_cast<u64>(l + 1000); };
  std::unordered_map<u64, std::vector<std::pair<std::size_t, std::size_t>>>
      seen;
  auto same = [&](std::pair<std::size_t, std::size_t> a,
                  std::pair<std::size_t, std::size_t> b) {
    auto const& wa = cyclic_words[a.first];
    auto const& wb = cyclic_words[b.first];
    for (std::size_t i = 0; i < L; ++i) {
      if (wa[(a.second + i) % wa.size()] != wb[(b.second + i) % wb.size()]) {
        return false;
      }
    }
    return true;
  };
  for (std::size_t w = 0; w < cyclic_words.size(); ++w) {
    auto const& x = cyclic_words[w];
    if (x.size() < L) {
      continue;
    }
    u64 h = 0;
    for (std::size_t i = 0; i < L; ++i) {
      h = (mulmod(h, base) + code(x[i])) % mod;
    }
    for (std::size_t off = 0; off < x.size(); ++off) {
      auto& bucket = seen[h];
      for (auto const& other : bucket) {
        if (same(other, {w, off})) {
          return true;
        }
      }
      bucket.emplace_back(w, off);
      // Slide to offset off + 1.
      u64 const out = mulmod(code(x[off]), top);
      h = (h + mod - out) % mod;
      h = (mulmod(h, base) + code(x[(off + L) % x.size()])) % mod;
    }
  }
  return false;
}

// Breadth-first search over every length-nonincreasing rewrite u -> v^-1
// with uv a member and |u| >= |v|. Sound for any presentation; complete
// for C'(1/6) ones.
inline bool bfs_trivial(Raw const& w, std::vector<Raw> const& members) {
  std::set<Raw> seen;
  std::deque<Raw> queue{free_reduce(w)};
  seen.insert(queue.front());
  while (!queue.empty()) {
    Raw const x = queue.front();
    queue.pop_front();
    if (x.empty()) {
      return true;
    }
    for (auto const& r : members) {
      std::size_t const n = r.size();
      for (std::size_t len = (n + 1) / 2; len <= std::min(n, x.size()); ++len) {
        for (std::size_t at = 0; at + len <= x.size(); ++at) {
          if (!std::equal(r.begin(), r.begin() + len, x.begin() + at)) {
            continue;
          }
          Raw rest(r.begin() + len, r.end());
          Raw y(x.begin(), x.begin() + at);
          Raw const ri = inv(rest);
          y.insert(y.end(), ri.begin(), ri.end());
          y.insert(y.end(), x.begin() + at + len, x.end());
          y = free_reduce(y);
          if (seen.insert(y).second) {
            queue.push_back(y);
          }
        }
      }
    }
  }
  return false;
}

// Klein bottle group < a, t | t a t^-1 a > as Z x| Z: a^m t^n.
struct KleinElt {
  long long m = 0;
  long long n = 0;
  bool operator==(KleinElt const&) const = default;
};

inline KleinElt klein_mul(KleinElt x, KleinElt y) {
  long long const s = (x.n % 2 == 0) ? 1 : -1;
  return {x.m + s * y.m, x.n + y.n};
}

// Generators: 1 = a, 2 = t.
inline KleinElt klein_eval(Raw const& w) {
  KleinElt e;
  for (int l : w) {
    KleinElt g;
    if (std::abs(l) == 1) {
      g = {l > 0 ? 1 : -1, 0};
    } else {
      // t^-1 = (0, -1): (0,1)(0,-1) = (0,0).
      g = {0, l > 0 ? 1 : -1};
    }
    e = klein_mul(e, g);
  }
  return e;
}

// BS(1,2) = < a, t | t a t^-1 = a^2 > acting on Q by a: x -> x + 1,
// t: x -> 2x; a word acts right to left. Elements x -> 2^e x + c.
struct Affine {
  long long e = 0;
  boost::rational<long long> c{0};
  bool operator==(Affine const&) const = default;
};

inline Affine affine_compose(Affine f, Affine g) {  // f after g
  boost::rational<long long> scale = 1;
  for (long long i = 0; i < std::abs(f.e); ++i) {
    scale *= (f.e > 0 ? 2 : boost::rational<long long>(1, 2));
  }
  return {f.e + g.e, scale * g.c + f.c};
}

inline Affine bs12_eval(Raw const& w) {
  Affine acc;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    int const l = *it;
    Affine g;
    if (std::abs(l) == 1) {
      g = {0, boost::rational<long long>(l > 0 ? 1 : -1)};
    } else {
      g = {l > 0 ? 1 : -1, 0};
    }
    acc = affine_compose(g, acc);
  }
  return acc;
}

}  // namespace oracle
