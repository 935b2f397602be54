#include "concc/hnn.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <boost/rational.hpp>

#include "concc/error.hpp"

namespace concc {

char const* to_string(Verdict3 v) {
  switch (v) {
    case Verdict3::yes:
      return "yes";
    case Verdict3::no:
      return "no";
    case Verdict3::unknown:
      return "unknown";
  }
  return "unknown";
}

namespace {

using Rational = boost::rational<long long>;

// Basis of the rational nullspace of `rows` (each of width n), scaled to
// integer vectors.
std::vector<std::vector<long long>> integer_nullspace(
    std::vector<std::vector<long long>> const& rows, std::size_t n) {
  std::vector<std::vector<Rational>> m;
  for (auto const& r : rows) {
    m.emplace_back(r.begin(), r.end());
  }
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < m.size(); ++col) {
    std::size_t p = rank;
    while (p < m.size() && m[p][col] == Rational(0)) {
      ++p;
    }
    if (p == m.size()) {
      continue;
    }
    std::swap(m[p], m[rank]);
    Rational const inv = Rational(1) / m[rank][col];
    for (auto& x : m[rank]) {
      x *= inv;
    }
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r != rank && m[r][col] != Rational(0)) {
        Rational const f = m[r][col];
        for (std::size_t c = 0; c < n; ++c) {
          m[r][c] -= f * m[rank][c];
        }
      }
    }
    pivot_col.push_back(col);
    ++rank;
  }
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_col) {
    is_pivot[c] = true;
  }
  std::vector<std::vector<long long>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) {
      continue;
    }
    std::vector<Rational> v(n, Rational(0));
    v[free] = Rational(1);
    for (std::size_t r = 0; r < rank; ++r) {
      v[pivot_col[r]] = -m[r][free];
    }
    long long l = 1;
    for (auto const& x : v) {
      l = std::lcm(l, x.denominator());
    }
    std::vector<long long> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = (v[i] * l).numerator();
    }
    basis.push_back(std::move(out));
  }
  return basis;
}

long long evaluate(std::vector<long long> const& f, Word const& w) {
  long long s = 0;
  for (Letter l : w) {
    auto const g = generator_of(l);
    if (g < f.size()) {
      s += sign_of(l) * f[g];
    }
  }
  return s;
}

std::vector<long long> exponent_vector(Word const& w, std::size_t n) {
  std::vector<long long> v(n, 0);
  for (Letter l : w) {
    v[generator_of(l)] += sign_of(l);
  }
  return v;
}

}  // namespace

Tower::Tower(Alphabet base, long long bound)
    : alphabet_(std::move(base)),
      level_(alphabet_.size(), 0),
      assoc_index_(alphabet_.size()),
      bound_(bound) {
  if (bound_ < 1) {
    throw InvalidArgument("membership bound must be positive");
  }
  functionals_.resize(1);
  compute_functionals(0);
}

std::size_t Tower::base_rank() const noexcept {
  return static_cast<std::size_t>(
      std::count(level_.begin(), level_.end(), std::size_t{0}));
}

bool Tower::is_stable(std::size_t generator) const {
  return generator < assoc_index_.size() && assoc_index_[generator].has_value();
}

std::size_t Tower::level(Word const& w) const {
  std::size_t l = 0;
  for (Letter x : w) {
    auto const g = generator_of(x);
    if (g >= level_.size()) {
      throw UnknownGenerator("letter outside the tower alphabet");
    }
    l = std::max(l, level_[g]);
  }
  return l;
}

Tower::AssocData const& Tower::data_of(std::size_t stable_letter) const {
  return data_[*assoc_index_[stable_letter]];
}

void Tower::compute_functionals(std::size_t level) {
  std::vector<std::vector<long long>> rows;
  std::size_t const n = alphabet_.size();
  for (auto const& a : assoc_) {
    if (level_[a.stable_letter] <= level) {
      auto vc = exponent_vector(a.source, n);
      auto const vd = exponent_vector(a.target, n);
      for (std::size_t i = 0; i < n; ++i) {
        vc[i] -= vd[i];
      }
      rows.push_back(std::move(vc));
    }
  }
  if (functionals_.size() <= level) {
    functionals_.resize(level + 1);
  }
  functionals_[level] = integer_nullspace(rows, n);
}

std::size_t Tower::add_stage(std::string name, Word const& source,
                             Word const& target) {
  if (source.empty() || target.empty()) {
    throw IdentityElement("associated elements must be nonidentity");
  }
  std::size_t const ls = level(source);
  std::size_t const lt = level(target);
  if (alphabet_.find(name)) {
    throw InvalidArgument("generator name '" + name + "' already in use");
  }
  std::size_t const g = alphabet_.add(std::move(name));
  std::size_t const lvl = top_ + 1;
  level_.push_back(lvl);
  assoc_index_.push_back(assoc_.size());
  assoc_.push_back({g, source, target});
  Word const rs = britton_reduce(source);
  Word const rt = britton_reduce(target);
  data_.push_back({rs, rt, ls, lt});
  data_.back().source_level = level(rs);
  data_.back().target_level = level(rt);
  top_ = lvl;
  compute_functionals(lvl);
  return g;
}

Tower Tower::from_presentation(FinitePresentation const& p, long long bound) {
  std::size_t const n = p.alphabet.size();
  struct Parsed {
    std::size_t stable;
    Word c, d;
  };
  std::vector<Parsed> parsed;
  std::vector<bool> stable(n, false);
  for (auto const& r : p.relators) {
    Word const core = CyclicWord(r).word();
    std::vector<int> pos(n, 0), neg(n, 0);
    for (Letter l : core) {
      (l > 0 ? pos : neg)[generator_of(l)]++;
    }
    std::optional<std::size_t> s;
    for (std::size_t g = n; g-- > 0;) {
      if (pos[g] == 1 && neg[g] == 1) {
        s = g;
        break;
      }
    }
    if (!s) {
      throw InvalidArgument("relator " + format_word(r, p.alphabet) +
                            " is not of the form t c t^-1 d^-1");
    }
    if (stable[*s]) {
      throw InvalidArgument("stable letter " + p.alphabet.name(*s) +
                            " occurs in two relators");
    }
    stable[*s] = true;
    auto const& L = core.letters();
    std::size_t const start =
        std::find(L.begin(), L.end(), make_letter(*s)) - L.begin();
    std::vector<Letter> rot(L.begin() + start, L.end());
    rot.insert(rot.end(), L.begin(), L.begin() + start);
    std::size_t const back =
        std::find(rot.begin(), rot.end(), make_letter(*s, -1)) - rot.begin();
    Word const c(std::vector<Letter>(rot.begin() + 1, rot.begin() + back));
    Word const d =
        Word(std::vector<Letter>(rot.begin() + back + 1, rot.end())).inverse();
    if (c.empty() || d.empty()) {
      throw InvalidArgument("relator " + format_word(r, p.alphabet) +
                            " associates the identity");
    }
    parsed.push_back({*s, c, d});
  }
  // Resolve levels.
  std::vector<std::optional<std::size_t>> lvl(n);
  for (std::size_t g = 0; g < n; ++g) {
    if (!stable[g]) {
      lvl[g] = 0;
    }
  }
  std::vector<bool> done(parsed.size(), false);
  std::vector<std::size_t> order;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < parsed.size(); ++i) {
      if (done[i]) {
        continue;
      }
      std::size_t m = 0;
      bool ready = true;
      for (Word const* w : {&parsed[i].c, &parsed[i].d}) {
        for (Letter l : *w) {
          auto const& x = lvl[generator_of(l)];
          if (!x) {
            ready = false;
          } else {
            m = std::max(m, *x);
          }
        }
      }
      if (ready) {
        lvl[parsed[i].stable] = m + 1;
        done[i] = true;
        order.push_back(i);
        progress = true;
      }
    }
  }
  if (order.size() != parsed.size()) {
    throw InvalidArgument("stable letters depend on each other cyclically");
  }
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) {
    return *lvl[parsed[x].stable] < *lvl[parsed[y].stable];
  });

  Tower t;
  t.alphabet_ = p.alphabet;
  t.bound_ = bound;
  t.level_.resize(n);
  t.assoc_index_.resize(n);
  for (std::size_t g = 0; g < n; ++g) {
    t.level_[g] = *lvl[g];
    t.top_ = std::max(t.top_, *lvl[g]);
  }
  for (auto i : order) {
    t.assoc_index_[parsed[i].stable] = t.assoc_.size();
    t.assoc_.push_back({parsed[i].stable, parsed[i].c, parsed[i].d});
    t.data_.push_back({});
  }
  for (std::size_t l = 0; l <= t.top_; ++l) {
    t.compute_functionals(l);
  }
  // Reduce associated elements level by level so lower data is ready first.
  for (std::size_t i = 0; i < t.assoc_.size(); ++i) {
    auto& d = t.data_[i];
    d.source = t.britton_reduce(t.assoc_[i].source);
    d.target = t.britton_reduce(t.assoc_[i].target);
    d.source_level = t.level(d.source);
    d.target_level = t.level(d.target);
  }
  return t;
}

Tower Tower::prefix(std::size_t stages) const {
  if (stages > assoc_.size()) {
    throw InvalidArgument("tower has fewer stages than requested");
  }
  std::vector<bool> keep(alphabet_.size(), false);
  for (std::size_t g = 0; g < alphabet_.size(); ++g) {
    keep[g] = !is_stable(g) || *assoc_index_[g] < stages;
  }
  std::size_t cut = 0;
  for (std::size_t g = 0; g < keep.size(); ++g) {
    if (keep[g]) {
      cut = g + 1;
    }
  }
  for (std::size_t g = 0; g < cut; ++g) {
    if (!keep[g]) {
      throw InvalidArgument("stable letters are not in attachment order");
    }
  }
  Tower t;
  t.alphabet_ = Alphabet(std::vector<std::string>(
      alphabet_.names().begin(), alphabet_.names().begin() + cut));
  t.bound_ = bound_;
  t.level_.assign(level_.begin(), level_.begin() + cut);
  t.assoc_index_.assign(assoc_index_.begin(), assoc_index_.begin() + cut);
  t.assoc_.assign(assoc_.begin(), assoc_.begin() + stages);
  t.data_.assign(data_.begin(), data_.begin() + stages);
  for (auto l : t.level_) {
    t.top_ = std::max(t.top_, l);
  }
  for (std::size_t l = 0; l <= t.top_; ++l) {
    t.compute_functionals(l);
  }
  return t;
}

MembershipResult Tower::member_reduced(Word const& g, std::size_t g_level,
                                       Word const& c,
                                       std::size_t c_level) const {
  if (g.empty()) {
    return {Verdict3::yes, 0, 0};
  }
  if (g_level > c_level) {
    return {Verdict3::no, 0, 0};
  }
  if (c_level == 0) {
    auto const rg = primitive_root(g);
    auto const rc = primitive_root(c);
    if (rg.exponent % rc.exponent != 0) {
      return {Verdict3::no, 0, 0};
    }
    long long const q = rg.exponent / rc.exponent;
    if (rg.root == rc.root) {
      return {Verdict3::yes, q, 0};
    }
    if (rg.root == rc.root.inverse()) {
      return {Verdict3::yes, -q, 0};
    }
    return {Verdict3::no, 0, 0};
  }
  auto check = [&](long long m) -> std::optional<bool> {
    try {
      auto const w = g * c.pow(-m);
      return reduce_at(w.letters(), c_level).empty();
    } catch (BoundExhausted const&) {
      return std::nullopt;
    }
  };
  for (auto const& f : functionals_[c_level]) {
    long long const fc = evaluate(f, c);
    long long const fg = evaluate(f, g);
    if (fc == 0) {
      if (fg != 0) {
        return {Verdict3::no, 0, 0};
      }
      continue;
    }
    if (fg % fc != 0) {
      return {Verdict3::no, 0, 0};
    }
    long long const m = fg / fc;
    auto const ok = check(m);
    if (!ok) {
      return {Verdict3::unknown, 0, bound_};
    }
    return *ok ? MembershipResult{Verdict3::yes, m, 0}
               : MembershipResult{Verdict3::no, 0, 0};
  }
  for (long long m = 1; m <= bound_; ++m) {
    for (long long s : {m, -m}) {
      auto const ok = check(s);
      if (ok && *ok) {
        return {Verdict3::yes, s, 0};
      }
    }
  }
  return {Verdict3::unknown, 0, bound_};
}

std::vector<Letter> Tower::reduce_at(std::vector<Letter> const& w,
                                     std::size_t lvl) const {
  if (lvl == 0) {
    return reduce(w).letters();
  }
  std::vector<std::vector<Letter>> segs(1);
  std::vector<Letter> stables;
  auto close_segment = [&] {
    segs.back() = reduce_at(segs.back(), lvl - 1);
  };
  for (Letter x : w) {
    if (level_[generator_of(x)] < lvl) {
      segs.back().push_back(x);
      continue;
    }
    close_segment();
    if (!stables.empty() && stables.back() == -x) {
      Letter const prev = stables.back();
      auto const& a = data_of(generator_of(x));
      Word const mid(segs.back());
      std::size_t const ml = level(mid);
      MembershipResult r = prev > 0
                               ? member_reduced(mid, ml, a.source, a.source_level)
                               : member_reduced(mid, ml, a.target, a.target_level);
      if (r.verdict == Verdict3::unknown) {
        throw BoundExhausted(
            "membership of segment of length " + std::to_string(mid.size()) +
            " in the subgroup associated with " +
            alphabet_.name(generator_of(x)) + " undecided within bound " +
            std::to_string(r.bound));
      }
      if (r.verdict == Verdict3::yes) {
        Word const rep = prev > 0 ? a.target.pow(r.exponent)
                                  : a.source.pow(r.exponent);
        stables.pop_back();
        segs.pop_back();
        auto& s = segs.back();
        s.insert(s.end(), rep.begin(), rep.end());
        continue;
      }
    }
    stables.push_back(x);
    segs.emplace_back();
  }
  close_segment();
  std::vector<Letter> out;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    out.insert(out.end(), segs[i].begin(), segs[i].end());
    if (i < stables.size()) {
      out.push_back(stables[i]);
    }
  }
  return out;
}

Word Tower::britton_reduce(Word const& w) const {
  std::size_t const l = level(w);
  return Word(reduce_at(w.letters(), l));
}

Verdict3 Tower::is_trivial(Word const& w) const {
  try {
    return britton_reduce(w).empty() ? Verdict3::yes : Verdict3::no;
  } catch (BoundExhausted const&) {
    return Verdict3::unknown;
  }
}

Verdict3 Tower::equal(Word const& u, Word const& v) const {
  return is_trivial(u * v.inverse());
}

MembershipResult Tower::cyclic_membership(Word const& g, Word const& c) const {
  Word rc;
  Word rg;
  try {
    rc = britton_reduce(c);
    rg = britton_reduce(g);
  } catch (BoundExhausted const&) {
    return {Verdict3::unknown, 0, bound_};
  }
  if (rc.empty()) {
    throw IdentityElement("cyclic_membership needs a nonidentity generator");
  }
  return member_reduced(rg, level(rg), rc, level(rc));
}

bool Tower::verify_conjugator(Word const& g, Word const& w,
                              Word const& target) const {
  auto const v = is_trivial(w * g * w.inverse() * target.inverse());
  if (v == Verdict3::unknown) {
    throw BoundExhausted("conjugator verification undecided within bound " +
                         std::to_string(bound_));
  }
  return v == Verdict3::yes;
}

std::vector<Letter> Tower::stable_signature(Word const& w) const {
  std::vector<Letter> sig;
  for (Letter l : britton_reduce(w)) {
    if (level_[generator_of(l)] > 0) {
      sig.push_back(l);
    }
  }
  return sig;
}

bool Tower::has_pinch(Word const& w) const {
  auto const& L = w.letters();
  for (std::size_t i = 0; i < L.size(); ++i) {
    std::size_t const li = level_[generator_of(L[i])];
    if (li == 0) {
      continue;
    }
    std::size_t j = i + 1;
    while (j < L.size() && level_[generator_of(L[j])] < li) {
      ++j;
    }
    if (j == L.size() || L[j] != -L[i]) {
      continue;
    }
    Word const mid(std::vector<Letter>(L.begin() + i + 1, L.begin() + j));
    auto const& a = data_of(generator_of(L[i]));
    auto const r = cyclic_membership(mid, L[i] > 0 ? a.source : a.target);
    if (r.verdict == Verdict3::yes) {
      return true;
    }
  }
  return false;
}

FinitePresentation Tower::presentation() const {
  FinitePresentation p;
  p.alphabet = alphabet_;
  for (auto const& a : assoc_) {
    Word const t = Word::generator(a.stable_letter);
    p.relators.push_back(t * a.source * t.inverse() * a.target.inverse());
  }
  return p;
}

Word parse_tower_word(std::string_view text, Tower const& tower) {
  return parse_word(text, tower.alphabet());
}

}  // namespace concc
