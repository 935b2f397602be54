#include "concc/small_cancellation.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "concc/error.hpp"

namespace concc {

namespace {

// Strips mutually inverse end letters without rotating.
Word cyclic_core(Word const& w) {
  auto const& L = w.letters();
  std::size_t i = 0;
  std::size_t j = L.size();
  while (j - i >= 2 && L[i] == -L[j - 1]) {
    ++i;
    --j;
  }
  if (i == 0) {
    return w;
  }
  return w.subword(i, j - i);
}

std::vector<std::int32_t> ranks_of(Word const& w) {
  std::vector<std::int32_t> r;
  r.reserve(w.size());
  for (Letter l : w) {
    r.push_back(static_cast<std::int32_t>(letter_rank(l)));
  }
  return r;
}

}  // namespace

SymmetrizedSet::SymmetrizedSet(std::vector<Word> relators)
    : origin_(std::move(relators)) {
  std::set<Word> seen;
  for (auto const& r : origin_) {
    if (r.empty()) {
      throw IdentityElement("relators must be nonidentity");
    }
    Word const core = CyclicWord(r).word();
    if (primitive_root(core).exponent > 1) {
      throw InvalidArgument("relator of length " + std::to_string(r.size()) +
                            " is a proper power");
    }
    seen.insert(core);
    seen.insert(CyclicWord(core.inverse()).word());
  }
  bases_.assign(seen.begin(), seen.end());

  std::int32_t max_rank = 0;
  for (auto const& b : bases_) {
    size_ += b.size();
    for (Letter l : b) {
      max_rank = std::max(max_rank, static_cast<std::int32_t>(letter_rank(l)));
    }
  }
  std::int32_t const sep = max_rank + 1;
  sigma_ = max_rank + 2;

  auto& ix = index_;
  for (std::size_t b = 0; b < bases_.size(); ++b) {
    auto const r = ranks_of(bases_[b]);
    for (int copy = 0; copy < 2; ++copy) {
      for (std::size_t o = 0; o < r.size(); ++o) {
        ix.text.push_back(r[o]);
        ix.base_of.push_back(static_cast<std::int32_t>(b));
        ix.offset_of.push_back(
            static_cast<std::int32_t>(o + copy * r.size()));
      }
    }
    ix.text.push_back(sep);
    ix.base_of.push_back(-1);
    ix.offset_of.push_back(-1);
  }
  ix.sa = suffix_array(ix.text, sigma_);
  ix.lcp = lcp_array(ix.text, ix.sa);

  std::map<std::size_t, std::size_t> class_of_length;
  for (auto const& b : bases_) {
    class_of_length.emplace(b.size(), 0);
  }
  for (auto& [len, idx] : class_of_length) {
    idx = classes_.size();
    classes_.push_back({});
    classes_.back().length = len;
  }
  for (auto pos : ix.sa) {
    auto const b = ix.base_of[pos];
    if (b < 0) {
      continue;
    }
    auto const n = bases_[b].size();
    if (static_cast<std::size_t>(ix.offset_of[pos]) < n) {
      classes_[class_of_length[n]].sorted.push_back(
          {static_cast<std::size_t>(b),
           static_cast<std::size_t>(ix.offset_of[pos])});
    }
  }
  for (auto& c : classes_) {
    for (std::size_t b = 0; b < bases_.size(); ++b) {
      if (bases_[b].size() != c.length) {
        continue;
      }
      auto const r = ranks_of(bases_[b]);
      c.reversed_text.insert(c.reversed_text.end(), r.begin(), r.end());
      c.reversed_text.insert(c.reversed_text.end(), r.begin(), r.end());
      c.reversed_text.push_back(sep);
    }
    std::reverse(c.reversed_text.begin(), c.reversed_text.end());
    c.automaton.emplace(c.reversed_text, sigma_);
  }
}

Word SymmetrizedSet::member_word(Member m) const {
  auto const& L = bases_.at(m.base).letters();
  std::vector<Letter> out(L.begin() + m.offset, L.end());
  out.insert(out.end(), L.begin(), L.begin() + m.offset);
  return Word(std::move(out));
}

Letter SymmetrizedSet::letter(Member m, std::size_t i) const {
  auto const& b = bases_[m.base];
  return b[(m.offset + i) % b.size()];
}

std::vector<Member> SymmetrizedSet::members() const {
  std::vector<Member> out;
  out.reserve(size_);
  for (std::size_t b = 0; b < bases_.size(); ++b) {
    for (std::size_t o = 0; o < bases_[b].size(); ++o) {
      out.push_back({b, o});
    }
  }
  return out;
}

std::vector<Word> SymmetrizedSet::closure() const {
  std::vector<Word> out;
  for (auto m : members()) {
    out.push_back(member_word(m));
  }
  return out;
}

SymmetrizedSet symmetrize(std::vector<Word> const& relators) {
  return SymmetrizedSet(relators);
}

PieceReport max_pieces(SymmetrizedSet const& s) {
  auto const& ix = s.index();
  auto const N = static_cast<std::int32_t>(ix.sa.size());
  PieceReport rep;
  rep.per_base.resize(s.bases().size());
  for (std::size_t b = 0; b < s.bases().size(); ++b) {
    rep.per_base[b].base = b;
    rep.per_base[b].length = s.base_length(b);
  }
  auto member_at = [&](std::int32_t pos) -> std::optional<Member> {
    auto const b = ix.base_of[pos];
    if (b < 0) {
      return std::nullopt;
    }
    auto const o = static_cast<std::size_t>(ix.offset_of[pos]);
    if (o >= s.base_length(b)) {
      return std::nullopt;
    }
    return Member{static_cast<std::size_t>(b), o};
  };
  constexpr auto inf = std::numeric_limits<std::int32_t>::max();
  for (std::int32_t idx = 0; idx < N; ++idx) {
    auto const mi = member_at(ix.sa[idx]);
    if (!mi) {
      continue;
    }
    auto const ni = static_cast<std::int32_t>(s.base_length(mi->base));
    std::int32_t best = 0;
    std::optional<Member> partner;
    auto consider = [&](std::int32_t j, std::int32_t run) {
      auto const mk = member_at(ix.sa[j]);
      if (!mk) {
        return;
      }
      auto const nk = static_cast<std::int32_t>(s.base_length(mk->base));
      std::int32_t const v = std::min({run, ni, nk});
      if (v > best) {
        best = v;
        partner = mk;
      }
    };
    std::int32_t run = inf;
    for (std::int32_t j = idx - 1; j >= 0 && best < ni; --j) {
      run = std::min(run, ix.lcp[j + 1]);
      if (run <= best) {
        break;
      }
      consider(j, run);
    }
    run = inf;
    for (std::int32_t j = idx + 1; j < N && best < ni; ++j) {
      run = std::min(run, ix.lcp[j]);
      if (run <= best) {
        break;
      }
      consider(j, run);
    }
    auto& bp = rep.per_base[mi->base];
    if (partner && static_cast<std::size_t>(best) > bp.piece) {
      bp.piece = static_cast<std::size_t>(best);
      bp.first = *mi;
      bp.second = *partner;
    }
  }
  for (auto const& bp : rep.per_base) {
    if (bp.piece > rep.max_piece_length ||
        (rep.piece.empty() && bp.piece > 0 &&
         bp.piece == rep.max_piece_length)) {
      rep.max_piece_length = bp.piece;
      rep.first = bp.first;
      rep.second = bp.second;
      rep.piece = s.member_word(bp.first).subword(0, bp.piece);
    }
    Ratio const r(static_cast<long long>(bp.piece),
                  static_cast<long long>(bp.length));
    if (r > rep.max_ratio) {
      rep.max_ratio = r;
    }
  }
  return rep;
}

MetricResult check_metric(PieceReport const& r, Ratio lambda) {
  if (lambda <= Ratio(0) || lambda > Ratio(1)) {
    throw InvalidArgument("lambda must lie in (0, 1]");
  }
  MetricResult m;
  m.lambda = lambda;
  m.holds = true;
  for (auto const& bp : r.per_base) {
    // piece < lambda * length
    if (Ratio(static_cast<long long>(bp.piece)) >=
        lambda * static_cast<long long>(bp.length)) {
      m.holds = false;
      m.first = bp.first;
      m.second = bp.second;
      return m;
    }
  }
  return m;
}

MetricResult check_metric(SymmetrizedSet const& s, Ratio lambda) {
  auto const r = max_pieces(s);
  auto m = check_metric(r, lambda);
  if (!m.holds) {
    std::size_t const len = r.per_base[m.first.base].piece;
    m.piece = s.member_word(m.first).subword(0, len);
  }
  return m;
}

namespace {

struct Match {
  std::size_t length = 0;
  std::size_t position = 0;
  std::size_t cls = 0;
};

std::optional<Match> best_match(std::vector<std::int32_t> const& ranks,
                                SymmetrizedSet const& s) {
  std::optional<Match> best;
  auto const& classes = s.length_classes();
  for (std::size_t c = 0; c < classes.size(); ++c) {
    auto const n = classes[c].length;
    auto const ms = classes[c].automaton->matching_statistics_reversed(ranks);
    for (std::size_t p = 0; p < ms.size(); ++p) {
      std::size_t const L = std::min<std::size_t>(ms[p], n);
      if (2 * L <= n) {
        continue;
      }
      if (!best || L > best->length ||
          (L == best->length && p < best->position)) {
        best = Match{L, p, c};
      }
    }
  }
  return best;
}

// Lexicographically least member of the class with prefix u.
Member least_member_with_prefix(SymmetrizedSet const& s,
                                SymmetrizedSet::LengthClass const& cls,
                                std::vector<std::int32_t> const& u) {
  auto const it = std::lower_bound(
      cls.sorted.begin(), cls.sorted.end(), u,
      [&](Member m, std::vector<std::int32_t> const& key) {
        for (std::size_t i = 0; i < key.size(); ++i) {
          auto const a = static_cast<std::int32_t>(letter_rank(s.letter(m, i)));
          if (a != key[i]) {
            return a < key[i];
          }
        }
        return false;
      });
  if (it == cls.sorted.end()) {
    throw Error("internal: matched subword not found among members");
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (static_cast<std::int32_t>(letter_rank(s.letter(*it, i))) != u[i]) {
      throw Error("internal: matched subword not found among members");
    }
  }
  return *it;
}

}  // namespace

DehnResult dehn_reduce(Word const& w, SymmetrizedSet const& s) {
  DehnResult out;
  Word cur = cyclic_core(w);
  while (!cur.empty()) {
    auto const ranks = ranks_of(cur);
    auto const m = best_match(ranks, s);
    if (!m) {
      break;
    }
    auto const& cls = s.length_classes()[m->cls];
    std::vector<std::int32_t> const u(ranks.begin() + m->position,
                                      ranks.begin() + m->position + m->length);
    Member const r = least_member_with_prefix(s, cls, u);
    std::vector<Letter> next(cur.begin(), cur.begin() + m->position);
    // u v = r = 1, so u = v^-1.
    for (std::size_t i = cls.length; i-- > m->length;) {
      next.push_back(inverse(s.letter(r, i)));
    }
    next.insert(next.end(), cur.begin() + m->position + m->length, cur.end());
    cur = cyclic_core(reduce(next));
    ++out.replacements;
  }
  out.word = cur;
  return out;
}

std::size_t longest_half_relator_subword(Word const& w,
                                         SymmetrizedSet const& s) {
  auto const m = best_match(ranks_of(w), s);
  return m ? m->length : 0;
}

Word r_family(std::size_t s, Word const& x, Word const& y) {
  std::vector<Letter> out;
  for (std::size_t i = 1; i <= s; ++i) {
    Word const xi = x.pow(static_cast<long long>(i));
    Word const yi = y.pow(static_cast<long long>(s + i));
    out.insert(out.end(), xi.begin(), xi.end());
    out.insert(out.end(), yi.begin(), yi.end());
  }
  return reduce(out);
}

std::size_t r_family_length(std::size_t s) { return s * s + s * (s + 1); }

std::vector<std::pair<int, long long>> w_family_pattern(std::size_t k,
                                                        std::size_t n) {
  if (k < 1 || n < 1) {
    throw InvalidArgument("W family needs k, n >= 1");
  }
  std::vector<std::pair<int, long long>> out;
  for (std::size_t i = 0; i < n; ++i) {
    auto const e = static_cast<long long>(k + i);
    out.emplace_back(0, e);
    out.emplace_back(1, e);
  }
  return out;
}

Word w_family(std::size_t k, std::size_t n, Word const& x, Word const& y) {
  std::vector<Letter> out;
  for (auto [which, e] : w_family_pattern(k, n)) {
    Word const p = (which == 0 ? x : y).pow(e);
    out.insert(out.end(), p.begin(), p.end());
  }
  return reduce(out);
}

std::size_t w_family_length(std::size_t k, std::size_t n) {
  return 2 * n * k + n * (n - 1);
}

bool HypSpecGenReport::pass() const {
  bool all = metric_1_8 && r_ab_irreducible;
  for (auto const& [name, ok] : relators_trivial) {
    all = all && ok;
  }
  return all;
}

std::vector<Word> hyp_spec_gen_relators(std::size_t s) {
  Word const a = Word::generator(0);
  Word const b = Word::generator(1);
  return {r_family(s, a.inverse(), b.inverse()), r_family(s, b, a),
          r_family(s, b.inverse(), a.inverse())};
}

HypSpecGenReport verify_hyp_spec_gen(std::size_t s) {
  if (s < 1) {
    throw InvalidArgument("scale must be at least 1");
  }
  HypSpecGenReport rep;
  rep.scale = s;
  auto const rels = hyp_spec_gen_relators(s);
  rep.relator_length = rels.front().size();
  SymmetrizedSet const set(rels);
  rep.closure_size = set.size();
  rep.pieces = max_pieces(set);
  rep.metric_1_8 = check_metric(rep.pieces, Ratio(1, 8)).holds;
  rep.metric_1_6 = check_metric(rep.pieces, Ratio(1, 6)).holds;
  char const* names[] = {"R(a^-1,b^-1)", "R(b,a)", "R(b^-1,a^-1)"};
  for (std::size_t i = 0; i < rels.size(); ++i) {
    rep.relators_trivial.emplace_back(names[i],
                                      dehn_reduce(rels[i], set).word.empty());
  }
  Word const rab = r_family(s, Word::generator(0), Word::generator(1));
  auto const d = dehn_reduce(rab, set);
  rep.r_ab_reduced_length = d.word.size();
  rep.r_ab_irreducible = rep.metric_1_6 && !d.word.empty();
  return rep;
}

}  // namespace concc
