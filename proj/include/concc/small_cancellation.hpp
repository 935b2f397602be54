#pragma once

// Symmetrized relator sets, pieces, the metric condition C'(lambda), Dehn's
// algorithm and the R / W word families.
//
// A symmetrized set is kept implicitly: its distinct cyclic words ("bases",
// the relators and their inverses up to rotation) and the members are all
// rotations (base, offset). Pieces are found with a suffix array over the
// doubled bases.

#include <boost/rational.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "concc/suffix_array.hpp"
#include "concc/word.hpp"

namespace concc {

using Ratio = boost::rational<long long>;

struct Member {
  std::size_t base = 0;
  std::size_t offset = 0;
  bool operator==(Member const&) const = default;
};

class SymmetrizedSet {
 public:
  // Throws IdentityElement for the identity and InvalidArgument for proper
  // powers.
  explicit SymmetrizedSet(std::vector<Word> relators);

  std::vector<Word> const& origin() const noexcept { return origin_; }
  // Cyclic words in canonical rotation, sorted.
  std::vector<Word> const& bases() const noexcept { return bases_; }
  std::size_t size() const noexcept { return size_; }
  std::size_t base_length(std::size_t b) const { return bases_[b].size(); }

  Word member_word(Member m) const;
  Letter letter(Member m, std::size_t i) const;
  // Every member, base by base. Meant for small sets.
  std::vector<Member> members() const;
  std::vector<Word> closure() const;

  // Index internals, shared with the piece and Dehn code.
  struct Index {
    std::vector<std::int32_t> text;
    std::vector<std::int32_t> sa;
    std::vector<std::int32_t> lcp;
    std::vector<std::int32_t> base_of;    // per text position, -1 = separator
    std::vector<std::int32_t> offset_of;  // per text position
  };
  Index const& index() const noexcept { return index_; }

  struct LengthClass {
    std::size_t length = 0;
    std::vector<Member> sorted;  // members of this length, lexicographic
    std::vector<std::int32_t> reversed_text;
    std::optional<SuffixAutomaton> automaton;  // over reversed_text
  };
  std::vector<LengthClass> const& length_classes() const noexcept {
    return classes_;
  }

 private:
  std::vector<Word> origin_;
  std::vector<Word> bases_;
  std::size_t size_ = 0;
  std::int32_t sigma_ = 0;
  Index index_;
  std::vector<LengthClass> classes_;
};

SymmetrizedSet symmetrize(std::vector<Word> const& relators);

struct BasePiece {
  std::size_t base = 0;
  std::size_t piece = 0;   // longest piece that is a prefix of a member
  std::size_t length = 0;  // base length
  Member first;            // the piece is a prefix of both members
  Member second;
};

struct PieceReport {
  std::size_t max_piece_length = 0;
  Word piece;
  Member first;
  Member second;
  std::vector<BasePiece> per_base;
  Ratio max_ratio{0};  // max over bases of piece / length
};

PieceReport max_pieces(SymmetrizedSet const& s);

struct MetricResult {
  bool holds = false;
  Ratio lambda{0};
  // On failure: a piece and the two members it starts, with |piece| >=
  // lambda |first|.
  std::optional<Word> piece;
  Member first;
  Member second;
};

// Throws InvalidArgument unless 0 < lambda <= 1.
MetricResult check_metric(SymmetrizedSet const& s, Ratio lambda);
MetricResult check_metric(PieceReport const& r, Ratio lambda);

struct DehnResult {
  Word word;
  std::size_t replacements = 0;
};

// Dehn's algorithm. Decides the word problem when s satisfies C'(1/6).
DehnResult dehn_reduce(Word const& w, SymmetrizedSet const& s);

// Longest subword of w that is more than half of a member; its length, or 0.
std::size_t longest_half_relator_subword(Word const& w,
                                         SymmetrizedSet const& s);

// x y^{s+1} x^2 y^{s+2} ... x^s y^{2s}
Word r_family(std::size_t s, Word const& x, Word const& y);
std::size_t r_family_length(std::size_t s);

// x^k y^k x^{k+1} y^{k+1} ... x^{k+n-1} y^{k+n-1}, as (0 = x / 1 = y,
// exponent) syllables, so any group can substitute its own x and y.
std::vector<std::pair<int, long long>> w_family_pattern(std::size_t k,
                                                        std::size_t n);
Word w_family(std::size_t k, std::size_t n, Word const& x, Word const& y);
std::size_t w_family_length(std::size_t k, std::size_t n);

struct HypSpecGenReport {
  std::size_t scale = 0;
  std::size_t relator_length = 0;
  std::size_t closure_size = 0;
  PieceReport pieces;
  bool metric_1_8 = false;
  bool metric_1_6 = false;
  std::vector<std::pair<std::string, bool>> relators_trivial;
  bool r_ab_irreducible = false;
  std::size_t r_ab_reduced_length = 0;
  bool pass() const;
};

// R_3 = {R(a^-1, b^-1), R(b, a), R(b^-1, a^-1)} over F(a, b).
std::vector<Word> hyp_spec_gen_relators(std::size_t s);
HypSpecGenReport verify_hyp_spec_gen(std::size_t s);

}  // namespace concc
