#pragma once

// Iterated HNN extensions of a free group with infinite cyclic associated
// subgroups, reduced with Britton's lemma.
//
// Every generator of a Tower carries a level: base generators have level 0
// and a stable letter attached by add_stage gets a level one above every
// letter seen so far. A stable letter t of level L with association
// t c t^-1 = d has c, d of level < L. Tower words are plain Words over the
// tower alphabet.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "concc/presentation.hpp"
#include "concc/word.hpp"

namespace concc {

enum class Verdict3 { yes, no, unknown };

char const* to_string(Verdict3 v);

struct CyclicAssociation {
  std::size_t stable_letter = 0;
  Word source;  // c
  Word target;  // d, with t c t^-1 = d
};

struct MembershipResult {
  Verdict3 verdict = Verdict3::no;
  long long exponent = 0;  // g == c^exponent when verdict == yes
  long long bound = 0;     // search bound used when verdict == unknown
};

class Tower {
 public:
  static constexpr long long default_bound = 64;

  Tower() = default;
  explicit Tower(Alphabet base, long long bound = default_bound);

  // Recognises relators of the form s c s^-1 d^-1 (up to rotation and
  // inversion) where the stable letter s occurs once with each sign. Other
  // generators become base generators. Throws InvalidArgument otherwise.
  static Tower from_presentation(FinitePresentation const& p,
                                 long long bound = default_bound);

  // Attaches a new stable letter at a fresh top level with t c t^-1 = d.
  // Returns its generator index.
  std::size_t add_stage(std::string name, Word const& source,
                        Word const& target);

  Alphabet const& alphabet() const noexcept { return alphabet_; }
  std::vector<CyclicAssociation> const& associations() const noexcept {
    return assoc_;
  }
  std::size_t base_rank() const noexcept;
  bool is_stable(std::size_t generator) const;
  std::size_t level(std::size_t generator) const { return level_[generator]; }
  std::size_t level(Word const& w) const;
  std::size_t top_level() const noexcept { return top_; }
  long long bound() const noexcept { return bound_; }
  void set_bound(long long b) { bound_ = b; }

  // The tower made of the base and the first `stages` associations.
  Tower prefix(std::size_t stages) const;

  // Removes every pinch. Throws BoundExhausted when a membership test in
  // an associated subgroup could not be decided.
  Word britton_reduce(Word const& w) const;
  Verdict3 is_trivial(Word const& w) const;
  // Equality in the tower group.
  Verdict3 equal(Word const& u, Word const& v) const;

  // g in <c>? Exact over the free base; bounded search above it.
  MembershipResult cyclic_membership(Word const& g, Word const& c) const;

  // w g w^-1 == target? Throws BoundExhausted if undecided.
  bool verify_conjugator(Word const& g, Word const& w,
                         Word const& target) const;

  // Letters of level >= 1 of the Britton-reduced form, in order.
  std::vector<Letter> stable_signature(Word const& w) const;

  // Independent scan of a word for a pinch at any level.
  bool has_pinch(Word const& w) const;

  FinitePresentation presentation() const;

 private:
  struct AssocData {
    Word source;
    Word target;
    std::size_t source_level = 0;
    std::size_t target_level = 0;
  };

  std::vector<Letter> reduce_at(std::vector<Letter> const& w,
                                std::size_t level) const;
  MembershipResult member_reduced(Word const& g, std::size_t g_level,
                                  Word const& c, std::size_t c_level) const;
  void compute_functionals(std::size_t level);
  AssocData const& data_of(std::size_t stable_letter) const;

  Alphabet alphabet_;
  std::vector<std::size_t> level_;
  std::vector<std::optional<std::size_t>> assoc_index_;
  std::vector<CyclicAssociation> assoc_;
  std::vector<AssocData> data_;
  // functionals_[L]: integer homomorphisms to Z of the level-L group, as
  // coefficient vectors over generators.
  std::vector<std::vector<std::vector<long long>>> functionals_;
  std::size_t top_ = 0;
  long long bound_ = default_bound;
};

// Parses a tower word; same grammar as parse_word over the tower alphabet.
Word parse_tower_word(std::string_view text, Tower const& tower);

}  // namespace concc
