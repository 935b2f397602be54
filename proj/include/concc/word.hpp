#pragma once

// Free-group words: free and cyclic reduction, conjugacy, primitive roots and
// commensurability. Everything here is exact; no search bounds are involved.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace concc {

// A letter is a signed generator index: +(g+1) stands for g, -(g+1) for g^-1.
using Letter = std::int32_t;

constexpr Letter make_letter(std::size_t generator, int sign = 1) {
  auto const v = static_cast<Letter>(generator + 1);
  return sign < 0 ? -v : v;
}
constexpr std::size_t generator_of(Letter l) {
  return static_cast<std::size_t>(l < 0 ? -l : l) - 1;
}
constexpr int sign_of(Letter l) { return l < 0 ? -1 : 1; }
constexpr Letter inverse(Letter l) { return -l; }

// Total order on letters used by every canonical form in the library:
// generators in alphabet order, and within a generator +1 before -1.
constexpr std::uint32_t letter_rank(Letter l) {
  return static_cast<std::uint32_t>(2 * generator_of(l) + (l < 0 ? 1 : 0));
}
constexpr Letter letter_from_rank(std::uint32_t rank) {
  return make_letter(rank / 2, (rank & 1U) ? -1 : 1);
}

class Alphabet {
 public:
  Alphabet() = default;
  // Throws InvalidArgument on empty, malformed or duplicate names.
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  std::string const& name(std::size_t generator) const;
  std::vector<std::string> const& names() const noexcept { return names_; }

  std::optional<std::size_t> find(std::string_view name) const;
  // Throws UnknownGenerator.
  std::size_t index(std::string_view name) const;

  std::size_t add(std::string name);

  bool operator==(Alphabet const&) const = default;

  static bool valid_name(std::string_view name);

 private:
  std::vector<std::string> names_;
};

// A freely reduced word. Construction always reduces, so two Words are equal
// as data iff they represent the same element of the free group.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);
  Word(std::initializer_list<Letter> letters);

  static Word generator(std::size_t g, long long exponent = 1);

  std::vector<Letter> const& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }

  Word inverse() const;
  Word pow(long long n) const;
  Word subword(std::size_t pos, std::size_t len) const;
  // Largest generator index + 1 (0 for the identity).
  std::size_t generator_bound() const noexcept;

  Word& operator*=(Word const& other);
  friend Word operator*(Word lhs, Word const& rhs) {
    lhs *= rhs;
    return lhs;
  }

  bool operator==(Word const&) const = default;
  // Shortlex order on letter_rank.
  std::strong_ordering operator<=>(Word const& other) const;

 private:
  struct Reduced {};
  Word(Reduced, std::vector<Letter> letters) : letters_(std::move(letters)) {}
  friend Word reduce(std::span<Letter const> raw);

  std::vector<Letter> letters_;
};

// Free reduction of an arbitrary letter sequence.
Word reduce(std::span<Letter const> raw);
// Same, validating every letter against `alphabet` (throws UnknownGenerator).
Word reduce(std::span<Letter const> raw, Alphabet const& alphabet);

// Plain lexicographic comparison by letter_rank (no length component).
std::strong_ordering lex_compare(std::span<Letter const> a,
                                 std::span<Letter const> b);

// Start index of the lexicographically least rotation.
std::size_t least_rotation(std::span<Letter const> s);

// A cyclically reduced word stored in its least rotation.
class CyclicWord {
 public:
  CyclicWord() = default;
  // Cyclically reduces and rotates `w`.
  explicit CyclicWord(Word const& w);

  Word const& word() const noexcept { return word_; }
  std::size_t size() const noexcept { return word_.size(); }
  bool empty() const noexcept { return word_.empty(); }

  bool operator==(CyclicWord const&) const = default;
  std::strong_ordering operator<=>(CyclicWord const& o) const {
    return word_ <=> o.word_;
  }

 private:
  Word word_;
};

struct CyclicReduction {
  CyclicWord core;
  // conjugator * core * conjugator^-1 == w
  Word conjugator;
};

CyclicReduction cyclic_reduce(Word const& w);

// Returns c with c * u * c^-1 == v, or nothing when u and v are not
// conjugate. Among the candidates produced by rotations the shortest is
// returned.
std::optional<Word> find_conjugator(Word const& u, Word const& v);
bool is_conjugate(Word const& u, Word const& v);

struct PrimitiveRoot {
  Word root;
  long long exponent = 0;
};

// w == root^exponent with root not a proper power. Throws IdentityElement.
PrimitiveRoot primitive_root(Word const& w);

struct CommensurabilityWitness {
  long long k = 0;
  long long l = 0;
  // conjugator * first^k * conjugator^-1 == second^l
  Word conjugator;
};

struct CommensurabilityVerdict {
  bool related = false;
  std::optional<CommensurabilityWitness> witness;
};

// Exact in free groups. Throws IdentityElement on identity input.
CommensurabilityVerdict commensurable(Word const& u, Word const& v);

// A Word that is equal for two nonidentity elements iff they are
// commensurable: the least of the cyclic forms of the primitive root and of
// its inverse. Throws IdentityElement.
Word commensurability_key(Word const& w);

// Conjugacy-class key: the cyclic form of w.
inline Word conjugacy_key(Word const& w) { return CyclicWord(w).word(); }

// Enumerates the nonidentity reduced words over `rank` generators in shortlex
// order (letter order as in letter_rank).
class ShortlexEnumerator {
 public:
  explicit ShortlexEnumerator(std::size_t rank);
  Word next();

 private:
  std::size_t rank_;
  std::vector<std::uint32_t> ranks_;
};

std::vector<Word> shortlex_words(std::size_t rank, std::size_t count);

}  // namespace concc
