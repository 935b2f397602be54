#pragma once

// Finite presentations, the text grammar for words and presentations, and
// certified non-conjugacy through free or finite cyclic quotients.
//
// Word grammar: whitespace-separated factors `gen` or `gen^k` (k may be
// negative), or `1` for the identity, e.g. `t a t^-1 a`.
// Presentation grammar: `< gen, gen, ... | rel, rel, ... >` where a relation
// is a word or `word = word` (stored as lhs * rhs^-1).

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "concc/word.hpp"
#include "json.hpp"

namespace concc {

struct FinitePresentation {
  Alphabet alphabet;
  std::vector<Word> relators;
};

// Throws ParseError (with position) or InvalidArgument.
FinitePresentation parse_presentation(std::string_view text);
Word parse_word(std::string_view text, Alphabet const& alphabet);

std::string format_word(Word const& w, Alphabet const& alphabet);
std::string format_presentation(FinitePresentation const& p);

// Sum of the signs of the occurrences of `generator` in w.
long long exponent_sum(Word const& w, std::size_t generator);
long long exponent_sum(Word const& w, std::string_view generator,
                       Alphabet const& alphabet);

struct KillGenerators {
  std::vector<std::size_t> generators;  // sorted, unique
  bool operator==(KillGenerators const&) const = default;
};

struct CyclicQuotientSpec {
  long long modulus = 0;
  std::vector<long long> residues;  // one per generator, in [0, modulus)
  bool operator==(CyclicQuotientSpec const&) const = default;
};

using QuotientSpec = std::variant<KillGenerators, CyclicQuotientSpec>;

// Free-group word (kill spec) or residue (cyclic spec).
using QuotientImage = std::variant<Word, long long>;

// A QuotientSpec validated against a presentation. Generators beyond the
// presentation's alphabet (stable letters attached later) map to the
// identity.
class Quotient {
 public:
  // Throws InvalidArgument when some relator does not map to the identity.
  Quotient(FinitePresentation presentation, QuotientSpec spec);

  FinitePresentation const& presentation() const noexcept { return pres_; }
  QuotientSpec const& spec() const noexcept { return spec_; }

  QuotientImage image(Word const& w) const;
  // Conjugacy in the target: cyclic-word equality or residue equality.
  bool images_conjugate(QuotientImage const& a, QuotientImage const& b) const;

 private:
  FinitePresentation pres_;
  QuotientSpec spec_;
};

KillGenerators kill_generators(Alphabet const& alphabet,
                               std::vector<std::string> const& names);

struct NonConjugacyCertificate {
  Word first;
  Word second;
  QuotientSpec spec;
  QuotientImage first_image;
  QuotientImage second_image;
  std::string reason;
};

// A certificate iff the images are non-conjugate in the target; nothing
// ("inconclusive") otherwise. Never claims conjugacy.
std::optional<NonConjugacyCertificate> conjugacy_obstruction(
    Quotient const& quotient, Word const& u, Word const& v);

// Recomputes both images from scratch against `presentation`.
bool verify_certificate(NonConjugacyCertificate const& cert,
                        FinitePresentation const& presentation);

nlohmann::ordered_json spec_to_json(QuotientSpec const& spec,
                                    Alphabet const& alphabet);
QuotientSpec spec_from_json(nlohmann::ordered_json const& j,
                            Alphabet const& alphabet);
std::string format_image(QuotientImage const& img, Alphabet const& alphabet);

nlohmann::ordered_json certificate_to_json(NonConjugacyCertificate const& c,
                                           Alphabet const& alphabet);
NonConjugacyCertificate certificate_from_json(nlohmann::ordered_json const& j,
                                              Alphabet const& alphabet);

}  // namespace concc
