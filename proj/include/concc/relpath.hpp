#pragma once

// Paths over free products G = F(X) * (*_lambda H_lambda): normal forms,
// components, connectivity through cosets, W-words, hyperbolicity, and
// randomized audits of the component lemmas.
//
// Factor elements are Words over the factor's own alphabet; each factor
// decides equality (free group, Z_m, Z^r, or a word-problem oracle such as
// the Klein bottle group backed by the HNN engine).

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "concc/hnn.hpp"
#include "concc/word.hpp"

namespace concc {

class Factor {
 public:
  enum class Kind { free_group, cyclic, free_abelian, oracle };

  static Factor free_group(std::string label, Alphabet alphabet);
  static Factor cyclic(std::string label, long long order,
                       std::string generator = "a");
  static Factor free_abelian(std::string label,
                             std::vector<std::string> generators);
  static Factor oracle(std::string label, Tower tower);
  // < a, tau | tau a tau^-1 a >
  static Factor klein(std::string label);

  std::string const& label() const noexcept { return label_; }
  Kind kind() const noexcept { return kind_; }
  Alphabet const& alphabet() const noexcept { return alphabet_; }
  long long order() const noexcept { return order_; }
  bool torsion_free() const noexcept { return kind_ != Kind::cyclic; }

  // Canonical form where one exists (the oracle uses Britton reduction).
  Word normalize(Word const& w) const;
  // Throws BoundExhausted when an oracle cannot decide.
  bool is_identity(Word const& w) const;
  bool equal(Word const& u, Word const& v) const;
  // Conjugacy inside the factor; nothing when undecidable here (oracle).
  std::optional<bool> conjugate(Word const& u, Word const& v) const;

  Word random_element(std::mt19937_64& rng, std::size_t max_length = 3) const;

 private:
  Factor() = default;
  std::string label_;
  Kind kind_ = Kind::free_group;
  Alphabet alphabet_;
  long long order_ = 0;
  std::shared_ptr<Tower const> tower_;
};

inline constexpr int free_part = -1;

struct Syllable {
  int factor = free_part;  // index into the factors, or free_part for F(X)
  Word element;
};

// Alternating syllables, consecutive ones from distinct factors, none
// trivial.
using NormalForm = std::vector<Syllable>;

class FreeProductCtx {
 public:
  FreeProductCtx(Alphabet free_alphabet, std::vector<Factor> factors);

  // H_1 = <a> infinite cyclic, X = {x1, x2}.
  static FreeProductCtx model();
  // X = {x1, x2}; A = Z, B = Z^2, F = F(f, g). Used by the random audits.
  static FreeProductCtx mixed();

  Alphabet const& free_alphabet() const noexcept { return free_; }
  std::vector<Factor> const& factors() const noexcept { return factors_; }
  Factor const& factor(int i) const { return factors_.at(i); }
  // Throws InvalidArgument("unknown factor ...").
  int factor_index(std::string_view label) const;

  void append(NormalForm& g, Syllable s) const;
  NormalForm multiply(NormalForm const& u, NormalForm const& v) const;
  NormalForm inverse(NormalForm const& g) const;
  NormalForm power(NormalForm const& g, long long e) const;
  bool equal(NormalForm const& u, NormalForm const& v) const;
  bool is_identity(NormalForm const& g) const { return g.empty(); }
  bool in_factor(NormalForm const& g, int factor) const;

  NormalForm letter(int factor, Word element) const;
  NormalForm x(std::size_t generator, int sign = 1) const;

  std::string format(NormalForm const& g) const;

 private:
  Alphabet free_;
  std::vector<Factor> factors_;
};

struct PathLetter {
  int factor = free_part;  // free_part: a single X letter
  Word element;
};

struct SyllablePath {
  std::vector<PathLetter> letters;
  NormalForm base;
};

// Throws InvalidArgument on an identity factor letter, an unknown factor,
// a multi-letter X letter, or a maximal same-factor run whose product is
// the identity.
SyllablePath make_path(std::vector<PathLetter> letters,
                       FreeProductCtx const& ctx, NormalForm base = {});
// Text form: X letters `x1`, `x1^-1` (`x^k` expands to |k| letters) and
// factor letters `[label: word]`.
SyllablePath parse_path(std::string_view text, FreeProductCtx const& ctx);
std::string format_path(SyllablePath const& p, FreeProductCtx const& ctx);

NormalForm evaluate(std::vector<PathLetter> const& letters,
                    FreeProductCtx const& ctx);
bool is_cycle(SyllablePath const& p, FreeProductCtx const& ctx);
// Vertices v_0 .. v_n with v_0 = base.
std::vector<NormalForm> vertices(SyllablePath const& p,
                                 FreeProductCtx const& ctx);

struct Component {
  int factor = 0;
  std::size_t start = 0;  // letter positions [start, end)
  std::size_t end = 0;
  Word label;
};

std::vector<Component> components(SyllablePath const& p,
                                  FreeProductCtx const& ctx);

// Two components are connected iff they belong to the same factor and
// their vertices lie in one coset g H_lambda.
bool connected(Component const& a, NormalForm const& a_vertex,
               Component const& b, NormalForm const& b_vertex,
               FreeProductCtx const& ctx);

struct ConnectivityReport {
  std::vector<Component> components;
  std::vector<std::vector<std::size_t>> classes;
  // For each class, v_first^-1 v_i in H_lambda for every member i.
  std::vector<std::vector<Word>> coset_offsets;
  std::vector<std::size_t> isolated;
};

// Throws InvalidArgument for a non-cycle when `require_cycle`.
ConnectivityReport connectivity(SyllablePath const& p,
                                FreeProductCtx const& ctx,
                                bool require_cycle = true);

// Free-product instantiation: Omega is empty, so condition 3) reads h != 1.
bool check_W_membership(SyllablePath const& p, long long m,
                        FreeProductCtx const& ctx);

struct HyperbolicityVerdict {
  bool hyperbolic = false;
  std::optional<bool> infinite_order;  // unknown for oracle parabolics
  NormalForm cyclic_core;
  NormalForm conjugator;  // conjugator * core * conjugator^-1 == g
};

// Throws IdentityElement.
HyperbolicityVerdict is_hyperbolic(NormalForm const& g,
                                   FreeProductCtx const& ctx);

// Conjugacy of two elements; exact for hyperbolic elements, defers to the
// factor otherwise. Returns a conjugator c with c u c^-1 == v.
struct ConjugacyResult {
  std::optional<bool> conjugate;
  NormalForm conjugator;
};
ConjugacyResult conjugate(NormalForm const& u, NormalForm const& v,
                          FreeProductCtx const& ctx);

struct RegularityReport {
  std::size_t C = 0;
  std::size_t q_components = 0;
  std::size_t q2_components = 0;
  std::size_t q_irregular = 0;
  std::size_t q2_irregular = 0;
  // (i, j): component i of q connected to component j of q'.
  std::vector<std::pair<std::size_t, std::size_t>> matches;
  std::size_t pairing_violations = 0;
  bool part_a = true;  // vacuous when C >= 2
  bool part_b = true;  // vacuous when C <= 1
  bool part_c = true;
  bool consecutive = true;  // matched components form one aligned run
};

// o = r q r2 q2 must be a cycle; q and q2 must be W-words. Each subpath
// must be a valid path on its own. Components are taken in each of the four
// subpaths; a component of q (or q2) is regular
// iff it is connected to some other component of o.
RegularityReport regularity_audit(std::vector<PathLetter> const& r,
                                  std::vector<PathLetter> const& q,
                                  std::vector<PathLetter> const& r2,
                                  std::vector<PathLetter> const& q2,
                                  FreeProductCtx const& ctx);

// Random generators (seeded).
std::vector<PathLetter> random_trivial_word(FreeProductCtx const& ctx,
                                            std::mt19937_64& rng,
                                            std::size_t nodes);
std::vector<PathLetter> random_W_word(FreeProductCtx const& ctx,
                                      std::mt19937_64& rng,
                                      std::size_t h_letters);
std::vector<PathLetter> to_letters(NormalForm const& g,
                                   FreeProductCtx const& ctx);

struct TrivialWordAudit {
  std::uint64_t seed = 0;
  std::size_t instances = 0;
  std::size_t components = 0;
  std::size_t isolated_nonidentity = 0;
  std::size_t rejected = 0;
};
TrivialWordAudit audit_trivial_words(FreeProductCtx const& ctx,
                                     std::uint64_t seed,
                                     std::size_t instances);

struct RegularityAuditSummary {
  std::uint64_t seed = 0;
  std::size_t C = 0;
  std::size_t instances = 0;
  std::size_t components = 0;
  std::size_t irregular = 0;
  std::size_t max_irregular_per_path = 0;
  std::size_t part_a_failures = 0;
  std::size_t part_b_failures = 0;
  std::size_t pairing_violations = 0;
  std::size_t rejected = 0;
};
RegularityAuditSummary audit_regularity(FreeProductCtx const& ctx,
                                        std::uint64_t seed,
                                        std::size_t instances, std::size_t C);

struct NoBacktrackingAudit {
  std::uint64_t seed = 0;
  std::size_t instances = 0;
  std::size_t connected_pairs = 0;
};
NoBacktrackingAudit audit_no_backtracking(FreeProductCtx const& ctx,
                                          std::uint64_t seed,
                                          std::size_t instances);

// a^k t a^k t^-1 and a^k u a^k u^-1.
struct ProbeEntry {
  long long k = 0;
  bool identity_verified = false;  // decomposed case
  bool commensurable_found = false;
  long long e1 = 0;  // g1^e1 ~ g2^e2 when found
  long long e2 = 0;
};

struct Decomposition {
  Word gamma;  // in H_{lambda_0}
  int xi = 1;
  Word beta;
  int epsilon = 1;
};

struct ProbeReport {
  std::optional<Decomposition> decomposition;
  std::vector<ProbeEntry> entries;
  long long exponent_bound = 6;
  bool all_verified = false;  // decomposed case: every k verified
  bool none_found = false;    // unrelated case: nothing within bounds
};

// `a` lies in factor `lambda0`; t and u are elements outside it. With a
// decomposition u = gamma t^xi beta (beta a beta^-1 = a^eps and
// gamma^-1 a gamma = a^eps, both checked) the identity
// a^k u a^k u^-1 = y (a^k t a^k t^-1)^e y^-1 is verified for each k.
// Otherwise g1^e1 ~ g2^e2 is searched for 1 <= |e1|, |e2| <= bound.
ProbeReport commensuration_probe(int lambda0, Word const& a,
                                 NormalForm const& t, NormalForm const& u,
                                 long long k_min, long long k_max,
                                 FreeProductCtx const& ctx,
                                 std::optional<Decomposition> decomposition,
                                 long long exponent_bound = 6);

}  // namespace concc
