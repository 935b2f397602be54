#pragma once

// Finite prefixes of conjugating towers.
//
// ncc mode: every enumerated nonidentity element g of a free base is made
// conjugate to a class representative x_j by a new stable letter,
// t g t^-1 = x_j, where j is the class of an element g is already
// commensurable with, or 1 for a fresh element.
//
// coset mode: the base is an HNN presentation (e.g. the Klein bottle group)
// with a quotient; each enumerated element g gets t g t^-1 = z where z is the
// representative of the coset of g.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "concc/hnn.hpp"
#include "concc/presentation.hpp"
#include "concc/word.hpp"
#include "json.hpp"

namespace concc {

enum class TowerMode { ncc, coset };

struct TowerConfig {
  TowerMode mode = TowerMode::ncc;
  std::size_t classes = 3;  // n; ncc only
  std::size_t stages = 50;  // number of enumerated elements processed
  bool skip_rule = true;
  bool gadget = false;  // add a_i, b_i and the extended families
  long long bound = Tower::default_bound;

  // Filled by make_ncc_config / make_coset_config.
  FinitePresentation base;
  std::vector<Word> representatives;        // ncc: x_1..x_{n-1}; coset: Z
  std::vector<std::vector<Word>> families;  // ncc: X_1..X_{n-1}
  std::vector<Word> priority;               // enumerated before shortlex
  std::optional<QuotientSpec> quotient;     // coset only
};

// Base F(x1..x_{n-1}) (plus a1..a_{n-1}, b1..b_{n-1} with `gadget`).
TowerConfig make_ncc_config(std::size_t classes, std::size_t stages,
                            bool gadget = false, bool skip_rule = true);
// Coset mode over `base` (an HNN presentation). Empty `representatives`
// selects the default set: image words for kill specs (kernel coset
// represented by the first killed generator), and for cyclic specs the
// first shortlex element of each residue.
TowerConfig make_coset_config(FinitePresentation base, QuotientSpec spec,
                              std::size_t stages,
                              std::vector<Word> representatives = {});
// Klein bottle group with phi(a) = 0, phi(t) = 1 mod 3.
TowerConfig make_klein_mod3_config(std::size_t stages);

struct StageRecord {
  std::size_t index = 0;  // 1-based enumeration position
  Word element;
  std::size_t class_index = 0;  // 1-based
  Word target;                  // representative
  bool skipped = false;
  std::string reason;
  std::optional<std::size_t> stable_letter;
  // witness * element * witness^-1 == target in the tower.
  Word witness;
  bool verified = false;
};

struct BaseFact {
  Word first;
  Word second;
  std::size_t first_class = 0;
  std::size_t second_class = 0;
  Word first_key;
  Word second_key;
};

struct StageDerivation {
  std::size_t stage = 0;  // 1-based stable letter position
  std::string stable_letter;
  Word source;
  Word target;
  std::size_t source_class = 0;
  std::size_t target_class = 0;
  std::string rule;  // "same-class" or "fresh"
};

struct IndependenceCertificate {
  std::vector<BaseFact> base_facts;
  std::vector<StageDerivation> steps;
  bool ok = false;
  std::string failure;
};

struct TowerBuild {
  TowerConfig config;
  Tower tower;
  std::vector<Word> representatives;
  std::vector<StageRecord> stages;
  std::optional<IndependenceCertificate> independence;  // ncc mode
  bool halted = false;
  std::string halt_reason;

  // Skip-rule bookkeeping: conjugacy key -> indices into `known`.
  struct Known {
    Word element;
    Word witness;
    std::size_t class_index = 0;
  };
  std::vector<Known> known;
  std::map<Word, std::vector<std::size_t>> by_conjugacy_key;
};

// The elements build_tower processes, in order.
std::vector<Word> enumerate_elements(TowerConfig const& cfg, Tower const& base,
                                     std::size_t count);
Tower base_tower(TowerConfig const& cfg);
std::vector<Word> resolve_representatives(TowerConfig const& cfg,
                                          Tower const& base);

TowerBuild build_tower(TowerConfig const& cfg);

// A verified witness W with W g W^-1 equal to the representative of g's
// class, when g is covered by the processed stages; nothing otherwise.
std::optional<Word> conjugator_witness(TowerBuild const& build, Word const& g);

// Recomputed from the tower's associations alone (ncc mode). Reports the
// first stage whose hypothesis check fails.
IndependenceCertificate independence_certificate(
    Tower const& tower, std::vector<std::vector<Word>> const& families,
    std::vector<Word> const& representatives);

struct SimplicityWitness {
  Word x;
  Word y;
  Word g1;
  std::optional<Word> g2;
  bool verified = false;
};

// x = g1 y g1^-1 (g2 y g2^-1), for nonidentity base elements x, y of a
// gadget tower. Nothing when the needed conjugators were not enumerated.
std::optional<SimplicityWitness> bounded_simple_witness(TowerBuild const& build,
                                                        Word const& x,
                                                        Word const& y);

struct QuotientCheckEntry {
  std::size_t stage = 0;
  std::string relation;
  std::string source_image;
  std::string target_image;
  bool ok = false;
};

struct QuotientCheckReport {
  std::vector<QuotientCheckEntry> entries;
  bool consistent = false;
};

// Checks every association from position `first_stage` on maps to a valid
// equation in the quotient (stable letters map to the identity).
QuotientCheckReport quotient_check(Tower const& tower, std::size_t first_stage,
                                   Quotient const& quotient);

nlohmann::ordered_json config_to_json(TowerConfig const& cfg);
TowerConfig config_from_json(nlohmann::ordered_json const& j);
nlohmann::ordered_json certificate_to_json(IndependenceCertificate const& c,
                                           Alphabet const& alphabet);
nlohmann::ordered_json tower_to_json(TowerBuild const& build);

std::string mode_name(TowerMode m);

}  // namespace concc
