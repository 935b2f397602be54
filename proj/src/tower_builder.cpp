#include "concc/tower_builder.hpp"

#include <algorithm>
#include <set>

#include "concc/error.hpp"

namespace concc {

std::string mode_name(TowerMode m) {
  return m == TowerMode::ncc ? "ncc" : "coset";
}

TowerConfig make_ncc_config(std::size_t classes, std::size_t stages,
                            bool gadget, bool skip_rule) {
  if (classes < 2) {
    throw InvalidArgument("need at least 2 classes");
  }
  TowerConfig cfg;
  cfg.mode = TowerMode::ncc;
  cfg.classes = classes;
  cfg.stages = stages;
  cfg.gadget = gadget;
  cfg.skip_rule = skip_rule;
  std::size_t const r = classes - 1;
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= r; ++i) {
    names.push_back("x" + std::to_string(i));
  }
  if (gadget) {
    for (std::size_t i = 1; i <= r; ++i) {
      names.push_back("a" + std::to_string(i));
    }
    for (std::size_t i = 1; i <= r; ++i) {
      names.push_back("b" + std::to_string(i));
    }
  }
  cfg.base.alphabet = Alphabet(names);
  for (std::size_t i = 0; i < r; ++i) {
    Word const x = Word::generator(i);
    cfg.representatives.push_back(x);
    std::vector<Word> fam{x};
    if (gadget) {
      Word const a = Word::generator(r + i);
      fam.push_back(a);
      fam.push_back(a.inverse());
      Word const b = Word::generator(2 * r + i);
      for (std::size_t j = 0; j < r; ++j) {
        if (j != i) {
          Word const aj = Word::generator(r + j);
          fam.push_back(aj * b * aj.inverse() * b.inverse());
        }
      }
    }
    cfg.families.push_back(std::move(fam));
  }
  if (gadget) {
    for (auto const& fam : cfg.families) {
      for (auto const& w : fam) {
        cfg.priority.push_back(w);
      }
    }
  }
  return cfg;
}

TowerConfig make_coset_config(FinitePresentation base, QuotientSpec spec,
                              std::size_t stages,
                              std::vector<Word> representatives) {
  TowerConfig cfg;
  cfg.mode = TowerMode::coset;
  cfg.stages = stages;
  Quotient const q(base, spec);  // validates
  cfg.base = std::move(base);
  cfg.quotient = std::move(spec);
  cfg.representatives = std::move(representatives);
  return cfg;
}

TowerConfig make_klein_mod3_config(std::size_t stages) {
  auto base = parse_presentation("< a , t | t a t^-1 a >");
  return make_coset_config(base, CyclicQuotientSpec{3, {0, 1}}, stages);
}

Tower base_tower(TowerConfig const& cfg) {
  if (cfg.mode == TowerMode::ncc) {
    if (!cfg.base.relators.empty()) {
      throw InvalidArgument("ncc mode needs a free base");
    }
    return Tower(cfg.base.alphabet, cfg.bound);
  }
  return Tower::from_presentation(cfg.base, cfg.bound);
}

namespace {

bool definitely_equal(Tower const& t, Word const& u, Word const& v) {
  auto const r = t.equal(u, v);
  if (r == Verdict3::unknown) {
    throw BoundExhausted("equality of " + format_word(u, t.alphabet()) +
                         " and " + format_word(v, t.alphabet()) +
                         " undecided");
  }
  return r == Verdict3::yes;
}

// Distinct nontrivial elements of the base tower in shortlex order.
class ElementStream {
 public:
  ElementStream(Tower const& base, std::size_t rank)
      : base_(base), en_(rank) {}

  Word next() {
    while (true) {
      Word w = en_.next();
      if (base_.associations().empty()) {
        return w;
      }
      if (definitely_equal(base_, w, Word())) {
        continue;
      }
      bool dup = false;
      for (auto const& s : seen_) {
        if (definitely_equal(base_, s, w)) {
          dup = true;
          break;
        }
      }
      if (dup) {
        continue;
      }
      seen_.push_back(w);
      return w;
    }
  }

 private:
  Tower const& base_;
  ShortlexEnumerator en_;
  std::vector<Word> seen_;
};

struct CosetReps {
  Quotient quotient;
  std::vector<Word> reps;
  bool dynamic = false;  // kill spec without explicit reps

  // Index into reps, appending a new representative if dynamic.
  std::size_t rep_for(Word const& g, Alphabet const& alphabet) {
    auto const img = quotient.image(g);
    for (std::size_t i = 0; i < reps.size(); ++i) {
      if (quotient.image(reps[i]) == img) {
        return i;
      }
    }
    if (!dynamic) {
      throw InvalidArgument("no representative for the coset of " +
                            format_word(g, alphabet));
    }
    auto const& kill = std::get<KillGenerators>(quotient.spec());
    Word z = std::get<Word>(img);
    if (z.empty()) {
      z = Word::generator(kill.generators.front());
    }
    reps.push_back(z);
    return reps.size() - 1;
  }
};

CosetReps coset_reps(TowerConfig const& cfg, Tower const& base) {
  CosetReps r{Quotient(cfg.base, *cfg.quotient), cfg.representatives, false};
  if (!r.reps.empty()) {
    for (auto const& z : r.reps) {
      if (base.is_trivial(z) != Verdict3::no) {
        throw InvalidArgument("representatives must be nonidentity");
      }
    }
    return r;
  }
  if (auto const* k = std::get_if<KillGenerators>(&*cfg.quotient)) {
    if (k->generators.empty()) {
      throw InvalidArgument("kill spec needs at least one generator");
    }
    r.dynamic = true;
    return r;
  }
  auto const& c = std::get<CyclicQuotientSpec>(*cfg.quotient);
  std::vector<std::optional<Word>> by_residue(c.modulus);
  std::size_t found = 0;
  ElementStream s(base, cfg.base.alphabet.size());
  for (std::size_t tries = 0; found < by_residue.size() && tries < 10000;
       ++tries) {
    Word const w = s.next();
    auto const res = std::get<long long>(r.quotient.image(w));
    if (!by_residue[res]) {
      by_residue[res] = w;
      ++found;
    }
  }
  for (auto const& w : by_residue) {
    if (!w) {
      throw InvalidArgument("some residue has no short representative");
    }
    r.reps.push_back(*w);
  }
  return r;
}

std::string stage_name(Tower const& t, std::size_t& counter) {
  while (true) {
    std::string n = "t" + std::to_string(++counter);
    if (!t.alphabet().find(n)) {
      return n;
    }
  }
}

std::optional<Word> lookup_known(TowerBuild const& b, Word const& g,
                                 std::size_t* class_out) {
  auto const it = b.by_conjugacy_key.find(conjugacy_key(g));
  if (it == b.by_conjugacy_key.end()) {
    return std::nullopt;
  }
  auto const& e = b.known[it->second.front()];
  Word const p = cyclic_reduce(e.element).conjugator;
  Word const q = cyclic_reduce(g).conjugator;
  if (class_out) {
    *class_out = e.class_index;
  }
  return e.witness * p * q.inverse();
}

void remember(TowerBuild& b, Word const& g, Word const& w, std::size_t cls) {
  b.by_conjugacy_key[conjugacy_key(g)].push_back(b.known.size());
  b.known.push_back({g, w, cls});
}

}  // namespace

std::vector<Word> enumerate_elements(TowerConfig const& cfg, Tower const& base,
                                     std::size_t count) {
  std::vector<Word> out;
  std::set<Word> taken;
  for (auto const& w : cfg.priority) {
    if (out.size() == count) {
      return out;
    }
    if (!w.empty() && taken.insert(w).second) {
      out.push_back(w);
    }
  }
  ElementStream s(base, cfg.base.alphabet.size());
  while (out.size() < count) {
    Word w = s.next();
    if (!taken.count(w)) {
      out.push_back(std::move(w));
    }
  }
  return out;
}

std::vector<Word> resolve_representatives(TowerConfig const& cfg,
                                          Tower const& base) {
  if (cfg.mode == TowerMode::ncc) {
    return cfg.representatives;
  }
  return coset_reps(cfg, base).reps;
}

TowerBuild build_tower(TowerConfig const& cfg) {
  TowerBuild b;
  b.config = cfg;
  b.tower = base_tower(cfg);
  Tower const base = b.tower;
  std::size_t counter = 0;

  std::map<Word, std::size_t> key_class;
  std::optional<CosetReps> coset;
  if (cfg.mode == TowerMode::ncc) {
    if (cfg.representatives.size() + 1 != cfg.classes ||
        cfg.families.size() != cfg.representatives.size()) {
      throw InvalidArgument("need one representative and family per class");
    }
    for (std::size_t i = 0; i < cfg.families.size(); ++i) {
      for (auto const& w : cfg.families[i]) {
        auto const [it, fresh] = key_class.emplace(commensurability_key(w), i + 1);
        if (!fresh && it->second != i + 1) {
          throw InvalidArgument("families are not independent in the base");
        }
      }
    }
    b.representatives = cfg.representatives;
    for (std::size_t j = 0; j < b.representatives.size(); ++j) {
      remember(b, b.representatives[j], Word(), j + 1);
    }
  } else {
    coset = coset_reps(cfg, base);
  }

  std::vector<Word> elements;
  try {
    elements = enumerate_elements(cfg, base, cfg.stages);
  } catch (BoundExhausted const& e) {
    b.halted = true;
    b.halt_reason = e.what();
  }

  for (std::size_t k = 0; k < elements.size(); ++k) {
    Word const& g = elements[k];
    StageRecord rec;
    rec.index = k + 1;
    rec.element = g;
    try {
      std::optional<Word> witness;
      if (cfg.mode == TowerMode::ncc) {
        Word const key = commensurability_key(g);
        auto const it = key_class.find(key);
        rec.class_index = it == key_class.end() ? 1 : it->second;
        if (it == key_class.end()) {
          key_class.emplace(key, 1);
        }
        rec.target = b.representatives[rec.class_index - 1];
        if (cfg.skip_rule) {
          std::size_t cls = 0;
          witness = lookup_known(b, g, &cls);
          if (witness && cls != rec.class_index) {
            throw InvalidArgument("conjugacy record disagrees with class");
          }
          if (witness) {
            rec.reason = g == rec.target
                             ? "is the representative"
                             : "conjugate to the representative by a recorded "
                               "witness";
          }
        }
      } else {
        std::size_t const i = coset->rep_for(g, b.tower.alphabet());
        rec.class_index = i + 1;
        rec.target = coset->reps[i];
        if (cfg.skip_rule && definitely_equal(b.tower, g, rec.target)) {
          witness = Word();
          rec.reason = "is the representative";
        }
      }
      if (witness) {
        rec.skipped = true;
        rec.witness = *witness;
      } else {
        std::size_t const t =
            b.tower.add_stage(stage_name(b.tower, counter), g, rec.target);
        rec.stable_letter = t;
        rec.witness = Word::generator(t);
      }
      rec.verified = b.tower.verify_conjugator(g, rec.witness, rec.target);
      if (!rec.verified) {
        throw InvalidArgument("stage witness failed verification");
      }
      if (cfg.mode == TowerMode::ncc) {
        remember(b, g, rec.witness, rec.class_index);
      } else {
        b.known.push_back({g, rec.witness, rec.class_index});
      }
    } catch (BoundExhausted const& e) {
      b.halted = true;
      b.halt_reason = "stage " + std::to_string(k + 1) + " (" +
                      format_word(g, b.tower.alphabet()) + "): " + e.what();
      b.stages.push_back(std::move(rec));
      break;
    }
    b.stages.push_back(std::move(rec));
  }
  if (coset) {
    b.representatives = coset->reps;
  }
  if (cfg.mode == TowerMode::ncc) {
    b.independence = independence_certificate(b.tower, cfg.families,
                                              cfg.representatives);
  }
  return b;
}

namespace {

struct Classified {
  Word witness;
  std::size_t class_index = 0;
};

std::optional<Classified> classify(TowerBuild const& b, Word const& g) {
  if (g.empty()) {
    return std::nullopt;
  }
  auto check = [&](Word const& w, std::size_t cls) -> std::optional<Classified> {
    try {
      if (cls >= 1 && cls <= b.representatives.size() &&
          b.tower.verify_conjugator(g, w, b.representatives[cls - 1])) {
        return Classified{w, cls};
      }
    } catch (BoundExhausted const&) {
    }
    return std::nullopt;
  };
  for (auto const& k : b.known) {
    if (k.element == g) {
      return check(k.witness, k.class_index);
    }
  }
  if (b.config.mode == TowerMode::ncc) {
    std::size_t cls = 0;
    if (auto w = lookup_known(b, g, &cls)) {
      return check(*w, cls);
    }
  } else {
    for (auto const& k : b.known) {
      if (b.tower.equal(k.element, g) == Verdict3::yes) {
        return check(k.witness, k.class_index);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Word> conjugator_witness(TowerBuild const& build,
                                       Word const& g) {
  auto const c = classify(build, g);
  if (!c) {
    return std::nullopt;
  }
  return c->witness;
}

IndependenceCertificate independence_certificate(
    Tower const& tower, std::vector<std::vector<Word>> const& families,
    std::vector<Word> const& representatives) {
  IndependenceCertificate cert;
  auto const& A = tower.alphabet();
  std::map<Word, std::size_t> key_class;
  for (std::size_t i = 0; i < families.size(); ++i) {
    for (auto const& w : families[i]) {
      key_class.emplace(commensurability_key(w), i + 1);
    }
  }
  for (std::size_t i = 0; i < families.size(); ++i) {
    for (std::size_t j = i + 1; j < families.size(); ++j) {
      for (auto const& u : families[i]) {
        for (auto const& v : families[j]) {
          BaseFact f{u, v, i + 1, j + 1, commensurability_key(u),
                     commensurability_key(v)};
          if (f.first_key == f.second_key) {
            cert.failure = "base elements " + format_word(u, A) + " and " +
                           format_word(v, A) + " are commensurable";
            return cert;
          }
          cert.base_facts.push_back(std::move(f));
        }
      }
    }
  }
  for (std::size_t i = 0; i < representatives.size(); ++i) {
    auto const it = key_class.find(commensurability_key(representatives[i]));
    if (it == key_class.end() || it->second != i + 1) {
      cert.failure = "representative " + format_word(representatives[i], A) +
                     " is not in its family's class";
      return cert;
    }
  }
  auto const& assoc = tower.associations();
  for (std::size_t s = 0; s < assoc.size(); ++s) {
    auto const& a = assoc[s];
    std::string const name = A.name(a.stable_letter);
    std::string const where =
        "stage " + std::to_string(s + 1) + " (" + name + ")";
    if (tower.level(a.source) != 0 || tower.level(a.target) != 0) {
      cert.failure = where + ": associated elements are not base elements";
      return cert;
    }
    StageDerivation d;
    d.stage = s + 1;
    d.stable_letter = name;
    d.source = a.source;
    d.target = a.target;
    auto const kt = key_class.find(commensurability_key(a.target));
    if (kt == key_class.end()) {
      cert.failure = where + ": target " + format_word(a.target, A) +
                     " belongs to no class";
      return cert;
    }
    d.target_class = kt->second;
    Word const ks = commensurability_key(a.source);
    auto const it = key_class.find(ks);
    if (it != key_class.end()) {
      d.source_class = it->second;
      if (d.source_class != d.target_class) {
        cert.failure = where + ": associates class " +
                       std::to_string(d.source_class) + " with class " +
                       std::to_string(d.target_class);
        return cert;
      }
      d.rule = "same-class";
    } else {
      d.source_class = d.target_class;
      d.rule = "fresh";
      key_class.emplace(ks, d.target_class);
    }
    cert.steps.push_back(std::move(d));
  }
  cert.ok = true;
  return cert;
}

std::optional<SimplicityWitness> bounded_simple_witness(TowerBuild const& build,
                                                        Word const& x,
                                                        Word const& y) {
  Tower const& T = build.tower;
  if (x.empty() || y.empty()) {
    return std::nullopt;
  }
  auto finish = [&](SimplicityWitness w) -> std::optional<SimplicityWitness> {
    Word prod = w.g1 * y * w.g1.inverse();
    if (w.g2) {
      prod = prod * *w.g2 * y * w.g2->inverse();
    }
    w.verified = T.equal(prod, x) == Verdict3::yes;
    return w;
  };
  if (T.equal(x, y) == Verdict3::yes) {
    return finish({x, y, Word(), std::nullopt});
  }
  auto const cx = classify(build, x);
  auto const cy = classify(build, y);
  if (!cx || !cy) {
    return std::nullopt;
  }
  if (cx->class_index == cy->class_index) {
    return finish({x, y, cx->witness.inverse() * cy->witness, std::nullopt});
  }
  if (!build.config.gadget) {
    return std::nullopt;
  }
  std::size_t const r = build.config.classes - 1;
  std::size_t const i = cx->class_index - 1;
  std::size_t const j = cy->class_index - 1;
  Word const aj = Word::generator(r + j);
  Word const bi = Word::generator(2 * r + i);
  Word const c = aj * bi * aj.inverse() * bi.inverse();
  auto const wa = classify(build, aj);
  auto const wai = classify(build, aj.inverse());
  auto const wc = classify(build, c);
  if (!wa || !wai || !wc) {
    return std::nullopt;
  }
  Word const P = wa->witness.inverse() * cy->witness;
  Word const Q = wai->witness.inverse() * cy->witness;
  Word const V = cx->witness.inverse() * wc->witness;
  return finish({x, y, V * P, V * bi * Q});
}

QuotientCheckReport quotient_check(Tower const& tower, std::size_t first_stage,
                                   Quotient const& quotient) {
  QuotientCheckReport rep;
  rep.consistent = true;
  auto const& A = tower.alphabet();
  auto const& assoc = tower.associations();
  for (std::size_t s = first_stage; s < assoc.size(); ++s) {
    auto const& a = assoc[s];
    QuotientCheckEntry e;
    e.stage = s - first_stage + 1;
    Word const t = Word::generator(a.stable_letter);
    e.relation = format_word(t * a.source * t.inverse(), A) + " = " +
                 format_word(a.target, A);
    auto const is = quotient.image(a.source);
    auto const it = quotient.image(a.target);
    e.source_image = format_image(is, A);
    e.target_image = format_image(it, A);
    e.ok = is == it;
    rep.consistent = rep.consistent && e.ok;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

// JSON

nlohmann::ordered_json config_to_json(TowerConfig const& cfg) {
  nlohmann::ordered_json j;
  j["mode"] = mode_name(cfg.mode);
  if (cfg.mode == TowerMode::ncc) {
    j["classes"] = cfg.classes;
  }
  j["stages"] = cfg.stages;
  j["enumeration"] = "shortlex";
  j["skip_rule"] = cfg.skip_rule;
  if (cfg.mode == TowerMode::ncc) {
    j["gadget"] = cfg.gadget;
  }
  j["bound"] = cfg.bound;
  if (cfg.mode == TowerMode::coset) {
    j["base"] = format_presentation(cfg.base);
    j["quotient"] = spec_to_json(*cfg.quotient, cfg.base.alphabet);
    auto reps = nlohmann::ordered_json::array();
    for (auto const& z : cfg.representatives) {
      reps.push_back(format_word(z, cfg.base.alphabet));
    }
    j["representatives"] = reps;
  }
  return j;
}

TowerConfig config_from_json(nlohmann::ordered_json const& j) {
  auto const mode = j.at("mode").get<std::string>();
  if (j.contains("enumeration") && j.at("enumeration") != "shortlex") {
    throw InvalidArgument("unsupported enumeration");
  }
  TowerConfig cfg;
  auto const stages = j.at("stages").get<std::size_t>();
  auto const skip = j.value("skip_rule", true);
  if (mode == "ncc") {
    cfg = make_ncc_config(j.at("classes").get<std::size_t>(), stages,
                          j.value("gadget", false), skip);
  } else if (mode == "coset") {
    auto base = parse_presentation(j.at("base").get<std::string>());
    auto spec = spec_from_json(j.at("quotient"), base.alphabet);
    std::vector<Word> reps;
    for (auto const& z : j.at("representatives")) {
      reps.push_back(parse_word(z.get<std::string>(), base.alphabet));
    }
    cfg = make_coset_config(std::move(base), std::move(spec), stages,
                            std::move(reps));
    cfg.skip_rule = skip;
  } else {
    throw InvalidArgument("unknown tower mode '" + mode + "'");
  }
  cfg.bound = j.value("bound", Tower::default_bound);
  return cfg;
}

nlohmann::ordered_json certificate_to_json(IndependenceCertificate const& c,
                                           Alphabet const& A) {
  nlohmann::ordered_json j;
  auto facts = nlohmann::ordered_json::array();
  for (auto const& f : c.base_facts) {
    facts.push_back({{"first", format_word(f.first, A)},
                     {"second", format_word(f.second, A)},
                     {"classes", {f.first_class, f.second_class}},
                     {"keys",
                      {format_word(f.first_key, A),
                       format_word(f.second_key, A)}}});
  }
  j["base_facts"] = facts;
  auto steps = nlohmann::ordered_json::array();
  for (auto const& s : c.steps) {
    nlohmann::ordered_json e;
    e["stage"] = s.stage;
    e["stable_letter"] = s.stable_letter;
    e["source"] = format_word(s.source, A);
    e["target"] = format_word(s.target, A);
    e["source_class"] = s.source_class;
    e["target_class"] = s.target_class;
    e["rule"] = s.rule;
    steps.push_back(std::move(e));
  }
  j["steps"] = steps;
  j["ok"] = c.ok;
  if (!c.ok) {
    j["failure"] = c.failure;
  }
  return j;
}

nlohmann::ordered_json tower_to_json(TowerBuild const& b) {
  auto const& A = b.tower.alphabet();
  nlohmann::ordered_json j;
  j["format"] = "concc-tower";
  j["version"] = 1;
  j["config"] = config_to_json(b.config);
  auto reps = nlohmann::ordered_json::array();
  for (auto const& z : b.representatives) {
    reps.push_back(format_word(z, A));
  }
  j["representatives"] = reps;
  std::size_t const first = b.tower.associations().size() -
                            static_cast<std::size_t>(std::count_if(
                                b.stages.begin(), b.stages.end(),
                                [](auto const& s) { return !s.skipped; }));
  auto letters = nlohmann::ordered_json::array();
  auto const& assoc = b.tower.associations();
  for (std::size_t s = first; s < assoc.size(); ++s) {
    letters.push_back({{"letter", A.name(assoc[s].stable_letter)},
                       {"source", format_word(assoc[s].source, A)},
                       {"target", format_word(assoc[s].target, A)}});
  }
  j["stable_letters"] = letters;
  auto stages = nlohmann::ordered_json::array();
  for (auto const& s : b.stages) {
    nlohmann::ordered_json e;
    e["index"] = s.index;
    e["element"] = format_word(s.element, A);
    e["class"] = s.class_index;
    e["target"] = format_word(s.target, A);
    e["skipped"] = s.skipped;
    if (s.skipped) {
      e["reason"] = s.reason;
    }
    e["stable_letter"] =
        s.stable_letter ? nlohmann::ordered_json(A.name(*s.stable_letter))
                        : nlohmann::ordered_json(nullptr);
    e["witness"] = format_word(s.witness, A);
    e["verified"] = s.verified;
    stages.push_back(std::move(e));
  }
  j["stages"] = stages;
  if (b.independence) {
    j["independence"] = certificate_to_json(*b.independence, A);
  }
  if (b.config.mode == TowerMode::coset) {
    auto const q = quotient_check(b.tower, first,
                                  Quotient(b.config.base, *b.config.quotient));
    nlohmann::ordered_json qc;
    qc["consistent"] = q.consistent;
    auto entries = nlohmann::ordered_json::array();
    for (auto const& e : q.entries) {
      entries.push_back({{"stage", e.stage},
                         {"relation", e.relation},
                         {"images", {e.source_image, e.target_image}},
                         {"ok", e.ok}});
    }
    qc["entries"] = entries;
    j["quotient_check"] = qc;
  }
  j["halted"] = b.halted;
  if (b.halted) {
    j["halt_reason"] = b.halt_reason;
  }
  return j;
}

}  // namespace concc
