#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "concc/error.hpp"
#include "concc/hnn.hpp"
#include "concc/presentation.hpp"
#include "concc/relpath.hpp"
#include "concc/report.hpp"
#include "concc/small_cancellation.hpp"
#include "concc/tower_builder.hpp"

namespace concc::cli {

namespace {

using Clock = std::chrono::steady_clock;

char const* status_name(Verdict3 v) {
  switch (v) {
    case Verdict3::yes:
      return "pass";
    case Verdict3::no:
      return "fail";
    case Verdict3::unknown:
      return "unknown";
  }
  return "unknown";
}

Verdict3 pass_if(bool ok) { return ok ? Verdict3::yes : Verdict3::no; }

class Report {
 public:
  explicit Report(std::string command) : start_(Clock::now()) {
    j_["format"] = "concc-report";
    j_["version"] = 1;
    j_["command"] = std::move(command);
    j_["status"] = "pass";
    j_["checks"] = Json::array();
  }

  Json& operator[](char const* key) { return j_[key]; }

  void check(std::string name, Verdict3 v, std::string detail = {}) {
    Json c;
    c["check"] = std::move(name);
    c["status"] = status_name(v);
    if (!detail.empty()) {
      c["detail"] = std::move(detail);
    }
    j_["checks"].push_back(std::move(c));
  }

  void timing(std::string const& name, Clock::time_point since) {
    timings_[name] =
        std::chrono::duration<double, std::milli>(Clock::now() - since).count();
  }

  Json finish() {
    bool fail = false;
    bool unknown = false;
    for (auto const& c : j_["checks"]) {
      fail = fail || c["status"] == "fail";
      unknown = unknown || c["status"] == "unknown";
    }
    j_["status"] = fail ? "fail" : unknown ? "unknown" : "pass";
    timing("total_ms", start_);
    j_["timings"] = timings_;
    return std::move(j_);
  }

 private:
  Json j_;
  Json timings_ = Json::object();
  Clock::time_point start_;
};

Alphabet ab() { return Alphabet({"a", "b"}); }

Json member_json(Member m) { return {{"base", m.base}, {"offset", m.offset}}; }

Json pieces_json(PieceReport const& p, SymmetrizedSet const& s,
                 Alphabet const& A) {
  Json j;
  j["max_piece_length"] = p.max_piece_length;
  j["max_ratio"] = std::to_string(p.max_ratio.numerator()) + "/" +
                   std::to_string(p.max_ratio.denominator());
  if (p.max_piece_length > 0) {
    j["witness"] = {{"piece", format_word(p.piece, A)},
                    {"first", member_json(p.first)},
                    {"second", member_json(p.second)}};
  }
  j["min_relator_length"] = [&] {
    std::size_t m = SIZE_MAX;
    for (std::size_t b = 0; b < s.bases().size(); ++b) {
      m = std::min(m, s.base_length(b));
    }
    return m;
  }();
  return j;
}

// The witness names a common prefix of two distinct members.
bool piece_witness_holds(Json const& w, SymmetrizedSet const& s,
                         Alphabet const& A) {
  Word const piece = parse_word(w.at("piece").get<std::string>(), A);
  Member const m1{w.at("first").at("base").get<std::size_t>(),
                  w.at("first").at("offset").get<std::size_t>()};
  Member const m2{w.at("second").at("base").get<std::size_t>(),
                  w.at("second").at("offset").get<std::size_t>()};
  if (m1 == m2 || m1.base >= s.bases().size() ||
      m2.base >= s.bases().size() || m1.offset >= s.base_length(m1.base) ||
      m2.offset >= s.base_length(m2.base)) {
    return false;
  }
  Word const w1 = s.member_word(m1);
  Word const w2 = s.member_word(m2);
  if (w1 == w2 || piece.size() > w1.size() || piece.size() > w2.size()) {
    return false;
  }
  return w1.subword(0, piece.size()) == piece &&
         w2.subword(0, piece.size()) == piece;
}

// ---------------------------------------------------------------- commands

Json hyp_spec_gen_body(std::size_t scale, Report& r) {
  auto const t0 = Clock::now();
  auto const rep = concc::verify_hyp_spec_gen(scale);
  r.timing("verify_ms", t0);
  auto const rels = hyp_spec_gen_relators(scale);
  SymmetrizedSet const set(rels);
  auto const A = ab();
  Json res;
  res["scale"] = scale;
  res["relator_length"] = rep.relator_length;
  res["closure_size"] = rep.closure_size;
  res["pieces"] = pieces_json(rep.pieces, set, A);
  res["metric_1_8"] = rep.metric_1_8;
  res["metric_1_6"] = rep.metric_1_6;
  Json triv = Json::object();
  for (auto const& [name, ok] : rep.relators_trivial) {
    triv[name] = ok;
  }
  res["relators_dehn_trivial"] = triv;
  res["r_ab_reduced_length"] = rep.r_ab_reduced_length;
  res["r_ab_irreducible"] = rep.r_ab_irreducible;
  Json cert;
  auto rs = Json::array();
  for (auto const& w : rels) {
    rs.push_back(format_word(w, A));
  }
  cert["relators"] = rs;
  r["results"] = res;
  r["certificate"] = cert;
  auto const& p = rep.pieces;
  r.check("C'(1/8)", pass_if(rep.metric_1_8),
          "max piece " + std::to_string(p.max_piece_length) + ", ratio " +
              res["pieces"]["max_ratio"].get<std::string>());
  for (auto const& [name, ok] : rep.relators_trivial) {
    r.check(name + " Dehn-reduces to 1", pass_if(ok));
  }
  r.check("R(a,b) Dehn-irreducible", pass_if(rep.r_ab_irreducible),
          "reduced length " + std::to_string(rep.r_ab_reduced_length));
  return res;
}

Json tower_checks(TowerBuild const& b, Json const& tower_json, Report& r) {
  std::size_t attached = 0;
  std::size_t verified = 0;
  std::set<std::size_t> classes;
  for (auto const& s : b.stages) {
    if (!s.skipped) {
      ++attached;
      verified += s.verified ? 1 : 0;
    }
    classes.insert(s.class_index);
  }
  Json res;
  res["stages"] = b.stages.size();
  res["attached"] = attached;
  res["skipped"] = b.stages.size() - attached;
  res["classes_used"] = classes.size();
  res["halted"] = b.halted;
  if (b.halted) {
    r.check("build completed", Verdict3::unknown, b.halt_reason);
  }
  r.check("stage relations re-verify", pass_if(verified == attached),
          std::to_string(verified) + "/" + std::to_string(attached));
  if (b.config.mode == TowerMode::ncc) {
    r.check("classes used <= n-1",
            pass_if(classes.size() + 1 <= b.config.classes),
            std::to_string(classes.size()) + " nonidentity classes");
    bool const ind = b.independence && b.independence->ok;
    r.check("independence certificate", pass_if(ind),
            ind ? std::to_string(b.independence->steps.size()) + " steps"
                : (b.independence ? b.independence->failure : "missing"));
  } else {
    bool const qc = tower_json.at("quotient_check").at("consistent");
    r.check("quotient_check", pass_if(qc));
    Quotient const q(b.config.base, *b.config.quotient);
    auto const t = b.config.base.alphabet.find("t");
    if (t) {
      auto const it = q.image(Word::generator(*t));
      auto const iti = q.image(Word::generator(*t, -1));
      std::string const a = format_image(it, b.config.base.alphabet);
      std::string const c = format_image(iti, b.config.base.alphabet);
      res["image_t"] = a;
      res["image_t_inverse"] = c;
      r.check("images of t and t^-1 distinct", pass_if(a != c),
              a + " vs " + c);
    }
  }
  auto const rv = reverify_tower(tower_json);
  r.check("reverify", pass_if(rv.ok()), rv.failure());
  return res;
}

Json certificate_pair(Quotient const& q, Word const& u, Word const& v,
                      std::string const& label, Report& r) {
  auto const& A = q.presentation().alphabet;
  auto const cert = conjugacy_obstruction(q, u, v);
  if (!cert) {
    r.check(label, Verdict3::unknown, "quotient is inconclusive");
    return nullptr;
  }
  bool const ok = verify_certificate(*cert, q.presentation());
  r.check(label, pass_if(ok), cert->reason);
  return certificate_to_json(*cert, A);
}

void britton_check(Tower const& tower, std::string const& lhs,
                   std::string const& rhs, Report& r, Json& res) {
  Word const u = parse_tower_word(lhs, tower);
  Word const v = parse_tower_word(rhs, tower);
  Verdict3 const e = tower.equal(u, v);
  res[lhs + " = " + rhs] = to_string(e);
  r.check("Britton: " + lhs + " = " + rhs, e);
}

Word parse_in(std::string const& text, FinitePresentation const& p) {
  return parse_word(text, p.alphabet);
}

std::string const klein_text = "< a, t | t a t^-1 a >";
std::string const bs12_text = "< a, t | t a t^-1 = a^2 >";

}  // namespace

Json verify_hyp_spec_gen(std::size_t scale) {
  Report r("verify hyp-spec-gen --scale " + std::to_string(scale));
  hyp_spec_gen_body(scale, r);
  return r.finish();
}

Json tower_build(std::string const& mode, std::size_t classes,
                 std::size_t stages, long long bound, bool gadget) {
  std::string cmd = "tower build --mode " + mode + " --stages " +
                    std::to_string(stages) + " --bound " +
                    std::to_string(bound);
  TowerConfig cfg;
  if (mode == "ncc") {
    cmd += " --classes " + std::to_string(classes);
    if (gadget) {
      cmd += " --gadget";
    }
    cfg = make_ncc_config(classes, stages, gadget);
  } else if (mode == "coset") {
    cfg = make_klein_mod3_config(stages);
  } else {
    throw InvalidArgument("unknown mode " + mode);
  }
  cfg.bound = bound;
  Report r(cmd + " --enum shortlex");
  auto const t0 = Clock::now();
  auto const b = build_tower(cfg);
  r.timing("build_ms", t0);
  Json const tj = tower_to_json(b);
  auto const t1 = Clock::now();
  r["results"] = tower_checks(b, tj, r);
  r.timing("checks_ms", t1);
  r["certificate"] = tj;
  return r.finish();
}

Json tower_verify(Json const& file) {
  Json const& tower =
      file.value("format", "") == "concc-report" ? file.at("certificate") : file;
  Report r("tower verify");
  auto const rv = reverify_tower(tower);
  for (auto const& c : rv.checks) {
    r.check(c.name, c.status, c.detail);
  }
  return r.finish();
}

Json check_klein_bottle() {
  Report r("check klein-bottle");
  auto const p = parse_presentation(klein_text);
  Quotient const q(p, kill_generators(p.alphabet, {"a"}));
  Json res;
  res["presentation"] = klein_text;
  Json certs = Json::array();
  certs.push_back(certificate_pair(q, parse_in("t", p), parse_in("t^-1", p),
                                   "t not conjugate to t^-1", r));
  auto const tower = Tower::from_presentation(p);
  Json br = Json::object();
  britton_check(tower, "t a t^-1 a", "1", r, br);
  res["britton"] = br;
  r["results"] = res;
  r["certificate"] = {{"presentation", klein_text}, {"certificates", certs}};
  return r.finish();
}

Json check_bs12() {
  Report r("check bs12");
  auto const p = parse_presentation(bs12_text);
  Quotient const q(p, kill_generators(p.alphabet, {"a"}));
  Json res;
  res["presentation"] = bs12_text;
  Json certs = Json::array();
  std::vector<std::string> const powers = {"t^2", "t^4", "t^8"};
  for (std::size_t i = 0; i < powers.size(); ++i) {
    for (std::size_t j = i + 1; j < powers.size(); ++j) {
      certs.push_back(certificate_pair(
          q, parse_in(powers[i], p), parse_in(powers[j], p),
          powers[i] + " not conjugate to " + powers[j], r));
    }
  }
  auto const tower = Tower::from_presentation(p);
  Json br = Json::object();
  britton_check(tower, "t a t^-1", "a^2", r, br);
  britton_check(tower, "t^-1 a^2 t", "a", r, br);
  res["britton"] = br;
  r["results"] = res;
  r["certificate"] = {{"presentation", bs12_text}, {"certificates", certs}};
  return r.finish();
}

Json relpaths_audit(std::uint64_t seed, std::size_t instances) {
  Report r("relpaths audit --seed " + std::to_string(seed) + " --instances " +
           std::to_string(instances));
  r["seed"] = seed;
  auto const ctx = FreeProductCtx::mixed();
  Json res;
  auto const t0 = Clock::now();
  auto const tw = audit_trivial_words(ctx, seed, instances);
  r.timing("trivial_words_ms", t0);
  res["trivial_words"] = {{"instances", tw.instances},
                          {"components", tw.components},
                          {"isolated_nonidentity", tw.isolated_nonidentity},
                          {"rejected", tw.rejected}};
  r.check("trivial words: no isolated nonidentity components",
          pass_if(tw.isolated_nonidentity == 0),
          std::to_string(tw.instances) + " words, " +
              std::to_string(tw.components) + " components");
  std::size_t const reg = std::max<std::size_t>(1, instances / 10);
  Json regs = Json::array();
  auto const t1 = Clock::now();
  for (std::size_t C = 0; C <= 3; ++C) {
    auto const a = audit_regularity(ctx, seed + C + 1, reg, C);
    regs.push_back({{"C", C},
                    {"seed", a.seed},
                    {"instances", a.instances},
                    {"components", a.components},
                    {"irregular", a.irregular},
                    {"max_irregular_per_path", a.max_irregular_per_path},
                    {"part_a_failures", a.part_a_failures},
                    {"part_b_failures", a.part_b_failures},
                    {"pairing_violations", a.pairing_violations},
                    {"rejected", a.rejected}});
    std::string const tag = "regularity C=" + std::to_string(C);
    if (C <= 1) {
      r.check(tag + ": every component regular",
              pass_if(a.irregular == 0 && a.part_a_failures == 0),
              std::to_string(a.instances) + " cycles");
    } else {
      r.check(tag + ": at most 4C irregular components",
              pass_if(a.part_b_failures == 0),
              "max " + std::to_string(a.max_irregular_per_path));
    }
    r.check(tag + ": pairing", pass_if(a.pairing_violations == 0));
  }
  r.timing("regularity_ms", t1);
  res["regularity"] = regs;
  auto const nb = audit_no_backtracking(ctx, seed + 100, reg);
  res["no_backtracking"] = {{"seed", nb.seed},
                            {"instances", nb.instances},
                            {"connected_pairs", nb.connected_pairs}};
  r.check("W-words are without backtracking", pass_if(nb.connected_pairs == 0));

  auto const model = FreeProductCtx::model();
  std::size_t hyperbolic = 0;
  for (long long k1 = 1; k1 <= 10; ++k1) {
    for (long long k2 = 1; k2 <= 10; ++k2) {
      NormalForm g = model.letter(0, Word::generator(0, k1));
      g = model.multiply(g, model.x(0));
      g = model.multiply(g, model.letter(0, Word::generator(0, k2)));
      g = model.multiply(g, model.x(1));
      auto const v = is_hyperbolic(g, model);
      hyperbolic += v.hyperbolic && v.infinite_order.value_or(false) ? 1 : 0;
    }
  }
  res["hyperbolic_sweep"] = {{"elements", 100}, {"hyperbolic", hyperbolic}};
  r.check("a^k1 x1 a^k2 x2 hyperbolic of infinite order, 1 <= k1,k2 <= 10",
          pass_if(hyperbolic == 100));
  r["results"] = res;
  return r.finish();
}

Json smallcanc_pieces(std::string const& presentation, std::size_t scale) {
  Report r(presentation.empty()
               ? "smallcanc pieces --scale " + std::to_string(scale)
               : "smallcanc pieces --presentation \"" + presentation + "\"");
  FinitePresentation p;
  if (presentation.empty()) {
    p.alphabet = ab();
    p.relators = hyp_spec_gen_relators(scale);
  } else {
    p = parse_presentation(presentation);
  }
  auto const t0 = Clock::now();
  SymmetrizedSet const set(p.relators);
  auto const pieces = max_pieces(set);
  r.timing("pieces_ms", t0);
  Json res;
  res["closure_size"] = set.size();
  res["pieces"] = pieces_json(pieces, set, p.alphabet);
  res["metric_1_6"] = check_metric(pieces, Ratio(1, 6)).holds;
  res["metric_1_8"] = check_metric(pieces, Ratio(1, 8)).holds;
  r["results"] = res;
  r["certificate"] = {{"presentation", format_presentation(p)}};
  if (pieces.max_piece_length > 0) {
    r.check("piece witness", pass_if(piece_witness_holds(
                                 res["pieces"]["witness"], set, p.alphabet)));
  }
  return r.finish();
}

Json reverify(Json const& file) {
  auto const format = file.value("format", "");
  if (format == "concc-tower") {
    return tower_verify(file);
  }
  if (format != "concc-report") {
    throw InvalidArgument("unrecognised file format");
  }
  if (file.value("version", 0) != 1) {
    throw InvalidArgument("unsupported report version");
  }
  std::string const cmd = file.at("command").get<std::string>();
  Report r("reverify");
  r["of"] = cmd;
  auto const claimed = file.at("status").get<std::string>();
  auto require = [&](std::string const& name, bool ok,
                     std::string const& detail = {}) {
    r.check(name, pass_if(ok), detail);
  };
  if (cmd.rfind("verify hyp-spec-gen", 0) == 0) {
    auto const scale = file.at("results").at("scale").get<std::size_t>();
    auto const rels = hyp_spec_gen_relators(scale);
    auto const A = ab();
    auto const& fr = file.at("certificate").at("relators");
    bool same = fr.size() == rels.size();
    for (std::size_t i = 0; same && i < rels.size(); ++i) {
      same = parse_word(fr[i].get<std::string>(), A) == rels[i];
    }
    require("relators match the scale", same);
    SymmetrizedSet const set(rels);
    auto const& pj = file.at("results").at("pieces");
    if (pj.contains("witness")) {
      require("piece witness", piece_witness_holds(pj.at("witness"), set, A));
    }
    Report fresh("replay");
    Json const again = hyp_spec_gen_body(scale, fresh);
    require("results replay", again == file.at("results"));
  } else if (cmd == "check klein-bottle" || cmd == "check bs12") {
    auto const p = parse_presentation(
        file.at("certificate").at("presentation").get<std::string>());
    std::size_t n = 0;
    for (auto const& c : file.at("certificate").at("certificates")) {
      if (c.is_null()) {
        continue;
      }
      auto const cert = certificate_from_json(c, p.alphabet);
      require("certificate " + std::to_string(++n),
              verify_certificate(cert, p),
              format_word(cert.first, p.alphabet) + " vs " +
                  format_word(cert.second, p.alphabet));
    }
    auto const tower = Tower::from_presentation(p);
    for (auto const& [eq, verdict] : file.at("results").at("britton").items()) {
      auto const at = eq.find(" = ");
      Verdict3 const v = tower.equal(parse_tower_word(eq.substr(0, at), tower),
                                     parse_tower_word(eq.substr(at + 3), tower));
      require("Britton: " + eq, to_string(v) == verdict.get<std::string>() &&
                                    v == Verdict3::yes);
    }
  } else if (cmd.rfind("tower build", 0) == 0) {
    auto const rv = reverify_tower(file.at("certificate"));
    for (auto const& c : rv.checks) {
      r.check(c.name, c.status, c.detail);
    }
  } else if (cmd.rfind("relpaths audit", 0) == 0) {
    auto const seed = file.at("seed").get<std::uint64_t>();
    auto const n = file.at("results")
                       .at("trivial_words")
                       .at("instances")
                       .get<std::size_t>();
    Json const again = relpaths_audit(seed, n);
    require("results replay", again.at("results") == file.at("results"));
  } else if (cmd.rfind("smallcanc pieces", 0) == 0) {
    auto const p = parse_presentation(
        file.at("certificate").at("presentation").get<std::string>());
    SymmetrizedSet const set(p.relators);
    auto const& pj = file.at("results").at("pieces");
    if (pj.contains("witness")) {
      require("piece witness",
              piece_witness_holds(pj.at("witness"), set, p.alphabet));
    }
    auto const again = max_pieces(set);
    require("max piece replay", again.max_piece_length ==
                                    pj.at("max_piece_length").get<std::size_t>());
  } else {
    throw InvalidArgument("no replay for command: " + cmd);
  }
  require("claimed status consistent", claimed != "pass" || [&] {
    for (auto const& c : file.at("checks")) {
      if (c.at("status") != "pass") {
        return false;
      }
    }
    return true;
  }());
  return r.finish();
}

int exit_code(Json const& report) {
  auto const s = report.at("status").get<std::string>();
  return s == "pass" ? exit_pass : s == "fail" ? exit_fail : exit_unknown;
}

Json without_timings(Json report) {
  report.erase("timings");
  return report;
}

int run(std::vector<std::string> const& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"concc: conjugacy-class towers, small cancellation and "
               "free-product path audits"};
  app.fallthrough();
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("--out", out_path, "Write the report to this file");

  auto* verify = app.add_subcommand("verify", "Verification suites");
  verify->require_subcommand(1);
  auto* hyp = verify->add_subcommand(
      "hyp-spec-gen", "C'(1/8) and Dehn checks for the R-family relators");
  std::size_t scale = 100;
  hyp->add_option("--scale", scale, "Family scale s")->check(CLI::Range(1, 100000));

  auto* tower = app.add_subcommand("tower", "Conjugating towers");
  tower->require_subcommand(1);
  auto* build = tower->add_subcommand("build", "Build a tower prefix");
  std::size_t classes = 3;
  std::size_t stages = 50;
  std::string enumeration = "shortlex";
  std::string mode = "ncc";
  long long bound = Tower::default_bound;
  bool seedless = false;
  bool gadget = false;
  build->add_option("--classes", classes, "Number n of conjugacy classes")
      ->check(CLI::Range(2, 64));
  build->add_option("--stages", stages, "Enumerated elements to process")
      ->check(CLI::Range(0, 1000000));
  build->add_option("--enum", enumeration, "Enumeration order")
      ->check(CLI::IsMember({"shortlex"}));
  build->add_option("--mode", mode, "ncc or coset (Klein bottle, mod 3)")
      ->check(CLI::IsMember({"ncc", "coset"}));
  build->add_option("--bound", bound, "Membership search bound")
      ->check(CLI::Range(1LL, 1000000LL));
  build->add_flag("--seedless", seedless, "Deterministic build (the default)");
  build->add_flag("--gadget", gadget, "Add the a_i, b_i gadget generators");
  auto* tverify = tower->add_subcommand("verify", "Re-verify a tower file");
  std::string in_path;
  tverify->add_option("file", in_path, "Tower or report file")->required();

  auto* check = app.add_subcommand("check", "Worked examples");
  check->require_subcommand(1);
  auto* klein = check->add_subcommand("klein-bottle", "t is not conjugate to t^-1");
  auto* bs12 = check->add_subcommand("bs12", "BS(1,2) powers of t");

  auto* relpaths = app.add_subcommand("relpaths", "Free-product path audits");
  relpaths->require_subcommand(1);
  auto* audit = relpaths->add_subcommand("audit", "Randomized component audits");
  std::uint64_t seed = 1;
  std::size_t instances = 10000;
  audit->add_option("--seed", seed, "64-bit seed");
  audit->add_option("--instances", instances, "Random trivial words")
      ->check(CLI::Range(1, 10000000));

  auto* smallcanc = app.add_subcommand("smallcanc", "Small cancellation tools");
  smallcanc->require_subcommand(1);
  auto* pieces = smallcanc->add_subcommand("pieces", "Maximal pieces");
  std::string pres;
  std::size_t pscale = 10;
  pieces->add_option("--presentation", pres, "Presentation text");
  pieces->add_option("--scale", pscale, "R-family scale when no presentation")
      ->check(CLI::Range(1, 100000));

  auto* rv = app.add_subcommand("reverify", "Replay the certificates in a file");
  rv->add_option("file", in_path, "Report or tower file")->required();

  std::vector<char const*> argv{"concc"};
  for (auto const& a : args) {
    argv.push_back(a.c_str());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (CLI::CallForHelp const& e) {
    out << app.help();
    return exit_pass;
  } catch (CLI::CallForAllHelp const& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_pass;
  } catch (CLI::ParseError const& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  }

  auto load = [&](std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw std::runtime_error("cannot read " + path);
    }
    return Json::parse(in);
  };

  Json report;
  try {
    if (hyp->parsed()) {
      report = verify_hyp_spec_gen(scale);
    } else if (build->parsed()) {
      report = tower_build(mode, classes, stages, bound, gadget);
    } else if (tverify->parsed()) {
      report = tower_verify(load(in_path));
    } else if (klein->parsed()) {
      report = check_klein_bottle();
    } else if (bs12->parsed()) {
      report = check_bs12();
    } else if (audit->parsed()) {
      report = relpaths_audit(seed, instances);
    } else if (pieces->parsed()) {
      report = smallcanc_pieces(pres, pscale);
    } else if (rv->parsed()) {
      report = reverify(load(in_path));
    }
  } catch (ParseError const& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (std::exception const& e) {
    err << "error: " << e.what() << "\n";
    return exit_fail;
  }

  std::string const text = report.dump(2) + "\n";
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(out_path);
    if (!f || !(f << text)) {
      err << "error: cannot write " << out_path << "\n";
      return exit_fail;
    }
    out << report.at("status").get<std::string>() << ": " << out_path << "\n";
  }
  return exit_code(report);
}

}  // namespace concc::cli
