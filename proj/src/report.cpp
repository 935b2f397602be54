#include "concc/report.hpp"

#include <algorithm>

#include "concc/error.hpp"
#include "concc/presentation.hpp"
#include "concc/tower_builder.hpp"

namespace concc {

bool ReverifyReport::ok() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](auto const& c) { return c.status == Verdict3::yes; });
}

std::string ReverifyReport::failure() const {
  for (auto const& c : checks) {
    if (c.status != Verdict3::yes) {
      return c.detail;
    }
  }
  return {};
}

nlohmann::ordered_json ReverifyReport::to_json() const {
  nlohmann::ordered_json j;
  j["status"] = ok() ? "pass" : "fail";
  auto arr = nlohmann::ordered_json::array();
  for (auto const& c : checks) {
    nlohmann::ordered_json e;
    e["check"] = c.name;
    e["status"] = c.status == Verdict3::yes  ? "pass"
                  : c.status == Verdict3::no ? "fail"
                                             : "unknown";
    if (!c.detail.empty()) {
      e["detail"] = c.detail;
    }
    arr.push_back(std::move(e));
  }
  j["checks"] = arr;
  return j;
}

namespace {

class Checks {
 public:
  explicit Checks(ReverifyReport& r) : r_(r) {}
  void pass(std::string name, std::string detail = {}) {
    r_.checks.push_back({std::move(name), Verdict3::yes, std::move(detail)});
  }
  void fail(std::string name, std::string detail) {
    r_.checks.push_back({std::move(name), Verdict3::no, std::move(detail)});
  }

 private:
  ReverifyReport& r_;
};

std::string stage_tag(std::size_t index) {
  return "stage " + std::to_string(index);
}

}  // namespace

ReverifyReport reverify_tower(nlohmann::ordered_json const& file) {
  if (!file.is_object() || file.value("format", "") != "concc-tower") {
    throw InvalidArgument("not a tower certificate file");
  }
  if (file.value("version", 0) != 1) {
    throw InvalidArgument("unsupported tower file version " +
                          file.at("version").dump());
  }
  ReverifyReport rep;
  Checks out(rep);
  TowerConfig cfg;
  try {
    cfg = config_from_json(file.at("config"));
  } catch (nlohmann::json::exception const& e) {
    throw InvalidArgument(std::string("malformed config: ") + e.what());
  }
  Tower tower = base_tower(cfg);
  std::size_t const first = tower.associations().size();
  auto const reps = resolve_representatives(cfg, tower);

  try {
    // Representatives.
    auto const& freps = file.at("representatives");
    bool same = freps.size() == reps.size();
    for (std::size_t i = 0; same && i < reps.size(); ++i) {
      same = parse_tower_word(freps[i].get<std::string>(), tower) == reps[i];
    }
    if (same) {
      out.pass("representatives");
    } else {
      out.fail("representatives", "representatives differ from the config");
    }

    // Enumeration.
    auto const& stages = file.at("stages");
    auto const elements = enumerate_elements(cfg, tower, cfg.stages);
    bool enum_ok = stages.size() == elements.size();
    std::string enum_detail = enum_ok ? "" : "stage count differs";
    for (std::size_t i = 0; enum_ok && i < elements.size(); ++i) {
      if (parse_tower_word(stages[i].at("element").get<std::string>(), tower) !=
          elements[i]) {
        enum_ok = false;
        enum_detail = stage_tag(i + 1) + ": element differs from enumeration";
      }
    }
    if (enum_ok) {
      out.pass("enumeration");
    } else {
      out.fail("enumeration", enum_detail);
    }

    // Rebuild from the stable letters.
    for (auto const& s : file.at("stable_letters")) {
      Word const c = parse_tower_word(s.at("source").get<std::string>(), tower);
      Word const d = parse_tower_word(s.at("target").get<std::string>(), tower);
      tower.add_stage(s.at("letter").get<std::string>(), c, d);
    }
    tower.set_bound(cfg.bound);

    // Stage relations and witnesses.
    std::string stage_failure;
    for (std::size_t i = 0; i < stages.size() && stage_failure.empty(); ++i) {
      auto const& st = stages[i];
      auto const index = st.at("index").get<std::size_t>();
      Word const g = parse_tower_word(st.at("element").get<std::string>(), tower);
      Word const z = parse_tower_word(st.at("target").get<std::string>(), tower);
      auto const cls = st.at("class").get<std::size_t>();
      if (cls == 0 || cls > reps.size() || z != reps[cls - 1]) {
        stage_failure = stage_tag(index) + ": target is not the class " +
                        std::to_string(cls) + " representative";
        break;
      }
      if (!st.at("stable_letter").is_null()) {
        auto const name = st.at("stable_letter").get<std::string>();
        auto const gen = tower.alphabet().find(name);
        if (!gen || !tower.is_stable(*gen)) {
          stage_failure = stage_tag(index) + ": unknown stable letter " + name;
          break;
        }
        Word const t = Word::generator(*gen);
        try {
          if (!tower.verify_conjugator(g, t, z)) {
            stage_failure = stage_tag(index) + " (" + name +
                            "): relation does not hold";
            break;
          }
        } catch (BoundExhausted const&) {
          stage_failure = stage_tag(index) + " (" + name +
                          "): relation undecided within bound";
          break;
        }
      }
      Word const w = parse_tower_word(st.at("witness").get<std::string>(), tower);
      try {
        if (!tower.verify_conjugator(g, w, z)) {
          stage_failure = stage_tag(index) +
                          ": witness does not conjugate the element to its "
                          "target";
        }
      } catch (BoundExhausted const&) {
        stage_failure = stage_tag(index) + ": witness undecided within bound";
      }
    }
    if (stage_failure.empty()) {
      out.pass("stages", std::to_string(stages.size()) + " stages");
    } else {
      out.fail("stages", stage_failure);
    }

    // Independence derivation.
    if (cfg.mode == TowerMode::ncc) {
      if (!file.contains("independence")) {
        out.fail("independence", "independence derivation missing");
      } else {
        auto const cert = independence_certificate(tower, cfg.families, reps);
        auto const& fsteps = file.at("independence").at("steps");
        std::string detail;
        if (!cert.ok) {
          detail = cert.failure;
        }
        for (std::size_t k = 0; detail.empty() && k < cert.steps.size(); ++k) {
          auto const& s = cert.steps[k];
          auto const it = std::find_if(
              fsteps.begin(), fsteps.end(),
              [&](auto const& e) { return e.at("stage") == s.stage; });
          std::string const where = "stage " + std::to_string(s.stage) + " (" +
                                    s.stable_letter + ")";
          if (it == fsteps.end()) {
            detail = "independence derivation missing step for " + where;
          } else if (it->at("rule") != s.rule ||
                     it->at("source_class") != s.source_class ||
                     it->at("target_class") != s.target_class) {
            detail = "independence derivation disagrees at " + where;
          }
        }
        if (detail.empty() && fsteps.size() != cert.steps.size()) {
          detail = "independence derivation has extra steps";
        }
        if (detail.empty()) {
          out.pass("independence",
                   std::to_string(cert.steps.size()) + " steps");
        } else {
          out.fail("independence", detail);
        }
      }
    }

    // Quotient consistency.
    if (cfg.mode == TowerMode::coset) {
      auto const q =
          quotient_check(tower, first, Quotient(cfg.base, *cfg.quotient));
      if (q.consistent) {
        out.pass("quotient_check",
                 std::to_string(q.entries.size()) + " relations");
      } else {
        std::string detail = "quotient check failed";
        for (auto const& e : q.entries) {
          if (!e.ok) {
            detail = "stage " + std::to_string(e.stage) + ": " + e.relation +
                     " is not a valid equation in the quotient";
            break;
          }
        }
        out.fail("quotient_check", detail);
      }
    }
  } catch (nlohmann::json::exception const& e) {
    throw InvalidArgument(std::string("malformed tower file: ") + e.what());
  }
  return rep;
}

}  // namespace concc
