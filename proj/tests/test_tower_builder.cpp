#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "concc/error.hpp"
#include "concc/presentation.hpp"
#include "concc/report.hpp"
#include "concc/tower_builder.hpp"

using namespace concc;

namespace {

std::string fmt(TowerBuild const& b, Word const& w) {
  return format_word(w, b.tower.alphabet());
}

}  // namespace

TEST_CASE("ncc tower, n = 3, first 50 shortlex elements") {
  auto const b = build_tower(make_ncc_config(3, 50));
  REQUIRE(b.stages.size() == 50);
  CHECK_FALSE(b.halted);
  CHECK(b.representatives.size() == 2);

  auto const& s = b.stages;
  CHECK(fmt(b, s[0].element) == "x1");
  CHECK(s[0].skipped);
  CHECK(fmt(b, s[1].element) == "x1^-1");
  CHECK_FALSE(s[1].skipped);
  CHECK(fmt(b, s[1].target) == "x1");
  CHECK(s[2].skipped);  // x2
  CHECK(fmt(b, s[4].element) == "x1 x1");

  std::size_t attached = 0;
  std::set<std::size_t> classes;
  for (auto const& st : s) {
    classes.insert(st.class_index);
    CHECK(st.verified);
    CHECK(b.tower.verify_conjugator(st.element, st.witness, st.target));
    if (!st.skipped) {
      ++attached;
      REQUIRE(st.stable_letter);
      CHECK(b.tower.verify_conjugator(
          st.element, Word::generator(*st.stable_letter), st.target));
    }
  }
  CHECK(attached == 21);
  CHECK(b.tower.associations().size() == 21);
  CHECK(classes.size() <= 2);

  REQUIRE(b.independence);
  CHECK(b.independence->ok);
  CHECK(b.independence->steps.size() == 21);
}

TEST_CASE("elements commensurable with x2 join class 2") {
  auto const b = build_tower(make_ncc_config(3, 50));
  for (auto const& st : b.stages) {
    bool const x2_like =
        commensurability_key(st.element) ==
        commensurability_key(Word::generator(1));
    if (x2_like) {
      CHECK(st.class_index == 2);
    } else {
      CHECK(st.class_index == 1);
    }
  }
}

TEST_CASE("conjugator witnesses cover processed elements") {
  auto const b = build_tower(make_ncc_config(3, 30));
  for (auto const& st : b.stages) {
    auto const w = conjugator_witness(b, st.element);
    REQUIRE(w);
    CHECK(b.tower.verify_conjugator(st.element, *w, st.target));
  }
}

TEST_CASE("builds are deterministic") {
  auto const j1 = tower_to_json(build_tower(make_ncc_config(4, 40)));
  auto const j2 = tower_to_json(build_tower(make_ncc_config(4, 40)));
  CHECK(j1 == j2);
}

TEST_CASE("independence certificate names the offending stage") {
  Tower T(Alphabet({"x1", "x2"}));
  Word const x1 = Word::generator(0);
  Word const x2 = Word::generator(1);
  T.add_stage("t1", x1.inverse(), x1);
  T.add_stage("t2", x2, x1);
  auto const cert = independence_certificate(T, {{x1}, {x2}}, {x1, x2});
  CHECK_FALSE(cert.ok);
  CHECK(cert.failure.find("stage 2 (t2)") != std::string::npos);
  CHECK(cert.failure.find("class 2 with class 1") != std::string::npos);
  CHECK(cert.steps.size() == 1);
}

TEST_CASE("coset mode on the Klein bottle group, mod 3") {
  auto const b = build_tower(make_klein_mod3_config(30));
  std::vector<std::string> reps;
  for (auto const& z : b.representatives) {
    reps.push_back(fmt(b, z));
  }
  CHECK(reps == std::vector<std::string>{"a", "t", "t^-1"});
  Quotient const q(b.config.base, *b.config.quotient);
  auto const first = b.tower.associations().size() -
                     static_cast<std::size_t>(std::count_if(
                         b.stages.begin(), b.stages.end(),
                         [](auto const& s) { return !s.skipped; }));
  CHECK(first == 1);
  auto const qc = quotient_check(b.tower, first, q);
  CHECK(qc.consistent);
  CHECK(qc.entries.size() + first == b.tower.associations().size());
  for (auto const& st : b.stages) {
    CHECK(st.verified);
    CHECK(q.images_conjugate(q.image(st.element), q.image(st.target)));
  }
  auto const t = Word::generator(1);
  CHECK(std::get<long long>(q.image(t)) == 1);
  CHECK(std::get<long long>(q.image(t.inverse())) == 2);
}

TEST_CASE("quotient check rejects an association across cosets") {
  auto const p = parse_presentation("< a, t | t a t^-1 a >");
  Quotient const q(p, CyclicQuotientSpec{3, {0, 1}});
  Tower T = Tower::from_presentation(p);
  T.add_stage("s1", Word::generator(1), Word::generator(1, -1));
  auto const qc = quotient_check(T, 1, q);
  CHECK_FALSE(qc.consistent);
}

TEST_CASE("gadget towers give two-conjugate witnesses") {
  auto const b = build_tower(make_ncc_config(3, 20, true));
  CHECK_FALSE(b.halted);
  REQUIRE(b.independence);
  CHECK(b.independence->ok);
  auto const& A = b.tower.alphabet();
  Word const a2 = parse_tower_word("a2", b.tower);
  Word const b1 = parse_tower_word("b1", b.tower);
  Word const comm = a2 * b1 * a2.inverse() * b1.inverse();
  auto const w1 = bounded_simple_witness(b, comm, a2);
  REQUIRE(w1);
  CHECK(w1->verified);
  auto const w2 =
      bounded_simple_witness(b, Word::generator(A.index("x1")),
                             Word::generator(A.index("x2")));
  REQUIRE(w2);
  CHECK(w2->verified);
  REQUIRE(w2->g2);
  Word const x = Word::generator(A.index("x1"));
  Word const y = Word::generator(A.index("x2"));
  Word const prod = w2->g1 * y * w2->g1.inverse() * *w2->g2 * y *
                    w2->g2->inverse();
  CHECK(b.tower.equal(prod, x) == Verdict3::yes);
}

TEST_CASE("config JSON round trip and reverify") {
  for (auto const& cfg : {make_ncc_config(3, 25), make_klein_mod3_config(15)}) {
    auto const j = config_to_json(cfg);
    CHECK(config_to_json(config_from_json(j)) == j);
    auto const file = tower_to_json(build_tower(cfg));
    CHECK(reverify_tower(file).ok());
  }
}

TEST_CASE("reverify detects tampering") {
  auto const file = tower_to_json(build_tower(make_ncc_config(3, 50)));

  auto bad_witness = file;
  for (auto& s : bad_witness["stages"]) {
    if (s["index"] == 10) {
      s["witness"] = "x1";
    }
  }
  auto const r1 = reverify_tower(bad_witness);
  CHECK_FALSE(r1.ok());
  CHECK(r1.failure().find("stage 10") != std::string::npos);

  auto bad_relation = file;
  bad_relation["stable_letters"][3]["target"] = "x2";
  CHECK_FALSE(reverify_tower(bad_relation).ok());

  auto truncated = file;
  auto& steps = truncated["independence"]["steps"];
  steps.erase(steps.begin() + 4);
  auto const r3 = reverify_tower(truncated);
  CHECK_FALSE(r3.ok());
  CHECK(r3.failure().find("missing step") != std::string::npos);

  auto version = file;
  version["version"] = 2;
  CHECK_THROWS_AS(reverify_tower(version), InvalidArgument);
}
