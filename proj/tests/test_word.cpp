#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "concc/error.hpp"
#include "concc/presentation.hpp"
#include "concc/word.hpp"
#include "oracles.hpp"

using namespace concc;

namespace {

Alphabet const AB({"a", "b"});

Word w(char const* text) { return parse_word(text, AB); }

oracle::Raw raw(Word const& x) { return oracle::Raw(x.begin(), x.end()); }

Word from_raw(oracle::Raw const& r) {
  return Word(std::vector<Letter>(r.begin(), r.end()));
}

Word random_word(std::mt19937_64& rng, std::size_t rank, std::size_t len) {
  std::vector<Letter> out;
  for (std::size_t i = 0; i < len; ++i) {
    out.push_back(make_letter(rng() % rank, rng() % 2 ? 1 : -1));
  }
  return Word(out);
}

}  // namespace

TEST_CASE("construction reduces freely") {
  CHECK(w("a b b^-1 a^-1").empty());
  CHECK(w("a a^-1 b") == w("b"));
  CHECK(w("a^3").size() == 3);
  CHECK((w("a b") * w("b^-1 a")) == w("a^2"));
  CHECK(w("a b").inverse() == w("b^-1 a^-1"));
  CHECK(w("a b").pow(-2) == w("b^-1 a^-1 b^-1 a^-1"));
  CHECK(w("a b").pow(0).empty());
}

TEST_CASE("shortlex order and enumeration") {
  CHECK(w("b") < w("a a"));
  CHECK(w("a") < w("a^-1"));
  CHECK(w("a^-1") < w("b"));
  auto const words = shortlex_words(2, 4 + 12);
  REQUIRE(words.size() == 16);
  CHECK(words[0] == w("a"));
  CHECK(words[3] == w("b^-1"));
  CHECK(words[4] == w("a a"));
  for (std::size_t i = 1; i < words.size(); ++i) {
    CHECK(words[i - 1] < words[i]);
  }
}

TEST_CASE("cyclic words") {
  CHECK(CyclicWord(w("b a b^-1 a b a^-1")).size() == 6);
  CHECK(CyclicWord(w("b a b a^-1 b^-1")).word() == w("b"));
  CHECK(CyclicWord(w("b a")) == CyclicWord(w("a b")));
  CHECK(CyclicWord(w("a b")).word() == w("a b"));

  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    Word const x = random_word(rng, 2, 1 + rng() % 10);
    auto const cr = cyclic_reduce(x);
    CHECK((cr.conjugator * cr.core.word() * cr.conjugator.inverse()) == x);
    CHECK(cr.core.size() == oracle::cyclic_core(raw(x)).size());
  }
}

TEST_CASE("conjugacy matches the rotation oracle") {
  auto const words = oracle::all_words(2, 4);
  for (std::size_t i = 0; i < words.size(); i += 3) {
    for (std::size_t j = 0; j < words.size(); j += 5) {
      Word const u = from_raw(words[i]);
      Word const v = from_raw(words[j]);
      bool const expect = oracle::conjugate(words[i], words[j]);
      CHECK(is_conjugate(u, v) == expect);
      if (auto c = find_conjugator(u, v)) {
        CHECK((*c * u * c->inverse()) == v);
      }
    }
  }
}

TEST_CASE("primitive roots") {
  auto const r = primitive_root(w("a b a b a b"));
  CHECK(r.root == w("a b"));
  CHECK(r.exponent == 3);
  CHECK(primitive_root(w("a^-4")).root.pow(primitive_root(w("a^-4")).exponent) ==
        w("a^-4"));
  CHECK(primitive_root(w("b a b^-1 b a b^-1")).exponent == 2);
  CHECK_THROWS_AS(primitive_root(Word{}), IdentityElement);

  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    Word const x = random_word(rng, 2, 1 + rng() % 6);
    if (x.empty()) {
      continue;
    }
    long long const k = 1 + static_cast<long long>(rng() % 4);
    auto const pr = primitive_root(x.pow(k));
    CHECK(pr.root.pow(pr.exponent) == x.pow(k));
    CHECK(primitive_root(pr.root).exponent == 1);
  }
}

TEST_CASE("commensurability") {
  CHECK(commensurable(w("a^2"), w("a^3")).related);
  CHECK(commensurable(w("a"), w("a^-1")).related);
  CHECK(commensurable(w("b a^2 b^-1"), w("a^-3")).related);
  CHECK_FALSE(commensurable(w("a"), w("b")).related);
  CHECK_FALSE(commensurable(w("a b"), w("a b^-1")).related);
  CHECK_THROWS_AS(commensurable(Word{}, w("a")), IdentityElement);

  auto const v = commensurable(w("b a^4 b^-1"), w("a^6"));
  REQUIRE(v.witness);
  auto const& c = *v.witness;
  CHECK((c.conjugator * w("b a^4 b^-1").pow(c.k) * c.conjugator.inverse()) ==
        w("a^6").pow(c.l));
  CHECK(commensurability_key(w("b a^4 b^-1")) == commensurability_key(w("a^-6")));
}

TEST_CASE("commensurable agrees with the bounded brute-force oracle") {
  auto const words = oracle::all_words(2, 4);
  std::size_t related = 0;
  for (std::size_t i = 0; i < words.size(); i += 2) {
    for (std::size_t j = i; j < words.size(); j += 3) {
      bool const expect = oracle::commensurable(words[i], words[j]);
      auto const got = commensurable(from_raw(words[i]), from_raw(words[j]));
      CHECK(got.related == expect);
      related += expect ? 1 : 0;
      if (got.witness) {
        auto const& c = *got.witness;
        CHECK((c.conjugator * from_raw(words[i]).pow(c.k) *
               c.conjugator.inverse()) == from_raw(words[j]).pow(c.l));
      }
    }
  }
  CHECK(related > 0);
}

TEST_CASE("alphabet validation") {
  CHECK_THROWS_AS(Alphabet({"a", "a"}), InvalidArgument);
  CHECK_THROWS_AS(Alphabet({""}), InvalidArgument);
  CHECK_THROWS_AS(AB.index("c"), UnknownGenerator);
  std::vector<Letter> const bad{make_letter(5)};
  CHECK_THROWS_AS(reduce(bad, AB), UnknownGenerator);
}
