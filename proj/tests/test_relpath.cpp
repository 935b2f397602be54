#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "concc/error.hpp"
#include "concc/presentation.hpp"
#include "concc/relpath.hpp"

using namespace concc;

namespace {

NormalForm eval(std::string_view text, FreeProductCtx const& ctx) {
  return evaluate(parse_path(text, ctx).letters, ctx);
}

NormalForm random_element(FreeProductCtx const& ctx, std::mt19937_64& rng,
                          std::size_t syllables) {
  NormalForm g;
  int const nf = static_cast<int>(ctx.factors().size());
  for (std::size_t i = 0; i < syllables; ++i) {
    int const f = static_cast<int>(rng() % (nf + 1)) - 1;
    if (f == free_part) {
      std::size_t const n = 1 + rng() % 2;
      for (std::size_t k = 0; k < n; ++k) {
        g = ctx.multiply(g, ctx.x(rng() % ctx.free_alphabet().size(),
                                  rng() % 2 ? 1 : -1));
      }
    } else {
      Word const h = ctx.factor(f).random_element(rng, 3);
      if (!ctx.factor(f).is_identity(h)) {
        g = ctx.multiply(g, ctx.letter(f, h));
      }
    }
  }
  return g;
}

// g is conjugate into some factor by a conjugator made of at most three
// syllables of g or their inverses.
bool brute_parabolic(NormalForm const& g, FreeProductCtx const& ctx) {
  std::vector<NormalForm> pool{{}};
  for (auto const& s : g) {
    NormalForm one{s};
    pool.push_back(one);
    pool.push_back(ctx.inverse(one));
  }
  std::vector<NormalForm> cs;
  for (auto const& a : pool) {
    for (auto const& b : pool) {
      for (auto const& c : pool) {
        cs.push_back(ctx.multiply(ctx.multiply(a, b), c));
      }
    }
  }
  for (auto const& c : cs) {
    auto const h = ctx.multiply(ctx.multiply(ctx.inverse(c), g), c);
    if (h.size() == 1 && h[0].factor != free_part) {
      return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("paths and components") {
  auto const ctx = FreeProductCtx::model();
  auto const p = parse_path("[H1: a^3] x1 [H1: a^2] x2", ctx);
  CHECK(p.letters.size() == 4);
  auto const cs = components(p, ctx);
  REQUIRE(cs.size() == 2);
  CHECK(cs[0].start == 0);
  CHECK(cs[0].end == 1);
  CHECK(format_path(p, ctx) == "[H1: a a a] x1 [H1: a a] x2");

  auto const merged = parse_path("[H1: a] [H1: a^2] x1", ctx);
  auto const mc = components(merged, ctx);
  REQUIRE(mc.size() == 1);
  CHECK(mc[0].end == 2);
  CHECK(ctx.factor(0).equal(mc[0].label, parse_word("a^3", ctx.factor(0).alphabet())));

  CHECK(parse_path("x1^3", ctx).letters.size() == 3);
  CHECK_THROWS_AS(parse_path("[H1: a] [H1: a^-1]", ctx), InvalidArgument);
  CHECK_THROWS_AS(parse_path("[H1: a a^-1]", ctx), InvalidArgument);
  CHECK_THROWS_AS(parse_path("[H9: a]", ctx), InvalidArgument);
}

TEST_CASE("connectivity of a trivial cycle") {
  FreeProductCtx const ctx(Alphabet({"x"}), {Factor::free_abelian("A", {"a"}),
                                             Factor::free_abelian("B", {"b"})});
  auto const p =
      parse_path("[A: a] x [B: b] x^-1 x [B: b^-1] x^-1 [A: a^-1]", ctx);
  CHECK(is_cycle(p, ctx));
  auto const c = connectivity(p, ctx);
  CHECK(c.components.size() == 4);
  CHECK(c.classes.size() == 2);
  CHECK(c.isolated.empty());
  for (auto const& cls : c.classes) {
    REQUIRE(cls.size() == 2);
    CHECK(c.components[cls[0]].factor == c.components[cls[1]].factor);
  }
  CHECK_THROWS_AS(connectivity(parse_path("[A: a] x", ctx), ctx),
                  InvalidArgument);
  CHECK_NOTHROW(connectivity(parse_path("[A: a] x", ctx), ctx, false));
}

TEST_CASE("vertices close exactly on trivial words") {
  auto const ctx = FreeProductCtx::mixed();
  std::mt19937_64 rng(5);
  int checked = 0;
  while (checked < 300) {
    auto letters = random_trivial_word(ctx, rng, 1 + rng() % 8);
    SyllablePath p;
    try {
      p = make_path(letters, ctx);
    } catch (InvalidArgument const&) {
      continue;
    }
    ++checked;
    CHECK(is_cycle(p, ctx));
    auto const vs = vertices(p, ctx);
    CHECK(vs.size() == p.letters.size() + 1);
    CHECK(ctx.equal(vs.front(), vs.back()));
    CHECK(ctx.is_identity(evaluate(p.letters, ctx)));

    letters.push_back(PathLetter{free_part, Word::generator(0)});
    CHECK_FALSE(ctx.is_identity(evaluate(letters, ctx)));
  }
}

TEST_CASE("W membership") {
  auto const ctx = FreeProductCtx::model();
  CHECK(check_W_membership(parse_path("[H1: a] x1 [H1: a^2]", ctx), 1, ctx));
  CHECK(check_W_membership(SyllablePath{}, 1, ctx));
  CHECK(check_W_membership(parse_path("x1 [H1: a] x2", ctx), 3, ctx));
  CHECK_FALSE(check_W_membership(parse_path("[H1: a] [H1: a]", ctx), 1, ctx));
  CHECK_FALSE(check_W_membership(parse_path("x1 x2 [H1: a]", ctx), 1, ctx));

  FreeProductCtx const two(Alphabet({"x"}), {Factor::free_abelian("A", {"a"}),
                                             Factor::free_abelian("B", {"b"})});
  CHECK(check_W_membership(parse_path("[A: a] [B: b] [A: a]", two), 1, two));
}

TEST_CASE("W-words do not backtrack and do not close up") {
  auto const ctx = FreeProductCtx::mixed();
  std::mt19937_64 rng(8);
  for (int i = 0; i < 300; ++i) {
    auto const letters = random_W_word(ctx, rng, 1 + rng() % 6);
    auto const p = make_path(letters, ctx);
    REQUIRE(check_W_membership(p, 1, ctx));
    CHECK_FALSE(is_cycle(p, ctx));
    auto const c = connectivity(p, ctx, false);
    CHECK(c.classes.size() == c.components.size());
    CHECK_THROWS_AS(regularity_audit({}, letters, {}, {}, ctx),
                    InvalidArgument);
  }
  CHECK(audit_no_backtracking(ctx, 3, 500).connected_pairs == 0);
}

TEST_CASE("hyperbolicity") {
  auto const ctx = FreeProductCtx::model();
  for (int k1 = 1; k1 <= 10; ++k1) {
    for (int k2 = 1; k2 <= 10; ++k2) {
      auto const g = eval("[H1: a^" + std::to_string(k1) + "] x1 [H1: a^" +
                              std::to_string(k2) + "] x2",
                          ctx);
      auto const v = is_hyperbolic(g, ctx);
      CHECK(v.hyperbolic);
      REQUIRE(v.infinite_order);
      CHECK(*v.infinite_order);
    }
  }
  CHECK_FALSE(is_hyperbolic(eval("[H1: a]", ctx), ctx).hyperbolic);
  auto const conj = is_hyperbolic(eval("x1 [H1: a] x1^-1", ctx), ctx);
  CHECK_FALSE(conj.hyperbolic);
  CHECK(ctx.equal(ctx.multiply(ctx.multiply(conj.conjugator, conj.cyclic_core),
                               ctx.inverse(conj.conjugator)),
                  eval("x1 [H1: a] x1^-1", ctx)));
  CHECK(is_hyperbolic(eval("x1", ctx), ctx).hyperbolic);
  CHECK_THROWS_AS(is_hyperbolic(NormalForm{}, ctx), IdentityElement);

  FreeProductCtx const tor(Alphabet({"x"}), {Factor::cyclic("C", 3)});
  auto const t = is_hyperbolic(eval("x [C: a] x^-1", tor), tor);
  CHECK_FALSE(t.hyperbolic);
  REQUIRE(t.infinite_order);
  CHECK_FALSE(*t.infinite_order);
}

TEST_CASE("is_hyperbolic agrees with a brute-force conjugacy search") {
  auto const ctx = FreeProductCtx::mixed();
  std::mt19937_64 rng(77);
  std::size_t parabolic = 0;
  for (int i = 0; i < 600; ++i) {
    NormalForm g;
    if (i % 2 == 0) {
      g = random_element(ctx, rng, 1 + rng() % 6);
    } else {
      auto const c = random_element(ctx, rng, rng() % 3);
      auto const h = random_element(ctx, rng, 1);
      g = ctx.multiply(ctx.multiply(c, h), ctx.inverse(c));
    }
    if (g.empty()) {
      continue;
    }
    auto const v = is_hyperbolic(g, ctx);
    CHECK(v.hyperbolic == !brute_parabolic(g, ctx));
    CHECK(ctx.equal(ctx.multiply(ctx.multiply(v.conjugator, v.cyclic_core),
                                 ctx.inverse(v.conjugator)),
                    g));
    parabolic += v.hyperbolic ? 0 : 1;
  }
  CHECK(parabolic > 50);
}

TEST_CASE("conjugacy of hyperbolic elements") {
  auto const ctx = FreeProductCtx::mixed();
  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    auto const u = random_element(ctx, rng, 2 + rng() % 5);
    if (u.empty()) {
      continue;
    }
    auto const c = random_element(ctx, rng, rng() % 4);
    auto const v = ctx.multiply(ctx.multiply(c, u), ctx.inverse(c));
    auto const r = conjugate(u, v, ctx);
    if (!is_hyperbolic(u, ctx).hyperbolic) {
      continue;
    }
    REQUIRE(r.conjugate);
    CHECK(*r.conjugate);
    CHECK(ctx.equal(ctx.multiply(ctx.multiply(r.conjugator, u),
                                 ctx.inverse(r.conjugator)),
                    v));
  }
  auto const m = FreeProductCtx::model();
  auto const r = conjugate(eval("x1 [H1: a]", m), eval("x2 [H1: a]", m), m);
  REQUIRE(r.conjugate);
  CHECK_FALSE(*r.conjugate);
}

TEST_CASE("regularity audits") {
  auto const ctx = FreeProductCtx::mixed();
  for (std::size_t C = 0; C <= 3; ++C) {
    auto const s = audit_regularity(ctx, 100 + C, 200, C);
    CHECK(s.instances == 200);
    CHECK(s.part_a_failures == 0);
    CHECK(s.part_b_failures == 0);
    CHECK(s.pairing_violations == 0);
    if (C <= 1) {
      CHECK(s.irregular == 0);
    }
    CHECK(s.max_irregular_per_path <= 4 * std::max<std::size_t>(C, 1));
  }
  auto const t = audit_trivial_words(ctx, 42, 1000);
  CHECK(t.instances == 1000);
  CHECK(t.components > 0);
  CHECK(t.isolated_nonidentity == 0);
}

TEST_CASE("consecutive pairing on (a^k u a^k u^-1)^l") {
  FreeProductCtx const ctx(Alphabet({"x1", "x2"}),
                           {Factor::free_abelian("H", {"a", "b"})});
  auto const& HA = ctx.factor(0).alphabet();
  Word const a = parse_word("a", HA);
  Word const gamma = parse_word("b", HA);
  Word const beta = parse_word("b^2", HA);
  auto const t = ctx.x(0);
  auto const u = ctx.multiply(ctx.multiply(ctx.letter(0, gamma), t),
                              ctx.letter(0, beta));
  for (long long k : {1, 3}) {
    for (long long l : {1, 2, 4}) {
      auto const ak = ctx.letter(0, a.pow(k));
      auto const g1 = ctx.multiply(ctx.multiply(ctx.multiply(ak, t), ak),
                                   ctx.inverse(t));
      auto const g2 = ctx.multiply(ctx.multiply(ctx.multiply(ak, u), ak),
                                   ctx.inverse(u));
      std::vector<PathLetter> const r{{0, gamma.inverse()}};
      // gamma^-1 g2^l gamma a^k (g1^l a^k)^-1 = 1
      std::vector<PathLetter> const r2{{0, gamma * a.pow(k)}};
      auto const q = to_letters(ctx.power(g2, l), ctx);
      auto const q2 = to_letters(
          ctx.inverse(ctx.multiply(ctx.power(g1, l), ak)), ctx);
      auto const rep = regularity_audit(r, q, r2, q2, ctx);
      CHECK(rep.C == 1);
      CHECK(rep.part_a);
      CHECK(rep.part_c);
      CHECK(rep.pairing_violations == 0);
      CHECK(rep.q_irregular == 0);
      CHECK(rep.q2_irregular == 0);
      CHECK(rep.consecutive);
      CHECK(rep.matches.size() + 2 >= rep.q_components);
    }
  }
}

TEST_CASE("commensuration probe") {
  FreeProductCtx const z2(Alphabet({"x1", "x2"}),
                          {Factor::free_abelian("H", {"a", "b"})});
  Word const a = parse_word("a", z2.factor(0).alphabet());
  Word const b = parse_word("b", z2.factor(0).alphabet());
  auto const t = z2.x(0);
  for (int xi : {1, -1}) {
    Decomposition const d{b, xi, b * b, 1};
    auto const u = z2.multiply(
        z2.multiply(z2.letter(0, d.gamma), z2.power(t, xi)), z2.letter(0, d.beta));
    auto const r = commensuration_probe(0, a, t, u, 1, 20, z2, d);
    CHECK(r.all_verified);
    CHECK(r.entries.size() == 20);
  }

  FreeProductCtx const kc(Alphabet({"x1", "x2"}), {Factor::klein("K")});
  Word const ka = parse_word("a", kc.factor(0).alphabet());
  Word const tau = parse_word("tau", kc.factor(0).alphabet());
  auto const kt = kc.x(0);
  for (int xi : {1, -1}) {
    Decomposition const d{tau, xi, tau, -1};
    auto const u = kc.multiply(
        kc.multiply(kc.letter(0, d.gamma), kc.power(kt, xi)), kc.letter(0, d.beta));
    CHECK(commensuration_probe(0, ka, kt, u, 1, 20, kc, d).all_verified);
    // The wrong twist is rejected.
    Decomposition bad = d;
    bad.epsilon = 1;
    CHECK_THROWS_AS(commensuration_probe(0, ka, kt, u, 1, 3, kc, bad),
                    InvalidArgument);
  }

  auto const none = commensuration_probe(0, a, t, z2.x(1), 1, 4, z2, std::nullopt);
  CHECK(none.none_found);
  auto const same = commensuration_probe(0, a, t, t, 1, 4, z2, std::nullopt);
  CHECK_FALSE(same.none_found);
  for (auto const& e : same.entries) {
    CHECK(e.commensurable_found);
  }
  CHECK_THROWS_AS(
      commensuration_probe(0, a, z2.letter(0, b), t, 1, 3, z2, std::nullopt),
      InvalidArgument);
}
