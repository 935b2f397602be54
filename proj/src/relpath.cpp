#include "concc/relpath.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

#include "concc/error.hpp"
#include "concc/presentation.hpp"

namespace concc {

namespace {

Word abelian_normal(Word const& w, std::size_t rank) {
  std::vector<long long> e(rank, 0);
  for (Letter l : w) {
    e[generator_of(l)] += sign_of(l);
  }
  std::vector<Letter> out;
  for (std::size_t g = 0; g < rank; ++g) {
    for (long long i = 0; i < std::abs(e[g]); ++i) {
      out.push_back(make_letter(g, e[g] < 0 ? -1 : 1));
    }
  }
  return Word(std::move(out));
}

std::size_t uniform(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

}  // namespace

Factor Factor::free_group(std::string label, Alphabet alphabet) {
  Factor f;
  f.label_ = std::move(label);
  f.kind_ = Kind::free_group;
  f.alphabet_ = std::move(alphabet);
  return f;
}

Factor Factor::cyclic(std::string label, long long order,
                      std::string generator) {
  if (order < 2) {
    throw InvalidArgument("cyclic factor order must be at least 2");
  }
  Factor f;
  f.label_ = std::move(label);
  f.kind_ = Kind::cyclic;
  f.alphabet_ = Alphabet({std::move(generator)});
  f.order_ = order;
  return f;
}

Factor Factor::free_abelian(std::string label,
                            std::vector<std::string> generators) {
  Factor f;
  f.label_ = std::move(label);
  f.kind_ = Kind::free_abelian;
  f.alphabet_ = Alphabet(std::move(generators));
  return f;
}

Factor Factor::oracle(std::string label, Tower tower) {
  Factor f;
  f.label_ = std::move(label);
  f.kind_ = Kind::oracle;
  f.alphabet_ = tower.alphabet();
  f.tower_ = std::make_shared<Tower const>(std::move(tower));
  return f;
}

Factor Factor::klein(std::string label) {
  auto p = parse_presentation("< a, tau | tau a tau^-1 a >");
  return oracle(std::move(label), Tower::from_presentation(p));
}

Word Factor::normalize(Word const& w) const {
  switch (kind_) {
    case Kind::free_group:
      return w;
    case Kind::cyclic: {
      long long e = exponent_sum(w, 0) % order_;
      if (e < 0) {
        e += order_;
      }
      return Word::generator(0, e);
    }
    case Kind::free_abelian:
      return abelian_normal(w, alphabet_.size());
    case Kind::oracle:
      return tower_->britton_reduce(w);
  }
  return w;
}

bool Factor::is_identity(Word const& w) const {
  if (kind_ != Kind::oracle) {
    return normalize(w).empty();
  }
  auto v = tower_->is_trivial(w);
  if (v == Verdict3::unknown) {
    throw BoundExhausted("word problem undecided in factor " + label_);
  }
  return v == Verdict3::yes;
}

bool Factor::equal(Word const& u, Word const& v) const {
  return is_identity(u * v.inverse());
}

std::optional<bool> Factor::conjugate(Word const& u, Word const& v) const {
  switch (kind_) {
    case Kind::free_group:
      return is_conjugate(u, v);
    case Kind::cyclic:
    case Kind::free_abelian:
      return equal(u, v);
    case Kind::oracle:
      return std::nullopt;
  }
  return std::nullopt;
}

Word Factor::random_element(std::mt19937_64& rng,
                            std::size_t max_length) const {
  for (;;) {
    std::size_t const len = 1 + uniform(rng, std::max<std::size_t>(1, max_length));
    std::vector<Letter> raw;
    for (std::size_t i = 0; i < len; ++i) {
      raw.push_back(make_letter(uniform(rng, alphabet_.size()),
                                uniform(rng, 2) ? 1 : -1));
    }
    Word w = normalize(reduce(raw));
    if (!is_identity(w)) {
      return w;
    }
  }
}

FreeProductCtx::FreeProductCtx(Alphabet free_alphabet,
                               std::vector<Factor> factors)
    : free_(std::move(free_alphabet)), factors_(std::move(factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (factors_[i].label() == factors_[j].label()) {
        throw InvalidArgument("duplicate factor label " + factors_[i].label());
      }
    }
  }
}

FreeProductCtx FreeProductCtx::model() {
  return FreeProductCtx(Alphabet({"x1", "x2"}),
                        {Factor::free_abelian("H1", {"a"})});
}

FreeProductCtx FreeProductCtx::mixed() {
  return FreeProductCtx(Alphabet({"x1", "x2"}),
                        {Factor::free_abelian("A", {"a"}),
                         Factor::free_abelian("B", {"b", "c"}),
                         Factor::free_group("F", Alphabet({"f", "g"}))});
}

int FreeProductCtx::factor_index(std::string_view label) const {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].label() == label) {
      return static_cast<int>(i);
    }
  }
  throw InvalidArgument("unknown factor " + std::string(label));
}

void FreeProductCtx::append(NormalForm& g, Syllable s) const {
  auto trivial = [&](Syllable const& x) {
    return x.factor == free_part ? x.element.empty()
                                 : factor(x.factor).is_identity(x.element);
  };
  if (s.factor != free_part) {
    s.element = factor(s.factor).normalize(s.element);
  }
  if (trivial(s)) {
    return;
  }
  if (g.empty() || g.back().factor != s.factor) {
    g.push_back(std::move(s));
    return;
  }
  Syllable merged{s.factor, g.back().element * s.element};
  if (merged.factor != free_part) {
    merged.element = factor(merged.factor).normalize(merged.element);
  }
  g.pop_back();
  if (!trivial(merged)) {
    g.push_back(std::move(merged));
  }
}

NormalForm FreeProductCtx::multiply(NormalForm const& u,
                                    NormalForm const& v) const {
  NormalForm out = u;
  for (auto const& s : v) {
    append(out, s);
  }
  return out;
}

NormalForm FreeProductCtx::inverse(NormalForm const& g) const {
  NormalForm out;
  for (auto it = g.rbegin(); it != g.rend(); ++it) {
    Word e = it->element.inverse();
    if (it->factor != free_part) {
      e = factor(it->factor).normalize(e);
    }
    out.push_back({it->factor, std::move(e)});
  }
  return out;
}

NormalForm FreeProductCtx::power(NormalForm const& g, long long e) const {
  NormalForm base = e < 0 ? inverse(g) : g;
  NormalForm out;
  for (long long i = 0; i < std::abs(e); ++i) {
    out = multiply(out, base);
  }
  return out;
}

bool FreeProductCtx::equal(NormalForm const& u, NormalForm const& v) const {
  if (u.size() != v.size()) {
    return false;
  }
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i].factor != v[i].factor) {
      return false;
    }
    bool const same = u[i].factor == free_part
                          ? u[i].element == v[i].element
                          : factor(u[i].factor).equal(u[i].element,
                                                      v[i].element);
    if (!same) {
      return false;
    }
  }
  return true;
}

bool FreeProductCtx::in_factor(NormalForm const& g, int f) const {
  return g.empty() || (g.size() == 1 && g[0].factor == f);
}

NormalForm FreeProductCtx::letter(int f, Word element) const {
  NormalForm out;
  append(out, {f, std::move(element)});
  return out;
}

NormalForm FreeProductCtx::x(std::size_t generator, int sign) const {
  return letter(free_part, Word{make_letter(generator, sign)});
}

std::string FreeProductCtx::format(NormalForm const& g) const {
  if (g.empty()) {
    return "1";
  }
  std::string out;
  for (auto const& s : g) {
    if (!out.empty()) {
      out += ' ';
    }
    if (s.factor == free_part) {
      out += format_word(s.element, free_);
    } else {
      auto const& f = factor(s.factor);
      out += "[" + f.label() + ": " + format_word(s.element, f.alphabet()) +
             "]";
    }
  }
  return out;
}

NormalForm evaluate(std::vector<PathLetter> const& letters,
                    FreeProductCtx const& ctx) {
  NormalForm g;
  for (auto const& l : letters) {
    ctx.append(g, {l.factor, l.element});
  }
  return g;
}

SyllablePath make_path(std::vector<PathLetter> letters,
                       FreeProductCtx const& ctx, NormalForm base) {
  auto const nf = static_cast<int>(ctx.factors().size());
  for (std::size_t i = 0; i < letters.size(); ++i) {
    auto const& l = letters[i];
    if (l.factor == free_part) {
      if (l.element.size() != 1 ||
          generator_of(l.element[0]) >= ctx.free_alphabet().size()) {
        throw InvalidArgument("letter " + std::to_string(i) +
                              ": not a single X letter");
      }
      continue;
    }
    if (l.factor < 0 || l.factor >= nf) {
      throw InvalidArgument("letter " + std::to_string(i) + ": unknown factor");
    }
    auto const& f = ctx.factor(l.factor);
    if (l.element.generator_bound() > f.alphabet().size()) {
      throw InvalidArgument("letter " + std::to_string(i) +
                            ": element outside factor " + f.label());
    }
    if (f.is_identity(l.element)) {
      throw InvalidArgument("letter " + std::to_string(i) +
                            ": identity element of factor " + f.label());
    }
  }
  for (std::size_t i = 0; i < letters.size();) {
    std::size_t j = i + 1;
    while (j < letters.size() && letters[j].factor == letters[i].factor) {
      ++j;
    }
    if (letters[i].factor != free_part && j - i > 1) {
      Word prod;
      for (std::size_t k = i; k < j; ++k) {
        prod *= letters[k].element;
      }
      if (ctx.factor(letters[i].factor).is_identity(prod)) {
        throw InvalidArgument("letters " + std::to_string(i) + ".." +
                              std::to_string(j - 1) +
                              ": component with identity label");
      }
    }
    i = j;
  }
  return SyllablePath{std::move(letters), std::move(base)};
}

SyllablePath parse_path(std::string_view text, FreeProductCtx const& ctx) {
  std::vector<PathLetter> letters;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
  };
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
      s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
      s.remove_suffix(1);
    }
    return s;
  };
  for (skip(); i < text.size(); skip()) {
    std::size_t const at = i;
    if (text[i] == '[') {
      auto const close = text.find(']', i);
      if (close == std::string_view::npos) {
        throw ParseError(at, "unterminated factor letter");
      }
      auto body = text.substr(i + 1, close - i - 1);
      auto const colon = body.find(':');
      if (colon == std::string_view::npos) {
        throw ParseError(at, "expected ':' in factor letter");
      }
      int const f = ctx.factor_index(trim(body.substr(0, colon)));
      Word w = parse_word(trim(body.substr(colon + 1)),
                          ctx.factor(f).alphabet());
      letters.push_back({f, std::move(w)});
      i = close + 1;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                               text[j] == '_')) {
      ++j;
    }
    if (j == i) {
      throw ParseError(at, "unexpected character");
    }
    auto name = text.substr(i, j - i);
    i = j;
    long long e = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      std::size_t k = i;
      if (k < text.size() && text[k] == '-') {
        ++k;
      }
      std::size_t const digits = k;
      while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
        ++k;
      }
      if (k == digits) {
        throw ParseError(i, "expected exponent");
      }
      e = std::stoll(std::string(text.substr(i, k - i)));
      i = k;
    }
    if (name == "1" && e == 1) {
      continue;
    }
    auto const g = ctx.free_alphabet().find(name);
    if (!g) {
      throw ParseError(at, "unknown letter " + std::string(name));
    }
    for (long long k = 0; k < std::abs(e); ++k) {
      letters.push_back({free_part, Word{make_letter(*g, e < 0 ? -1 : 1)}});
    }
  }
  return make_path(std::move(letters), ctx);
}

std::string format_path(SyllablePath const& p, FreeProductCtx const& ctx) {
  if (p.letters.empty()) {
    return "1";
  }
  std::string out;
  for (auto const& l : p.letters) {
    if (!out.empty()) {
      out += ' ';
    }
    out += ctx.format(NormalForm{{l.factor, l.element}});
  }
  return out;
}

bool is_cycle(SyllablePath const& p, FreeProductCtx const& ctx) {
  return evaluate(p.letters, ctx).empty();
}

std::vector<NormalForm> vertices(SyllablePath const& p,
                                 FreeProductCtx const& ctx) {
  std::vector<NormalForm> v;
  v.reserve(p.letters.size() + 1);
  v.push_back(p.base);
  for (auto const& l : p.letters) {
    NormalForm next = v.back();
    ctx.append(next, {l.factor, l.element});
    v.push_back(std::move(next));
  }
  return v;
}

std::vector<Component> components(SyllablePath const& p,
                                  FreeProductCtx const& ctx) {
  std::vector<Component> out;
  auto const& ls = p.letters;
  for (std::size_t i = 0; i < ls.size();) {
    std::size_t j = i + 1;
    while (j < ls.size() && ls[j].factor == ls[i].factor) {
      ++j;
    }
    if (ls[i].factor != free_part) {
      Word label;
      for (std::size_t k = i; k < j; ++k) {
        label *= ls[k].element;
      }
      out.push_back({ls[i].factor, i, j,
                     ctx.factor(ls[i].factor).normalize(label)});
    }
    i = j;
  }
  return out;
}

namespace {

std::optional<Word> coset_offset(NormalForm const& from, NormalForm const& to,
                                 int f, FreeProductCtx const& ctx) {
  NormalForm d = ctx.multiply(ctx.inverse(from), to);
  if (!ctx.in_factor(d, f)) {
    return std::nullopt;
  }
  return d.empty() ? Word{} : d[0].element;
}

}  // namespace

bool connected(Component const& a, NormalForm const& a_vertex,
               Component const& b, NormalForm const& b_vertex,
               FreeProductCtx const& ctx) {
  return a.factor == b.factor &&
         coset_offset(a_vertex, b_vertex, a.factor, ctx).has_value();
}

ConnectivityReport connectivity(SyllablePath const& p,
                                FreeProductCtx const& ctx,
                                bool require_cycle) {
  if (require_cycle && !is_cycle(p, ctx)) {
    throw InvalidArgument("path is not a cycle: label evaluates to " +
                          ctx.format(evaluate(p.letters, ctx)));
  }
  ConnectivityReport rep;
  rep.components = components(p, ctx);
  auto const v = vertices(p, ctx);
  auto const n = rep.components.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      x = parent[x] = parent[parent[x]];
    }
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      auto const& a = rep.components[i];
      auto const& b = rep.components[j];
      if (find(i) != find(j) && connected(a, v[a.start], b, v[b.start], ctx)) {
        parent[find(j)] = find(i);
      }
    }
  }
  std::map<std::size_t, std::size_t> slot;
  for (std::size_t i = 0; i < n; ++i) {
    auto const r = find(i);
    auto [it, fresh] = slot.try_emplace(r, rep.classes.size());
    if (fresh) {
      rep.classes.emplace_back();
    }
    rep.classes[it->second].push_back(i);
  }
  for (auto const& cls : rep.classes) {
    auto const& first = rep.components[cls.front()];
    std::vector<Word> offsets;
    for (auto i : cls) {
      offsets.push_back(*coset_offset(v[first.start],
                                      v[rep.components[i].start],
                                      first.factor, ctx));
    }
    rep.coset_offsets.push_back(std::move(offsets));
    if (cls.size() == 1) {
      rep.isolated.push_back(cls.front());
    }
  }
  std::sort(rep.isolated.begin(), rep.isolated.end());
  return rep;
}

bool check_W_membership(SyllablePath const& p, long long m,
                        FreeProductCtx const& ctx) {
  (void)m;  // the forbidden ball is {1} for every m
  auto const& ls = p.letters;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (ls[i].factor != free_part &&
        ctx.factor(ls[i].factor).is_identity(ls[i].element)) {
      return false;
    }
    if (i > 0 && ls[i].factor == ls[i - 1].factor) {
      // Two X letters in a row, or h_i h_{i+1} of one factor with x = 1.
      return false;
    }
  }
  return true;
}

HyperbolicityVerdict is_hyperbolic(NormalForm const& g,
                                   FreeProductCtx const& ctx) {
  if (g.empty()) {
    throw IdentityElement("is_hyperbolic: identity element");
  }
  HyperbolicityVerdict out;
  NormalForm core = g;
  while (core.size() >= 2 && core.front().factor == core.back().factor) {
    Syllable const s = core.front();
    NormalForm rest(core.begin() + 1, core.end());
    ctx.append(rest, s);
    core = std::move(rest);
    ctx.append(out.conjugator, s);
  }
  if (core.size() == 1 && core[0].factor == free_part) {
    auto cr = cyclic_reduce(core[0].element);
    core[0].element = cr.core.word();
    ctx.append(out.conjugator, {free_part, cr.conjugator});
  }
  out.hyperbolic = core.size() >= 2 || core[0].factor == free_part;
  out.infinite_order =
      out.hyperbolic || ctx.factor(core[0].factor).torsion_free();
  out.cyclic_core = std::move(core);
  return out;
}

ConjugacyResult conjugate(NormalForm const& u, NormalForm const& v,
                          FreeProductCtx const& ctx) {
  ConjugacyResult out;
  if (u.empty() || v.empty()) {
    out.conjugate = u.empty() && v.empty();
    return out;
  }
  auto const hu = is_hyperbolic(u, ctx);
  auto const hv = is_hyperbolic(v, ctx);
  auto const& cu = hu.cyclic_core;
  auto const& cv = hv.cyclic_core;
  out.conjugate = false;
  if (cu.size() != cv.size()) {
    return out;
  }
  // v = Cv coreV Cv^-1, u = Cu coreU Cu^-1, coreV = P^-1 coreU P.
  auto finish = [&](NormalForm const& P_inv) {
    out.conjugate = true;
    out.conjugator = ctx.multiply(ctx.multiply(hv.conjugator, P_inv),
                                  ctx.inverse(hu.conjugator));
  };
  auto const n = cu.size();
  if (n == 1) {
    if (cu[0].factor != cv[0].factor) {
      return out;
    }
    if (cu[0].factor == free_part) {
      if (auto c = find_conjugator(cu[0].element, cv[0].element)) {
        finish(ctx.letter(free_part, *c));
      }
      return out;
    }
    auto const& f = ctx.factor(cu[0].factor);
    if (f.kind() == Factor::Kind::free_group) {
      if (auto c = find_conjugator(cu[0].element, cv[0].element)) {
        finish(ctx.letter(cu[0].factor, *c));
      }
      return out;
    }
    auto const verdict = f.conjugate(cu[0].element, cv[0].element);
    if (!verdict) {
      out.conjugate = std::nullopt;
    } else if (*verdict) {
      finish({});
    }
    return out;
  }
  NormalForm prefix;
  for (std::size_t r = 0; r < n; ++r) {
    bool match = true;
    for (std::size_t i = 0; i < n && match; ++i) {
      auto const& a = cu[(r + i) % n];
      auto const& b = cv[i];
      match = a.factor == b.factor &&
              (a.factor == free_part
                   ? a.element == b.element
                   : ctx.factor(a.factor).equal(a.element, b.element));
    }
    if (match) {
      finish(ctx.inverse(prefix));
      return out;
    }
    prefix.push_back(cu[r]);
  }
  return out;
}

RegularityReport regularity_audit(std::vector<PathLetter> const& r,
                                  std::vector<PathLetter> const& q,
                                  std::vector<PathLetter> const& r2,
                                  std::vector<PathLetter> const& q2,
                                  FreeProductCtx const& ctx) {
  std::vector<PathLetter> o;
  std::vector<std::pair<std::size_t, std::size_t>> seg;  // [begin, end)
  for (auto const* part : {&r, &q, &r2, &q2}) {
    seg.emplace_back(o.size(), o.size() + part->size());
    o.insert(o.end(), part->begin(), part->end());
  }
  // Runs may cancel across subpath boundaries; each subpath is checked on
  // its own.
  for (auto const* part : {&r, &q, &r2, &q2}) {
    make_path(*part, ctx);
  }
  SyllablePath const path{o, {}};
  if (!is_cycle(path, ctx)) {
    throw InvalidArgument("r q r' q' is not a cycle: label evaluates to " +
                          ctx.format(evaluate(o, ctx)));
  }
  if (!check_W_membership(make_path(q, ctx), 0, ctx) ||
      !check_W_membership(make_path(q2, ctx), 0, ctx)) {
    throw InvalidArgument("q or q' is not a W-word");
  }
  auto const v = vertices(path, ctx);
  struct Tagged {
    Component c;
    int segment;
  };
  std::vector<Tagged> all;
  for (int s = 0; s < 4; ++s) {
    std::vector<PathLetter> part(o.begin() + seg[s].first,
                                 o.begin() + seg[s].second);
    for (auto c : components(SyllablePath{part, {}}, ctx)) {
      c.start += seg[s].first;
      c.end += seg[s].first;
      all.push_back({c, s});
    }
  }
  auto linked = [&](std::size_t i, std::size_t j) {
    return connected(all[i].c, v[all[i].c.start], all[j].c,
                     v[all[j].c.start], ctx);
  };
  RegularityReport rep;
  rep.C = std::max(r.size(), r2.size());
  std::vector<std::size_t> qi, q2i;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i].segment == 1) {
      qi.push_back(i);
    } else if (all[i].segment == 3) {
      q2i.push_back(i);
    }
  }
  rep.q_components = qi.size();
  rep.q2_components = q2i.size();
  auto irregular = [&](std::vector<std::size_t> const& idx) {
    std::size_t n = 0;
    for (auto i : idx) {
      bool regular = false;
      for (std::size_t j = 0; j < all.size() && !regular; ++j) {
        regular = j != i && linked(i, j);
      }
      n += regular ? 0 : 1;
    }
    return n;
  };
  rep.q_irregular = irregular(qi);
  rep.q2_irregular = irregular(q2i);
  std::vector<std::size_t> hits_q(qi.size(), 0), hits_q2(q2i.size(), 0);
  for (std::size_t a = 0; a < qi.size(); ++a) {
    for (std::size_t b = 0; b < q2i.size(); ++b) {
      if (linked(qi[a], q2i[b])) {
        rep.matches.emplace_back(a, b);
        ++hits_q[a];
        ++hits_q2[b];
      }
    }
  }
  for (auto h : hits_q) {
    rep.pairing_violations += h > 1 ? h - 1 : 0;
  }
  for (auto h : hits_q2) {
    rep.pairing_violations += h > 1 ? h - 1 : 0;
  }
  auto const C = static_cast<long long>(rep.C);
  if (rep.C <= 1) {
    rep.part_a = rep.q_irregular == 0 && rep.q2_irregular == 0;
  } else {
    rep.part_b = static_cast<long long>(rep.q_irregular) <= 4 * C &&
                 static_cast<long long>(rep.q2_irregular) <= 4 * C;
  }
  auto const matched = static_cast<long long>(
      std::count_if(hits_q.begin(), hits_q.end(), [](auto h) { return h > 0; }));
  rep.part_c = rep.pairing_violations == 0 &&
               matched >= static_cast<long long>(qi.size()) - 6 * C;
  for (std::size_t k = 1; k < rep.matches.size(); ++k) {
    auto const [i0, j0] = rep.matches[k - 1];
    auto const [i1, j1] = rep.matches[k];
    auto const step = static_cast<long long>(j1) - static_cast<long long>(j0);
    auto const first = static_cast<long long>(rep.matches[1].second) -
                       static_cast<long long>(rep.matches[0].second);
    if (i1 != i0 + 1 || (step != 1 && step != -1) || step != first) {
      rep.consecutive = false;
    }
  }
  return rep;
}

namespace {

PathLetter random_letter(FreeProductCtx const& ctx, std::mt19937_64& rng) {
  auto const nf = ctx.factors().size();
  auto const nx = ctx.free_alphabet().size();
  auto const pick = uniform(rng, nf + (nx > 0 ? 1 : 0));
  if (pick == nf) {
    return {free_part, Word{make_letter(uniform(rng, nx),
                                        uniform(rng, 2) ? 1 : -1)}};
  }
  auto const f = static_cast<int>(pick);
  return {f, ctx.factor(f).random_element(rng, 2)};
}

void emit_node(FreeProductCtx const& ctx, std::mt19937_64& rng,
               std::size_t& budget, std::vector<PathLetter>& out);

void emit_forest(FreeProductCtx const& ctx, std::mt19937_64& rng,
                 std::size_t budget, std::vector<PathLetter>& out) {
  while (budget > 0) {
    emit_node(ctx, rng, budget, out);
  }
}

void emit_node(FreeProductCtx const& ctx, std::mt19937_64& rng,
               std::size_t& budget, std::vector<PathLetter>& out) {
  --budget;
  auto share = [&] {
    std::size_t const s = uniform(rng, budget + 1);
    budget -= s;
    return s;
  };
  auto const nx = ctx.free_alphabet().size();
  bool const x_node = ctx.factors().empty() ||
                      (nx > 0 && (budget == 0 || uniform(rng, 3) == 0));
  if (x_node) {
    Letter const l = make_letter(uniform(rng, nx), uniform(rng, 2) ? 1 : -1);
    out.push_back({free_part, Word{l}});
    emit_forest(ctx, rng, share(), out);
    out.push_back({free_part, Word{inverse(l)}});
    return;
  }
  auto const f = static_cast<int>(uniform(rng, ctx.factors().size()));
  auto const& fac = ctx.factor(f);
  // Every slot between two letters of the node gets at least one node, so
  // the letters stay in distinct components.
  std::size_t const m = 2 + uniform(rng, std::min<std::size_t>(budget, 2));
  budget -= std::min(budget, m - 1);
  Word prod;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    Word h = fac.random_element(rng, 2);
    prod *= h;
    out.push_back({f, std::move(h)});
    emit_forest(ctx, rng, 1 + share(), out);
  }
  // The closing letter may be trivial; the caller rejects such words.
  out.push_back({f, fac.normalize(prod.inverse())});
}

}  // namespace

std::vector<PathLetter> random_trivial_word(FreeProductCtx const& ctx,
                                            std::mt19937_64& rng,
                                            std::size_t nodes) {
  std::vector<PathLetter> out;
  emit_forest(ctx, rng, nodes, out);
  return out;
}

std::vector<PathLetter> random_W_word(FreeProductCtx const& ctx,
                                      std::mt19937_64& rng,
                                      std::size_t h_letters) {
  auto const nx = ctx.free_alphabet().size();
  auto const nf = ctx.factors().size();
  auto x_letter = [&]() -> PathLetter {
    return {free_part,
            Word{make_letter(uniform(rng, nx), uniform(rng, 2) ? 1 : -1)}};
  };
  std::vector<PathLetter> out;
  if (nx > 0 && uniform(rng, 2)) {
    out.push_back(x_letter());
  }
  int prev = free_part;
  for (std::size_t i = 0; i < h_letters; ++i) {
    auto const f = static_cast<int>(uniform(rng, nf));
    bool const need_x = i > 0 && f == prev;
    if (need_x && nx == 0) {
      continue;
    }
    if (i > 0 && (need_x || (nx > 0 && uniform(rng, 2)))) {
      out.push_back(x_letter());
    }
    out.push_back({f, ctx.factor(f).random_element(rng, 2)});
    prev = f;
  }
  if (nx > 0 && !out.empty() && out.back().factor != free_part &&
      uniform(rng, 2)) {
    out.push_back(x_letter());
  }
  return out;
}

std::vector<PathLetter> to_letters(NormalForm const& g,
                                   FreeProductCtx const& ctx) {
  (void)ctx;
  std::vector<PathLetter> out;
  for (auto const& s : g) {
    if (s.factor == free_part) {
      for (Letter l : s.element) {
        out.push_back({free_part, Word{l}});
      }
    } else {
      out.push_back({s.factor, s.element});
    }
  }
  return out;
}

TrivialWordAudit audit_trivial_words(FreeProductCtx const& ctx,
                                     std::uint64_t seed,
                                     std::size_t instances) {
  TrivialWordAudit rep;
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  while (rep.instances < instances) {
    auto letters = random_trivial_word(ctx, rng, 1 + uniform(rng, 16));
    SyllablePath path;
    try {
      path = make_path(std::move(letters), ctx);
    } catch (InvalidArgument const&) {
      ++rep.rejected;
      continue;
    }
    ++rep.instances;
    auto const c = connectivity(path, ctx);
    rep.components += c.components.size();
    for (auto i : c.isolated) {
      if (!ctx.factor(c.components[i].factor)
               .is_identity(c.components[i].label)) {
        ++rep.isolated_nonidentity;
      }
    }
  }
  return rep;
}

RegularityAuditSummary audit_regularity(FreeProductCtx const& ctx,
                                        std::uint64_t seed,
                                        std::size_t instances,
                                        std::size_t C) {
  RegularityAuditSummary rep;
  rep.seed = seed;
  rep.C = C;
  std::mt19937_64 rng(seed);
  while (rep.instances < instances) {
    auto q = random_W_word(ctx, rng, 1 + uniform(rng, 6));
    std::vector<PathLetter> r, r2;
    for (std::size_t i = uniform(rng, C + 1); i > 0; --i) {
      r.push_back(random_letter(ctx, rng));
    }
    for (std::size_t i = uniform(rng, C + 1); i > 0; --i) {
      r2.push_back(random_letter(ctx, rng));
    }
    std::vector<PathLetter> rqr = r;
    rqr.insert(rqr.end(), q.begin(), q.end());
    rqr.insert(rqr.end(), r2.begin(), r2.end());
    auto q2 = to_letters(ctx.inverse(evaluate(rqr, ctx)), ctx);
    RegularityReport one;
    try {
      if (!check_W_membership(make_path(q2, ctx), 0, ctx)) {
        ++rep.rejected;
        continue;
      }
      one = regularity_audit(r, q, r2, q2, ctx);
    } catch (InvalidArgument const&) {
      ++rep.rejected;
      continue;
    }
    ++rep.instances;
    rep.components += one.q_components + one.q2_components;
    rep.irregular += one.q_irregular + one.q2_irregular;
    rep.max_irregular_per_path = std::max(
        {rep.max_irregular_per_path, one.q_irregular, one.q2_irregular});
    rep.part_a_failures += one.part_a ? 0 : 1;
    rep.part_b_failures += one.part_b ? 0 : 1;
    rep.pairing_violations += one.pairing_violations;
  }
  return rep;
}

NoBacktrackingAudit audit_no_backtracking(FreeProductCtx const& ctx,
                                          std::uint64_t seed,
                                          std::size_t instances) {
  NoBacktrackingAudit rep;
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  for (; rep.instances < instances; ++rep.instances) {
    auto const path = make_path(random_W_word(ctx, rng, 1 + uniform(rng, 8)),
                                ctx);
    auto const c = connectivity(path, ctx, false);
    for (auto const& cls : c.classes) {
      rep.connected_pairs += cls.size() * (cls.size() - 1) / 2;
    }
  }
  return rep;
}

ProbeReport commensuration_probe(int lambda0, Word const& a,
                                 NormalForm const& t, NormalForm const& u,
                                 long long k_min, long long k_max,
                                 FreeProductCtx const& ctx,
                                 std::optional<Decomposition> decomposition,
                                 long long exponent_bound) {
  auto const& H = ctx.factor(lambda0);
  if (H.is_identity(a)) {
    throw InvalidArgument("probe: a is the identity");
  }
  if (ctx.in_factor(t, lambda0) || ctx.in_factor(u, lambda0)) {
    throw InvalidArgument("probe: t and u must lie outside H_" + H.label());
  }
  if (k_min > k_max) {
    throw InvalidArgument("probe: empty k range");
  }
  if (decomposition) {
    auto const& d = *decomposition;
    if ((d.xi != 1 && d.xi != -1) || (d.epsilon != 1 && d.epsilon != -1)) {
      throw InvalidArgument("probe: xi and epsilon must be +1 or -1");
    }
    Word const ae = a.pow(d.epsilon);
    if (!H.equal(d.beta * a * d.beta.inverse(), ae) ||
        !H.equal(d.gamma.inverse() * a * d.gamma, ae)) {
      throw InvalidArgument("probe: beta/gamma twist conditions fail");
    }
    NormalForm const rebuilt = ctx.multiply(
        ctx.multiply(ctx.letter(lambda0, d.gamma), ctx.power(t, d.xi)),
        ctx.letter(lambda0, d.beta));
    if (!ctx.equal(rebuilt, u)) {
      throw InvalidArgument("probe: u != gamma t^xi beta");
    }
  }
  ProbeReport rep;
  rep.decomposition = decomposition;
  rep.exponent_bound = exponent_bound;
  constexpr std::size_t conjugator_syllables = 8;
  for (long long k = k_min; k <= k_max; ++k) {
    if (k == 0) {
      continue;
    }
    ProbeEntry e;
    e.k = k;
    NormalForm const A = ctx.letter(lambda0, a.pow(k));
    auto word = [&](NormalForm const& s) {
      return ctx.multiply(ctx.multiply(ctx.multiply(A, s), A), ctx.inverse(s));
    };
    NormalForm const g1 = word(t);
    NormalForm const g2 = word(u);
    if (decomposition) {
      auto const& d = *decomposition;
      NormalForm const gamma = ctx.letter(lambda0, d.gamma);
      NormalForm y = gamma;
      if (d.epsilon == -1 && d.xi == 1) {
        y = ctx.multiply(gamma, ctx.letter(lambda0, a.pow(-k)));
      } else if (d.epsilon == 1 && d.xi == -1) {
        y = ctx.multiply(ctx.multiply(gamma, A), ctx.inverse(t));
      } else if (d.epsilon == -1 && d.xi == -1) {
        y = ctx.multiply(gamma, ctx.inverse(t));
      }
      long long const ex = d.epsilon;
      NormalForm const rhs =
          ctx.multiply(ctx.multiply(y, ctx.power(g1, ex)), ctx.inverse(y));
      e.identity_verified = ctx.equal(g2, rhs);
      e.commensurable_found = e.identity_verified;
      e.e1 = ex;
      e.e2 = 1;
    } else {
      for (long long e1 = 1; e1 <= exponent_bound && !e.commensurable_found;
           ++e1) {
        NormalForm const p1 = ctx.power(g1, e1);
        for (long long m = 1; m <= exponent_bound && !e.commensurable_found;
             ++m) {
          for (long long e2 : {m, -m}) {
            auto const c = conjugate(p1, ctx.power(g2, e2), ctx);
            if (c.conjugate.value_or(false) &&
                c.conjugator.size() <= conjugator_syllables) {
              e.commensurable_found = true;
              e.e1 = e1;
              e.e2 = e2;
              break;
            }
          }
        }
      }
    }
    rep.entries.push_back(e);
  }
  rep.all_verified =
      decomposition.has_value() &&
      std::all_of(rep.entries.begin(), rep.entries.end(),
                  [](auto const& e) { return e.identity_verified; });
  rep.none_found =
      !decomposition &&
      std::none_of(rep.entries.begin(), rep.entries.end(),
                   [](auto const& e) { return e.commensurable_found; });
  return rep;
}

}  // namespace concc
