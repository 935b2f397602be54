#include "concc/word.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "concc/error.hpp"

namespace concc {

namespace {

// Knuth-Morris-Pratt failure function.
std::vector<std::size_t> prefix_function(std::span<Letter const> s) {
  std::vector<std::size_t> pi(s.size(), 0);
  for (std::size_t i = 1; i < s.size(); ++i) {
    std::size_t k = pi[i - 1];
    while (k > 0 && s[i] != s[k]) {
      k = pi[k - 1];
    }
    if (s[i] == s[k]) {
      ++k;
    }
    pi[i] = k;
  }
  return pi;
}

struct StrippedCore {
  Word prefix;  // w == prefix * core * prefix^-1
  Word core;
};

StrippedCore strip_conjugator(Word const& w) {
  auto const& l = w.letters();
  std::size_t i = 0;
  std::size_t j = l.size();
  while (j - i >= 2 && l[i] == inverse(l[j - 1])) {
    ++i;
    --j;
  }
  return {w.subword(0, i), w.subword(i, j - i)};
}

}  // namespace

// Alphabet

bool Alphabet::valid_name(std::string_view name) {
  if (name.empty()) {
    return false;
  }
  auto alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(name.front())) {
    return false;
  }
  return std::all_of(name.begin(), name.end(),
                     [&](char c) { return alpha(c) || digit(c); });
}

Alphabet::Alphabet(std::vector<std::string> names) {
  for (auto& n : names) {
    add(std::move(n));
  }
}

std::string const& Alphabet::name(std::size_t generator) const {
  if (generator >= names_.size()) {
    throw UnknownGenerator("generator index " + std::to_string(generator) +
                           " out of range");
  }
  return names_[generator];
}

std::optional<std::size_t> Alphabet::find(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - names_.begin());
}

std::size_t Alphabet::index(std::string_view name) const {
  if (auto i = find(name)) {
    return *i;
  }
  throw UnknownGenerator("unknown generator '" + std::string(name) + "'");
}

std::size_t Alphabet::add(std::string name) {
  if (!valid_name(name)) {
    throw InvalidArgument("invalid generator name '" + name + "'");
  }
  if (find(name)) {
    throw InvalidArgument("duplicate generator '" + name + "'");
  }
  names_.push_back(std::move(name));
  return names_.size() - 1;
}

// Word

Word reduce(std::span<Letter const> raw) {
  std::vector<Letter> out;
  out.reserve(raw.size());
  for (Letter l : raw) {
    if (l == 0) {
      throw InvalidArgument("letter 0 is not a valid letter");
    }
    if (!out.empty() && out.back() == inverse(l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return Word(Word::Reduced{}, std::move(out));
}

Word reduce(std::span<Letter const> raw, Alphabet const& alphabet) {
  for (Letter l : raw) {
    if (l == 0 || generator_of(l) >= alphabet.size()) {
      throw UnknownGenerator("letter " + std::to_string(l) +
                             " is not in the alphabet");
    }
  }
  return reduce(raw);
}

Word::Word(std::vector<Letter> letters) : Word(reduce(letters)) {}

Word::Word(std::initializer_list<Letter> letters)
    : Word(reduce(std::span<Letter const>(letters.begin(), letters.size()))) {}

Word Word::generator(std::size_t g, long long exponent) {
  Letter const l = make_letter(g, exponent < 0 ? -1 : 1);
  auto const n = static_cast<std::size_t>(exponent < 0 ? -exponent : exponent);
  return Word(Reduced{}, std::vector<Letter>(n, l));
}

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (auto& l : out) {
    l = concc::inverse(l);
  }
  return Word(Reduced{}, std::move(out));
}

Word Word::pow(long long n) const {
  if (n == 0 || letters_.empty()) {
    return Word();
  }
  if (n < 0) {
    return inverse().pow(-n);
  }
  // w^n = p core^n p^-1 with core cyclically reduced.
  auto const s = strip_conjugator(*this);
  std::vector<Letter> out;
  out.reserve(2 * s.prefix.size() + s.core.size() * static_cast<std::size_t>(n));
  out.insert(out.end(), s.prefix.begin(), s.prefix.end());
  for (long long i = 0; i < n; ++i) {
    out.insert(out.end(), s.core.begin(), s.core.end());
  }
  auto const pinv = s.prefix.inverse();
  out.insert(out.end(), pinv.begin(), pinv.end());
  return Word(Reduced{}, std::move(out));
}

Word Word::subword(std::size_t pos, std::size_t len) const {
  pos = std::min(pos, letters_.size());
  len = std::min(len, letters_.size() - pos);
  return Word(Reduced{},
              std::vector<Letter>(letters_.begin() + static_cast<long>(pos),
                                  letters_.begin() + static_cast<long>(pos + len)));
}

std::size_t Word::generator_bound() const noexcept {
  std::size_t b = 0;
  for (Letter l : letters_) {
    b = std::max(b, generator_of(l) + 1);
  }
  return b;
}

Word& Word::operator*=(Word const& other) {
  std::size_t k = 0;
  while (k < other.size() && !letters_.empty() &&
         letters_.back() == concc::inverse(other.letters_[k])) {
    letters_.pop_back();
    ++k;
  }
  letters_.insert(letters_.end(), other.letters_.begin() + static_cast<long>(k),
                  other.letters_.end());
  return *this;
}

std::strong_ordering lex_compare(std::span<Letter const> a,
                                 std::span<Letter const> b) {
  std::size_t const n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) {
      return letter_rank(a[i]) <=> letter_rank(b[i]);
    }
  }
  return a.size() <=> b.size();
}

std::strong_ordering Word::operator<=>(Word const& other) const {
  if (auto c = size() <=> other.size(); c != 0) {
    return c;
  }
  return lex_compare(letters_, other.letters_);
}

std::size_t least_rotation(std::span<Letter const> s) {
  std::size_t const n = s.size();
  if (n < 2) {
    return 0;
  }
  std::size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    auto const a = letter_rank(s[(i + k) % n]);
    auto const b = letter_rank(s[(j + k) % n]);
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b) {
      i += k + 1;
    } else {
      j += k + 1;
    }
    if (i == j) {
      ++j;
    }
    k = 0;
  }
  return std::min(i, j);
}

// Cyclic words

CyclicReduction cyclic_reduce(Word const& w) {
  auto s = strip_conjugator(w);
  auto const& core = s.core.letters();
  std::size_t const r = least_rotation(core);
  // core = x y with |x| = r; the least rotation y x equals x^-1 core x.
  Word const x = s.core.subword(0, r);
  std::vector<Letter> rotated(core.begin() + static_cast<long>(r), core.end());
  rotated.insert(rotated.end(), core.begin(), core.begin() + static_cast<long>(r));
  CyclicReduction out;
  out.core = CyclicWord(Word(std::move(rotated)));
  out.conjugator = s.prefix * x;
  return out;
}

CyclicWord::CyclicWord(Word const& w) {
  auto s = strip_conjugator(w);
  auto const& core = s.core.letters();
  std::size_t const r = least_rotation(core);
  std::vector<Letter> rotated(core.begin() + static_cast<long>(r), core.end());
  rotated.insert(rotated.end(), core.begin(), core.begin() + static_cast<long>(r));
  word_ = Word(std::move(rotated));
}

std::optional<Word> find_conjugator(Word const& u, Word const& v) {
  auto const su = strip_conjugator(u);
  auto const sv = strip_conjugator(v);
  auto const& cu = su.core.letters();
  auto const& cv = sv.core.letters();
  if (cu.size() != cv.size()) {
    return std::nullopt;
  }
  std::size_t const n = cu.size();
  if (n == 0) {
    return Word();
  }
  // Occurrences of cv in cu cu at offsets i < n: cv = y x where cu = x y.
  std::vector<Letter> pattern(cv.begin(), cv.end());
  auto const pi = prefix_function(pattern);
  std::optional<Word> best;
  std::size_t k = 0;
  for (std::size_t pos = 0; pos + 1 < 2 * n; ++pos) {
    Letter const c = cu[pos % n];
    while (k > 0 && c != pattern[k]) {
      k = pi[k - 1];
    }
    if (c == pattern[k]) {
      ++k;
    }
    if (k == n) {
      std::size_t const i = pos + 1 - n;
      k = pi[k - 1];
      Word const x = su.core.subword(0, i);
      Word const y = su.core.subword(i, n - i);
      // v = q cv q^-1, cv = x^-1 cu x = y cu y^-1, u = p cu p^-1.
      Word const pinv = su.prefix.inverse();
      Word c1 = sv.prefix * x.inverse() * pinv;
      Word c2 = sv.prefix * y * pinv;
      for (Word* cand : {&c1, &c2}) {
        if (!best || cand->size() < best->size()) {
          best = *cand;
        }
      }
    }
  }
  return best;
}

bool is_conjugate(Word const& u, Word const& v) {
  return CyclicWord(u) == CyclicWord(v);
}

PrimitiveRoot primitive_root(Word const& w) {
  if (w.empty()) {
    throw IdentityElement("primitive_root: identity has no primitive root");
  }
  auto const s = strip_conjugator(w);
  auto const& core = s.core.letters();
  std::size_t const n = core.size();
  auto const pi = prefix_function(core);
  std::size_t period = n - pi[n - 1];
  if (n % period != 0) {
    period = n;
  }
  PrimitiveRoot out;
  out.root = s.prefix * s.core.subword(0, period) * s.prefix.inverse();
  out.exponent = static_cast<long long>(n / period);
  return out;
}

CommensurabilityVerdict commensurable(Word const& u, Word const& v) {
  if (u.empty() || v.empty()) {
    throw IdentityElement("commensurable: relation is defined on nonidentity "
                          "elements only");
  }
  auto const ru = primitive_root(u);
  auto const rv = primitive_root(v);
  CyclicWord const cu(ru.root);
  int sign = 0;
  if (cu == CyclicWord(rv.root)) {
    sign = 1;
  } else if (cu == CyclicWord(rv.root.inverse())) {
    sign = -1;
  }
  if (sign == 0) {
    return {};
  }
  long long const g = std::gcd(ru.exponent, rv.exponent);
  CommensurabilityWitness wit;
  wit.k = rv.exponent / g;
  wit.l = sign * ru.exponent / g;
  auto c = find_conjugator(u.pow(wit.k), v.pow(wit.l));
  // Both sides are conjugates of the same power of one root.
  wit.conjugator = std::move(*c);
  return {true, std::move(wit)};
}

Word commensurability_key(Word const& w) {
  auto const r = primitive_root(w);
  Word a = CyclicWord(r.root).word();
  Word b = CyclicWord(r.root.inverse()).word();
  return std::min(a, b);
}

// Enumeration

ShortlexEnumerator::ShortlexEnumerator(std::size_t rank) : rank_(rank) {
  if (rank == 0) {
    throw InvalidArgument("shortlex enumeration needs at least one generator");
  }
}

Word ShortlexEnumerator::next() {
  auto const top = static_cast<std::uint32_t>(2 * rank_);
  auto fill_from = [&](std::size_t pos) {
    for (std::size_t i = pos; i < ranks_.size(); ++i) {
      ranks_[i] = 0;
      if (i > 0 && ranks_[i] == (ranks_[i - 1] ^ 1U)) {
        ranks_[i] = 1;
      }
    }
  };
  if (ranks_.empty()) {
    ranks_.assign(1, 0);
  } else {
    std::size_t pos = ranks_.size();
    while (true) {
      if (pos == 0) {
        ranks_.assign(ranks_.size() + 1, 0);
        fill_from(0);
        break;
      }
      --pos;
      auto& r = ranks_[pos];
      ++r;
      if (pos > 0 && r == (ranks_[pos - 1] ^ 1U)) {
        ++r;
      }
      if (r < top) {
        fill_from(pos + 1);
        break;
      }
    }
  }
  std::vector<Letter> letters;
  letters.reserve(ranks_.size());
  for (auto r : ranks_) {
    letters.push_back(letter_from_rank(r));
  }
  return Word(std::move(letters));
}

std::vector<Word> shortlex_words(std::size_t rank, std::size_t count) {
  ShortlexEnumerator e(rank);
  std::vector<Word> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(e.next());
  }
  return out;
}

}  // namespace concc
