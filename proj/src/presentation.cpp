#include "concc/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "concc/error.hpp"

namespace concc {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) {
      fail(std::string("expected '") + c + "'" +
           (pos_ >= text_.size() ? " before end of input" : ""));
    }
    ++pos_;
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(std::string const& msg) const {
    throw ParseError(pos_, msg);
  }

  std::size_t position() const { return pos_; }

  bool at_identifier() {
    char const c = peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string identifier() {
    skip_ws();
    std::size_t const start = pos_;
    if (!at_identifier()) {
      fail("expected a generator name");
    }
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  long long integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      ++pos_;
    }
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    long long v = 0;
    std::string_view digits = text_.substr(start, pos_ - start);
    if (!digits.empty() && digits.front() == '+') {
      digits.remove_prefix(1);
    }
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc() || p != digits.data() + digits.size()) {
      pos_ = start;
      fail("expected an integer exponent");
    }
    return v;
  }

  // word := factor+ ; factor := ident ('^' int)? | '1'
  Word word(Alphabet const& alphabet) {
    std::vector<Letter> raw;
    bool any = false;
    while (true) {
      char const c = peek();
      if (c == '1') {
        ++pos_;
        any = true;
        continue;
      }
      if (!at_identifier()) {
        break;
      }
      std::size_t const start = position();
      std::string const name = identifier();
      auto g = alphabet.find(name);
      if (!g) {
        pos_ = start;
        fail("unknown generator '" + name + "'");
      }
      long long e = 1;
      if (accept('^')) {
        e = integer();
      }
      Letter const l = make_letter(*g, e < 0 ? -1 : 1);
      for (long long i = 0; i < (e < 0 ? -e : e); ++i) {
        raw.push_back(l);
      }
      any = true;
    }
    if (!any) {
      fail("expected a word");
    }
    return reduce(raw);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

FinitePresentation parse_presentation(std::string_view text) {
  Parser p(text);
  FinitePresentation out;
  p.expect('<');
  if (p.peek() != '|') {
    while (true) {
      std::size_t const start = p.position();
      std::string name = p.identifier();
      if (out.alphabet.find(name)) {
        throw ParseError(start, "duplicate generator '" + name + "'");
      }
      out.alphabet.add(std::move(name));
      if (!p.accept(',')) {
        break;
      }
    }
  }
  p.expect('|');
  if (p.peek() != '>') {
    while (true) {
      p.skip_ws();
      std::size_t const start = p.position();
      Word lhs = p.word(out.alphabet);
      if (p.accept('=')) {
        lhs = lhs * p.word(out.alphabet).inverse();
      }
      if (lhs.empty()) {
        throw ParseError(start, "relator is the identity");
      }
      out.relators.push_back(std::move(lhs));
      if (!p.accept(',')) {
        break;
      }
    }
  }
  p.expect('>');
  if (!p.at_end()) {
    p.fail("unexpected trailing input");
  }
  return out;
}

Word parse_word(std::string_view text, Alphabet const& alphabet) {
  Parser p(text);
  Word w = p.word(alphabet);
  if (!p.at_end()) {
    p.fail("unexpected trailing input");
  }
  return w;
}

std::string format_word(Word const& w, Alphabet const& alphabet) {
  if (w.empty()) {
    return "1";
  }
  std::string out;
  for (Letter l : w) {
    if (!out.empty()) {
      out += ' ';
    }
    out += alphabet.name(generator_of(l));
    if (l < 0) {
      out += "^-1";
    }
  }
  return out;
}

std::string format_presentation(FinitePresentation const& p) {
  std::ostringstream os;
  os << "< ";
  for (std::size_t i = 0; i < p.alphabet.size(); ++i) {
    os << (i ? ", " : "") << p.alphabet.name(i);
  }
  os << " | ";
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    os << (i ? ", " : "") << format_word(p.relators[i], p.alphabet);
  }
  os << " >";
  return os.str();
}

long long exponent_sum(Word const& w, std::size_t generator) {
  long long s = 0;
  for (Letter l : w) {
    if (generator_of(l) == generator) {
      s += sign_of(l);
    }
  }
  return s;
}

long long exponent_sum(Word const& w, std::string_view generator,
                       Alphabet const& alphabet) {
  return exponent_sum(w, alphabet.index(generator));
}

// Quotients

KillGenerators kill_generators(Alphabet const& alphabet,
                               std::vector<std::string> const& names) {
  KillGenerators k;
  for (auto const& n : names) {
    k.generators.push_back(alphabet.index(n));
  }
  std::sort(k.generators.begin(), k.generators.end());
  k.generators.erase(std::unique(k.generators.begin(), k.generators.end()),
                     k.generators.end());
  return k;
}

namespace {

long long mod(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

QuotientImage image_of(QuotientSpec const& spec, std::size_t rank,
                       Word const& w) {
  if (auto const* k = std::get_if<KillGenerators>(&spec)) {
    std::vector<Letter> kept;
    for (Letter l : w) {
      auto const g = generator_of(l);
      if (g < rank &&
          !std::binary_search(k->generators.begin(), k->generators.end(), g)) {
        kept.push_back(l);
      }
    }
    return reduce(kept);
  }
  auto const& c = std::get<CyclicQuotientSpec>(spec);
  long long r = 0;
  for (Letter l : w) {
    auto const g = generator_of(l);
    if (g < rank) {
      r = mod(r + sign_of(l) * c.residues[g], c.modulus);
    }
  }
  return r;
}

bool is_identity_image(QuotientImage const& img) {
  if (auto const* w = std::get_if<Word>(&img)) {
    return w->empty();
  }
  return std::get<long long>(img) == 0;
}

bool conjugate_images(QuotientImage const& a, QuotientImage const& b) {
  if (a.index() != b.index()) {
    throw InvalidArgument("quotient images of different kinds");
  }
  if (auto const* wa = std::get_if<Word>(&a)) {
    return is_conjugate(*wa, std::get<Word>(b));
  }
  return std::get<long long>(a) == std::get<long long>(b);
}

void validate_spec(QuotientSpec const& spec, FinitePresentation const& p) {
  std::size_t const rank = p.alphabet.size();
  if (auto const* k = std::get_if<KillGenerators>(&spec)) {
    for (auto g : k->generators) {
      if (g >= rank) {
        throw InvalidArgument("kill spec references a generator outside the "
                              "presentation");
      }
    }
  } else {
    auto const& c = std::get<CyclicQuotientSpec>(spec);
    if (c.modulus < 2) {
      throw InvalidArgument("cyclic quotient needs modulus >= 2");
    }
    if (c.residues.size() != rank) {
      throw InvalidArgument("cyclic quotient needs one residue per generator");
    }
  }
  for (auto const& r : p.relators) {
    if (!is_identity_image(image_of(spec, rank, r))) {
      throw InvalidArgument("relator " + format_word(r, p.alphabet) +
                            " does not map to the identity");
    }
  }
}

std::string reason_text(QuotientSpec const& spec, Alphabet const& alphabet,
                        QuotientImage const& a, QuotientImage const& b) {
  std::ostringstream os;
  if (std::holds_alternative<KillGenerators>(spec)) {
    os << "images " << format_image(a, alphabet) << " and "
       << format_image(b, alphabet)
       << " have distinct cyclic reductions in the free quotient";
  } else {
    auto const& c = std::get<CyclicQuotientSpec>(spec);
    os << "images are distinct residues " << std::get<long long>(a) << " and "
       << std::get<long long>(b) << " modulo " << c.modulus
       << " in an abelian quotient";
  }
  return os.str();
}

}  // namespace

Quotient::Quotient(FinitePresentation presentation, QuotientSpec spec)
    : pres_(std::move(presentation)), spec_(std::move(spec)) {
  if (auto* c = std::get_if<CyclicQuotientSpec>(&spec_)) {
    for (auto& r : c->residues) {
      if (c->modulus >= 2) {
        r = mod(r, c->modulus);
      }
    }
  }
  validate_spec(spec_, pres_);
}

QuotientImage Quotient::image(Word const& w) const {
  return image_of(spec_, pres_.alphabet.size(), w);
}

bool Quotient::images_conjugate(QuotientImage const& a,
                                QuotientImage const& b) const {
  return conjugate_images(a, b);
}

std::optional<NonConjugacyCertificate> conjugacy_obstruction(
    Quotient const& quotient, Word const& u, Word const& v) {
  auto iu = quotient.image(u);
  auto iv = quotient.image(v);
  if (quotient.images_conjugate(iu, iv)) {
    return std::nullopt;
  }
  NonConjugacyCertificate c;
  c.first = u;
  c.second = v;
  c.spec = quotient.spec();
  c.reason = reason_text(c.spec, quotient.presentation().alphabet, iu, iv);
  c.first_image = std::move(iu);
  c.second_image = std::move(iv);
  return c;
}

bool verify_certificate(NonConjugacyCertificate const& cert,
                        FinitePresentation const& presentation) {
  try {
    Quotient const q(presentation, cert.spec);
    auto const iu = q.image(cert.first);
    auto const iv = q.image(cert.second);
    return iu == cert.first_image && iv == cert.second_image &&
           !q.images_conjugate(iu, iv);
  } catch (Error const&) {
    return false;
  }
}

// JSON

std::string format_image(QuotientImage const& img, Alphabet const& alphabet) {
  if (auto const* w = std::get_if<Word>(&img)) {
    return format_word(*w, alphabet);
  }
  return std::to_string(std::get<long long>(img));
}

nlohmann::ordered_json spec_to_json(QuotientSpec const& spec,
                                    Alphabet const& alphabet) {
  nlohmann::ordered_json j;
  if (auto const* k = std::get_if<KillGenerators>(&spec)) {
    j["kind"] = "kill-generators";
    auto arr = nlohmann::ordered_json::array();
    for (auto g : k->generators) {
      arr.push_back(alphabet.name(g));
    }
    j["generators"] = arr;
  } else {
    auto const& c = std::get<CyclicQuotientSpec>(spec);
    j["kind"] = "cyclic";
    j["modulus"] = c.modulus;
    nlohmann::ordered_json res = nlohmann::ordered_json::object();
    for (std::size_t g = 0; g < c.residues.size(); ++g) {
      res[alphabet.name(g)] = c.residues[g];
    }
    j["residues"] = res;
  }
  return j;
}

QuotientSpec spec_from_json(nlohmann::ordered_json const& j,
                            Alphabet const& alphabet) {
  auto const kind = j.at("kind").get<std::string>();
  if (kind == "kill-generators") {
    return kill_generators(alphabet,
                           j.at("generators").get<std::vector<std::string>>());
  }
  if (kind == "cyclic") {
    CyclicQuotientSpec c;
    c.modulus = j.at("modulus").get<long long>();
    c.residues.assign(alphabet.size(), 0);
    for (auto const& [name, value] : j.at("residues").items()) {
      c.residues[alphabet.index(name)] = value.get<long long>();
    }
    return c;
  }
  throw InvalidArgument("unknown quotient kind '" + kind + "'");
}

nlohmann::ordered_json certificate_to_json(NonConjugacyCertificate const& c,
                                           Alphabet const& alphabet) {
  nlohmann::ordered_json j;
  j["pair"] = {format_word(c.first, alphabet), format_word(c.second, alphabet)};
  j["spec"] = spec_to_json(c.spec, alphabet);
  j["images"] = {format_image(c.first_image, alphabet),
                 format_image(c.second_image, alphabet)};
  j["reason"] = c.reason;
  return j;
}

NonConjugacyCertificate certificate_from_json(nlohmann::ordered_json const& j,
                                              Alphabet const& alphabet) {
  NonConjugacyCertificate c;
  auto const& pair = j.at("pair");
  c.first = parse_word(pair.at(0).get<std::string>(), alphabet);
  c.second = parse_word(pair.at(1).get<std::string>(), alphabet);
  c.spec = spec_from_json(j.at("spec"), alphabet);
  auto const& images = j.at("images");
  auto parse_image = [&](std::string const& s) -> QuotientImage {
    if (std::holds_alternative<KillGenerators>(c.spec)) {
      return parse_word(s, alphabet);
    }
    return std::stoll(s);
  };
  c.first_image = parse_image(images.at(0).get<std::string>());
  c.second_image = parse_image(images.at(1).get<std::string>());
  c.reason = j.at("reason").get<std::string>();
  return c;
}

}  // namespace concc
