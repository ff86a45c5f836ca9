// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#include "blue/parser.hpp"

#include <cctype>
#include <optional>

#include "blue/error.hpp"

namespace blue {

namespace {

enum class Tok { Ident, Nat, Symbol, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line, column;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    unsigned char c = static_cast<unsigned char>(src[i]);
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    std::size_t l = line, cc = col, start = i;
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::Ident, src.substr(start, j - start), l, cc});
      advance(j - i);
    } else if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Tok::Nat, src.substr(start, j - start), l, cc});
      advance(j - i);
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::Symbol, "->", l, cc});
      advance(2);
    } else if (std::string("{}:;,+*^=").find(static_cast<char>(c)) != std::string::npos) {
      out.push_back({Tok::Symbol, std::string(1, static_cast<char>(c)), l, cc});
      advance(1);
    } else {
      throw Error(ErrorCode::ParseError, std::to_string(l) + ":" + std::to_string(cc) + ": unexpected character '" +
                                             std::string(1, static_cast<char>(c)) + "'");
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  BlueFile file() {
    BlueFile f;
    if (at_end()) fail("'blueprint' or 'morphism'");
    while (!at_end()) {
      if (peek_is("blueprint")) f.blueprints.push_back(declaration());
      else if (peek_is("morphism")) f.morphisms.push_back(morphism());
      else fail("'blueprint' or 'morphism'");
    }
    return f;
  }

  // Standalone sum or monomial over a fixed generator list.
  FormalSum lone_sum(const std::vector<std::string>& names, bool has_zero) {
    names_ = names;
    has_zero_ = has_zero;
    FormalSum s = sum();
    expect_end();
    return s;
  }
  Monomial lone_term(const std::vector<std::string>& names, bool has_zero) {
    names_ = names;
    has_zero_ = has_zero;
    Monomial m = term();
    expect_end();
    return m;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> names_;
  bool has_zero_ = false;

  const Token& peek() const { return toks_[pos_]; }
  bool at_end() const { return peek().kind == Tok::End; }
  bool peek_is(const std::string& s) const { return peek().kind != Tok::End && peek().text == s; }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    throw Error(ErrorCode::ParseError, std::to_string(t.line) + ":" + std::to_string(t.column) + ": expected " +
                                           expected + ", found " + describe(t));
  }

  void expect(const std::string& s) {
    if (!peek_is(s)) fail("'" + s + "'");
    ++pos_;
  }
  void expect_end() {
    if (!at_end()) fail("end of input");
  }
  std::string ident(const char* what) {
    if (peek().kind != Tok::Ident) fail(what);
    return toks_[pos_++].text;
  }

  Declaration declaration() {
    expect("blueprint");
    Declaration d;
    d.name = ident("a blueprint name");
    expect("{");
    expect("generators");
    expect(":");
    while (peek().kind == Tok::Ident) {
      std::string g = toks_[pos_].text;
      if (d.presentation.find(g)) fail("a new generator name");
      if (g == "empty") fail("a generator name");
      d.presentation.generators.push_back(g);
      ++pos_;
      if (!peek_is(",")) break;
      ++pos_;
      if (peek().kind != Tok::Ident) fail("a generator name");
    }
    expect(";");
    names_ = d.presentation.generators;
    if (peek_is("zero")) {
      ++pos_;
      expect(";");
      d.presentation.has_zero = true;
    }
    has_zero_ = d.presentation.has_zero;
    if (peek_is("monoid")) {
      ++pos_;
      expect(":");
      do {
        Monomial l = term();
        expect("=");
        Monomial r = term();
        d.presentation.relations.emplace_back(l, r);
      } while (peek_is(",") && ++pos_);
      expect(";");
    }
    if (peek_is("addition")) {
      ++pos_;
      expect(":");
      do {
        FormalSum l = sum();
        expect("=");
        FormalSum r = sum();
        d.addition.emplace_back(l, r);
      } while (peek_is(",") && ++pos_);
      expect(";");
    }
    expect("}");
    return d;
  }

  MorphismDeclaration morphism() {
    expect("morphism");
    MorphismDeclaration m;
    m.name = ident("a morphism name");
    expect(":");
    m.source = ident("a source blueprint");
    expect("->");
    m.target = ident("a target blueprint");
    expect("{");
    if (!peek_is(";")) {
      do {
        std::string g = ident("a source generator");
        expect("->");
        // Keep the image as text; it is resolved against the target later.
        std::string text;
        while (!peek_is(",") && !peek_is(";") && !at_end()) text += toks_[pos_++].text;
        if (text.empty()) fail("an image term");
        m.assignment.emplace_back(g, text);
      } while (peek_is(",") && ++pos_);
    }
    expect(";");
    expect("}");
    return m;
  }

  FormalSum sum() {
    if (peek_is("empty")) {
      ++pos_;
      return FormalSum();
    }
    std::vector<Monomial> terms{term()};
    while (peek_is("+")) {
      ++pos_;
      terms.push_back(term());
    }
    return FormalSum(std::move(terms));
  }

  Monomial term() {
    const std::size_t n = names_.size();
    if (peek().kind == Tok::Nat) {
      const Token& t = toks_[pos_];
      if (t.text == "1") {
        ++pos_;
        return Monomial(n);
      }
      if (t.text == "0") {
        if (!has_zero_) throw Error(ErrorCode::NoZero, std::to_string(t.line) + ":" + std::to_string(t.column) + ": 0 used without 'zero;'");
        ++pos_;
        return Monomial::zero(n);
      }
      fail("'0', '1' or a generator");
    }
    Monomial m(n);
    while (true) {
      if (peek().kind != Tok::Ident || peek_is("empty")) fail("a term");
      const Token& t = toks_[pos_++];
      auto it = std::find(names_.begin(), names_.end(), t.text);
      if (it == names_.end())
        throw Error(ErrorCode::UndeclaredGenerator,
                    std::to_string(t.line) + ":" + std::to_string(t.column) + ": undeclared generator '" + t.text + "'");
      std::uint32_t e = 1;
      if (peek_is("^")) {
        ++pos_;
        if (peek().kind != Tok::Nat) fail("an exponent");
        e = static_cast<std::uint32_t>(std::stoul(toks_[pos_++].text));
      }
      m = m * Monomial::generator(n, static_cast<std::size_t>(it - names_.begin()), e);
      if (!peek_is("*")) break;
      ++pos_;
    }
    return m;
  }
};

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

}  // namespace

const Declaration& BlueFile::blueprint(const std::string& name) const {
  for (const auto& d : blueprints)
    if (d.name == name) return d;
  throw Error(ErrorCode::UndeclaredGenerator, "no blueprint named " + name);
}

BlueFile parse(const std::string& text) { return Parser(text).file(); }

std::string print(const Declaration& d) {
  const auto& names = d.presentation.generators;
  std::string out = "blueprint " + d.name + " {\n";
  out += "  generators: " + join(names, ", ") + ";\n";
  if (d.presentation.has_zero) out += "  zero;\n";
  if (!d.presentation.relations.empty()) {
    std::vector<std::string> rels;
    for (const auto& [l, r] : d.presentation.relations) rels.push_back(render(l, names) + " = " + render(r, names));
    out += "  monoid: " + join(rels, ", ") + ";\n";
  }
  if (!d.addition.empty()) {
    std::vector<std::string> rels;
    for (const auto& [l, r] : d.addition) rels.push_back(render(l, names) + " = " + render(r, names));
    out += "  addition: " + join(rels, ", ") + ";\n";
  }
  return out + "}\n";
}

std::string print(const BlueFile& file) {
  std::string out;
  for (const auto& d : file.blueprints) out += (out.empty() ? "" : "\n") + print(d);
  for (const auto& m : file.morphisms) {
    std::vector<std::string> parts;
    for (const auto& [g, img] : m.assignment) parts.push_back(g + " -> " + img);
    out += (out.empty() ? "" : "\n") + std::string("morphism ") + m.name + " : " + m.source + " -> " + m.target + " { " +
           join(parts, ", ") + "; }\n";
  }
  return out;
}

Monomial parse_monomial(const std::string& text, const std::vector<std::string>& names, bool has_zero) {
  return Parser(text).lone_term(names, has_zero);
}

FormalSum parse_sum(const std::string& text, const std::vector<std::string>& names, bool has_zero) {
  return Parser(text).lone_sum(names, has_zero);
}

FormalSum parse_sum(const Blueprint& b, const std::string& text) {
  return b.normalize(parse_sum(text, b.names(), b.monoid().has_zero()));
}

Monomial parse_monomial(const Blueprint& b, const std::string& text) {
  return b.normalize(parse_monomial(text, b.names(), b.monoid().has_zero()));
}

BlueprintPtr build(const Declaration& d, const Budget& budget) {
  Blueprint::Options options;
  options.budget = budget;
  return Blueprint::generated(d.name, d.presentation, d.addition, options);
}

Morphism build(const MorphismDeclaration& m, const std::map<std::string, BlueprintPtr>& blueprints) {
  auto find = [&](const std::string& name) {
    auto it = blueprints.find(name);
    if (it == blueprints.end()) throw Error(ErrorCode::TypeMismatch, "unknown blueprint " + name);
    return it->second;
  };
  Morphism f{find(m.source), find(m.target), {}, std::nullopt};
  f.images.assign(f.source->arity(), Monomial());
  std::vector<bool> set(f.source->arity(), false);
  for (const auto& [g, text] : m.assignment) {
    std::size_t i = f.source->monoid().presentation().index_of(g);
    f.images[i] = parse_monomial(*f.target, text);
    set[i] = true;
  }
  for (std::size_t i = 0; i < set.size(); ++i)
    if (!set[i]) throw Error(ErrorCode::InvalidMorphism, "no image for " + f.source->names()[i]);
  return f;
}

}  // namespace blue
