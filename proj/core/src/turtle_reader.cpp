/*
 * Copyright 2026 The geokg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cstdint>
#include <optional>
#include <sstream>

#include "geokg/error.hpp"
#include "geokg/turtle.hpp"

namespace geokg {

namespace {

// Buffered byte source with arbitrary small lookahead.
class Source {
 public:
  explicit Source(std::istream& in) : in_(in) {}

  int peek(std::size_t ahead = 0) {
    if (!ensure(ahead + 1)) return -1;
    return static_cast<unsigned char>(buf_[pos_ + ahead]);
  }

  int get() {
    const int c = peek();
    if (c >= 0) {
      ++pos_;
      ++offset_;
    }
    return c;
  }

  std::uint64_t offset() const noexcept { return offset_; }

 private:
  bool ensure(std::size_t n) { return buf_.size() - pos_ >= n || refill(n); }

  bool refill(std::size_t n) {
    constexpr std::size_t kChunk = 64 * 1024;
    while (buf_.size() - pos_ < n) {
      if (eof_) return false;
      if (pos_ > 0) {
        buf_.erase(0, pos_);
        pos_ = 0;
      }
      const std::size_t have = buf_.size();
      buf_.resize(have + kChunk);
      in_.read(buf_.data() + have, kChunk);
      const auto got = static_cast<std::size_t>(in_.gcount());
      buf_.resize(have + got);
      if (got == 0) eof_ = true;
    }
    return true;
  }

  std::istream& in_;
  std::string buf_;
  std::size_t pos_ = 0;
  std::uint64_t offset_ = 0;
  bool eof_ = false;
};

enum class Tok {
  kEof,
  kIri,        // text = IRI (unresolved)
  kPname,      // text = prefixed name
  kBlank,      // text = label
  kString,     // text = decoded lexical form
  kLangTag,    // text = tag without '@'
  kNumber,     // text = lexical, aux = datatype local name
  kWord,       // bare word: a, true, false, PREFIX, BASE
  kAtKeyword,  // text = prefix or base
  kCaretCaret,
  kDot,
  kSemicolon,
  kComma,
  kOpenBracket,
  kCloseBracket,
  kOpenParen,
};

struct Token {
  Tok kind = Tok::kEof;
  std::string text;
  std::string aux;
  std::uint64_t offset = 0;
};

bool is_name_start(int c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c >= 0x80;
}

bool is_name_char(int c) {
  return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == ':' || c == '%' || c == '\\';
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

class Lexer {
 public:
  explicit Lexer(std::istream& in) : src_(in) {}

  const Token& peek() {
    if (!lookahead_) lookahead_ = lex();
    return *lookahead_;
  }

  Token next() {
    Token t = lookahead_ ? std::move(*lookahead_) : lex();
    lookahead_.reset();
    return t;
  }

  [[noreturn]] void fail(const std::string& what, std::uint64_t offset) {
    throw ParseError("Turtle: " + what, offset);
  }

 private:
  [[noreturn]] void fail_here(const std::string& what) { fail(what, src_.offset()); }

  void skip_space() {
    for (;;) {
      const int c = src_.peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        src_.get();
      } else if (c == '#') {
        while (src_.peek() >= 0 && src_.peek() != '\n') src_.get();
      } else {
        return;
      }
    }
  }

  std::uint32_t read_hex(int digits) {
    std::uint32_t v = 0;
    for (int i = 0; i < digits; ++i) {
      const int c = src_.get();
      int d = -1;
      if (c >= '0' && c <= '9') d = c - '0';
      else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
      if (d < 0) fail_here("bad hex digit in escape");
      v = v * 16 + static_cast<std::uint32_t>(d);
    }
    return v;
  }

  Token lex() {
    skip_space();
    Token t;
    t.offset = src_.offset();
    const int c = src_.peek();
    if (c < 0) return t;
    switch (c) {
      case '<': lex_iri(t); return t;
      case '"':
      case '\'': lex_string(t); return t;
      case '.':
        if (src_.peek(1) >= '0' && src_.peek(1) <= '9') {
          lex_number(t);
        } else {
          src_.get();
          t.kind = Tok::kDot;
        }
        return t;
      case ';': src_.get(); t.kind = Tok::kSemicolon; return t;
      case ',': src_.get(); t.kind = Tok::kComma; return t;
      case '[': src_.get(); t.kind = Tok::kOpenBracket; return t;
      case ']': src_.get(); t.kind = Tok::kCloseBracket; return t;
      case '(': src_.get(); t.kind = Tok::kOpenParen; return t;
      case '^':
        src_.get();
        if (src_.get() != '^') fail(" expected '^^'", t.offset);
        t.kind = Tok::kCaretCaret;
        return t;
      case '@': lex_at(t); return t;
      case '_':
        if (src_.peek(1) == ':') {
          src_.get();
          src_.get();
          t.kind = Tok::kBlank;
          t.text = read_name_chars();
          if (t.text.empty()) fail("empty blank node label", t.offset);
          return t;
        }
        break;
      default: break;
    }
    if (c == '+' || c == '-' || (c >= '0' && c <= '9')) {
      lex_number(t);
      return t;
    }
    if (is_name_start(c) || c == ':') {
      t.text = read_name_chars();
      t.kind = t.text.find(':') != std::string::npos ? Tok::kPname : Tok::kWord;
      return t;
    }
    fail("unexpected character '" + std::string(1, static_cast<char>(c)) + "'", t.offset);
  }

  // Name characters; a '.' is included only when more name characters follow.
  std::string read_name_chars() {
    std::string out;
    for (;;) {
      const int c = src_.peek();
      if (c == '.') {
        std::size_t k = 1;
        while (src_.peek(k) == '.') ++k;
        if (!is_name_char(src_.peek(k))) break;
        for (std::size_t i = 0; i < k; ++i) out.push_back(static_cast<char>(src_.get()));
        continue;
      }
      if (!is_name_char(c)) break;
      src_.get();
      if (c == '\\') {
        const int e = src_.get();
        if (e < 0) fail_here("dangling escape in name");
        out.push_back(static_cast<char>(e));
      } else {
        out.push_back(static_cast<char>(c));
      }
    }
    return out;
  }

  void lex_iri(Token& t) {
    src_.get();
    t.kind = Tok::kIri;
    for (;;) {
      const int c = src_.get();
      if (c < 0) fail("unterminated IRI", t.offset);
      if (c == '>') return;
      if (c == '\\') {
        const int e = src_.get();
        if (e == 'u') append_utf8(t.text, read_hex(4));
        else if (e == 'U') append_utf8(t.text, read_hex(8));
        else fail_here("bad escape in IRI");
        continue;
      }
      if (c <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' || c == '`') {
        fail_here("character not allowed in IRI");
      }
      t.text.push_back(static_cast<char>(c));
    }
  }

  void lex_string(Token& t) {
    const int quote = src_.get();
    t.kind = Tok::kString;
    bool long_form = false;
    if (src_.peek() == quote && src_.peek(1) == quote) {
      src_.get();
      src_.get();
      long_form = true;
    } else if (src_.peek() == quote) {
      src_.get();
      return;  // empty short string
    }
    for (;;) {
      const int c = src_.get();
      if (c < 0) fail("unterminated string literal", t.offset);
      if (c == quote) {
        if (!long_form) return;
        if (src_.peek() == quote && src_.peek(1) == quote) {
          // Closing delimiter; extra quotes immediately before it belong to the content.
          while (src_.peek(2) == quote) t.text.push_back(static_cast<char>(src_.get()));
          src_.get();
          src_.get();
          return;
        }
        t.text.push_back(static_cast<char>(c));
        continue;
      }
      if (!long_form && (c == '\n' || c == '\r')) fail_here("newline in short string literal");
      if (c != '\\') {
        t.text.push_back(static_cast<char>(c));
        continue;
      }
      const int e = src_.get();
      switch (e) {
        case 't': t.text.push_back('\t'); break;
        case 'b': t.text.push_back('\b'); break;
        case 'n': t.text.push_back('\n'); break;
        case 'r': t.text.push_back('\r'); break;
        case 'f': t.text.push_back('\f'); break;
        case '"': t.text.push_back('"'); break;
        case '\'': t.text.push_back('\''); break;
        case '\\': t.text.push_back('\\'); break;
        case 'u': append_utf8(t.text, read_hex(4)); break;
        case 'U': append_utf8(t.text, read_hex(8)); break;
        default: fail_here("bad escape in string literal");
      }
    }
  }

  void lex_number(Token& t) {
    t.kind = Tok::kNumber;
    auto digits = [&] {
      while (src_.peek() >= '0' && src_.peek() <= '9') t.text.push_back(static_cast<char>(src_.get()));
    };
    if (src_.peek() == '+' || src_.peek() == '-') t.text.push_back(static_cast<char>(src_.get()));
    digits();
    t.aux = "integer";
    if (src_.peek() == '.' && src_.peek(1) >= '0' && src_.peek(1) <= '9') {
      t.text.push_back(static_cast<char>(src_.get()));
      digits();
      t.aux = "decimal";
    }
    if (src_.peek() == 'e' || src_.peek() == 'E') {
      t.text.push_back(static_cast<char>(src_.get()));
      if (src_.peek() == '+' || src_.peek() == '-') t.text.push_back(static_cast<char>(src_.get()));
      digits();
      t.aux = "double";
    }
    const auto last = t.text.back();
    if (last < '0' || last > '9') fail("malformed numeric literal", t.offset);
  }

  void lex_at(Token& t) {
    src_.get();
    std::string word;
    for (int c = src_.peek(); (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-';
         c = src_.peek()) {
      word.push_back(static_cast<char>(src_.get()));
    }
    if (word.empty()) fail("stray '@'", t.offset);
    t.text = std::move(word);
    t.kind = (t.text == "prefix" || t.text == "base") ? Tok::kAtKeyword : Tok::kLangTag;
  }

  Source src_;
  std::optional<Token> lookahead_;
};

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto x = static_cast<char>(a[i] | 0x20);
    const auto y = static_cast<char>(b[i] | 0x20);
    if (x != y) return false;
  }
  return true;
}

bool has_scheme(std::string_view iri) {
  const auto colon = iri.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  for (std::size_t i = 0; i < colon; ++i) {
    const char c = iri[i];
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (i > 0 && ((c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.'));
    if (!ok) return false;
  }
  return true;
}

class Parser {
 public:
  Parser(std::istream& in, const TripleSink& sink, PrefixTable* declared)
      : lex_(in), sink_(sink), declared_(declared) {}

  void run() {
    while (lex_.peek().kind != Tok::kEof) statement();
  }

 private:
  void statement() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::kAtKeyword) {
      Token kw = lex_.next();
      directive(kw.text == "prefix");
      expect(Tok::kDot, "'.' after directive");
      return;
    }
    if (t.kind == Tok::kWord && (iequals(t.text, "prefix") || iequals(t.text, "base"))) {
      Token kw = lex_.next();
      directive(iequals(kw.text, "prefix"));
      return;
    }
    if (t.kind == Tok::kOpenBracket) {
      Term subject = blank_property_list();
      if (lex_.peek().kind != Tok::kDot) predicate_object_list(subject);
    } else {
      Term subject = subject_term();
      predicate_object_list(subject);
    }
    expect(Tok::kDot, "'.' at end of statement");
  }

  void directive(bool is_prefix) {
    if (is_prefix) {
      Token name = lex_.next();
      if (name.kind != Tok::kPname || name.text.back() != ':' ||
          name.text.find(':') != name.text.size() - 1) {
        lex_.fail("expected prefix name ending in ':'", name.offset);
      }
      Token iri = expect(Tok::kIri, "namespace IRI");
      name.text.pop_back();
      prefixes_.bind(name.text, resolve(iri.text));
      if (declared_ != nullptr) declared_->bind(name.text, resolve(iri.text));
    } else {
      Token iri = expect(Tok::kIri, "base IRI");
      base_ = resolve(iri.text);
    }
  }

  Token expect(Tok kind, const char* what) {
    Token t = lex_.next();
    if (t.kind != kind) lex_.fail(std::string("expected ") + what, t.offset);
    return t;
  }

  std::string resolve(const std::string& iri) const {
    if (base_.empty() || has_scheme(iri)) return iri;
    if (iri.empty()) return base_;
    if (iri.front() == '#') {
      const auto hash = base_.find('#');
      return base_.substr(0, hash) + iri;
    }
    const auto slash = base_.rfind('/');
    return slash == std::string::npos ? base_ + iri : base_.substr(0, slash + 1) + iri;
  }

  std::string expand(const Token& t) {
    const auto colon = t.text.find(':');
    const std::string prefix = t.text.substr(0, colon);
    if (!prefixes_.contains(prefix)) lex_.fail("undeclared prefix '" + prefix + "'", t.offset);
    return prefixes_.namespace_of(prefix) + t.text.substr(colon + 1);
  }

  Term iri_term(const Token& t) {
    if (t.kind == Tok::kIri) return Term::iri(resolve(t.text));
    return Term::iri(expand(t));
  }

  Term subject_term() {
    Token t = lex_.next();
    switch (t.kind) {
      case Tok::kIri:
      case Tok::kPname: return iri_term(t);
      case Tok::kBlank: return Term::blank(t.text);
      case Tok::kOpenParen: lex_.fail("collections are not supported", t.offset);
      default: lex_.fail("expected subject", t.offset);
    }
  }

  Term verb() {
    Token t = lex_.next();
    if (t.kind == Tok::kWord && t.text == "a") return Term::iri(vocab::kRdfType);
    if (t.kind == Tok::kIri || t.kind == Tok::kPname) return iri_term(t);
    lex_.fail("expected predicate", t.offset);
  }

  Term object_term() {
    Token t = lex_.next();
    switch (t.kind) {
      case Tok::kIri:
      case Tok::kPname: return iri_term(t);
      case Tok::kBlank: return Term::blank(t.text);
      case Tok::kOpenBracket: return blank_property_list_open();
      case Tok::kOpenParen: lex_.fail("collections are not supported", t.offset);
      case Tok::kNumber:
        return Term::literal(t.text, vocab::iri(ns::kXsd, t.aux));
      case Tok::kWord:
        if (t.text == "true" || t.text == "false") {
          return Term::literal(t.text, vocab::iri(ns::kXsd, "boolean"));
        }
        lex_.fail("unexpected word '" + t.text + "'", t.offset);
      case Tok::kString: {
        Term lit = Term::literal(std::move(t.text));
        if (lex_.peek().kind == Tok::kLangTag) {
          lit.language = lex_.next().text;
        } else if (lex_.peek().kind == Tok::kCaretCaret) {
          lex_.next();
          Token dt = lex_.next();
          if (dt.kind != Tok::kIri && dt.kind != Tok::kPname) lex_.fail("expected datatype IRI", dt.offset);
          lit.datatype = iri_term(dt).value;
        }
        return lit;
      }
      default: lex_.fail("expected object", t.offset);
    }
  }

  Term blank_property_list() {
    lex_.next();  // '['
    return blank_property_list_open();
  }

  Term blank_property_list_open() {
    Term node = Term::blank("genid" + std::to_string(++blank_counter_));
    if (lex_.peek().kind != Tok::kCloseBracket) predicate_object_list(node);
    expect(Tok::kCloseBracket, "']'");
    return node;
  }

  void predicate_object_list(const Term& subject) {
    for (;;) {
      Term predicate = verb();
      for (;;) {
        Term object = object_term();
        sink_(Triple{subject, predicate, std::move(object)});
        if (lex_.peek().kind != Tok::kComma) break;
        lex_.next();
      }
      if (lex_.peek().kind != Tok::kSemicolon) return;
      while (lex_.peek().kind == Tok::kSemicolon) lex_.next();
      const Tok k = lex_.peek().kind;
      if (k == Tok::kDot || k == Tok::kCloseBracket || k == Tok::kEof) return;
    }
  }

  Lexer lex_;
  const TripleSink& sink_;
  PrefixTable* declared_;
  PrefixTable prefixes_;
  std::string base_;
  std::uint64_t blank_counter_ = 0;
};

}  // namespace

void parse_turtle(std::istream& in, const TripleSink& sink, PrefixTable* declared) {
  Parser(in, sink, declared).run();
}

std::vector<Triple> parse_turtle(std::string_view document, PrefixTable* declared) {
  std::istringstream in{std::string(document)};
  std::vector<Triple> out;
  parse_turtle(in, [&](Triple&& t) { out.push_back(std::move(t)); }, declared);
  return out;
}

}  // namespace geokg
