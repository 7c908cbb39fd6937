#include "graphsquash/rdf/ntriples.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "graphsquash/errors.hpp"

namespace gsq::rdf {

namespace {

bool is_ws(char c) { return c == ' ' || c == '\t'; }

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

// Scanner over one physical line.
class LineScanner {
 public:
  LineScanner(std::string_view line, std::size_t lineno)
      : line_(line), lineno_(lineno) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(lineno_, pos_ + 1, msg);
  }

  void skip_ws() {
    while (pos_ < line_.size() && is_ws(line_[pos_])) ++pos_;
  }

  bool at_end() const { return pos_ >= line_.size(); }
  char peek() const { return line_[pos_]; }
  char take() { return line_[pos_++]; }

  bool comment_or_end() {
    skip_ws();
    return at_end() || peek() == '#';
  }

  std::uint32_t hex_escape(int digits) {
    std::uint32_t cp = 0;
    for (int i = 0; i < digits; ++i) {
      if (at_end()) fail("truncated \\u escape");
      char c = take();
      cp <<= 4;
      if (c >= '0' && c <= '9') cp |= static_cast<std::uint32_t>(c - '0');
      else if (c >= 'a' && c <= 'f') cp |= static_cast<std::uint32_t>(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F') cp |= static_cast<std::uint32_t>(c - 'A' + 10);
      else fail("bad hex digit in escape");
    }
    return cp;
  }

  Term iri() {
    take();  // '<'
    std::string text;
    while (true) {
      if (at_end()) fail("unterminated IRI");
      char c = take();
      if (c == '>') break;
      if (c == '\\') {
        if (at_end()) fail("truncated escape in IRI");
        char e = take();
        if (e == 'u') append_utf8(text, hex_escape(4));
        else if (e == 'U') append_utf8(text, hex_escape(8));
        else fail("invalid escape in IRI");
        continue;
      }
      unsigned char u = static_cast<unsigned char>(c);
      if (u <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' ||
          c == '|' || c == '^' || c == '`') {
        fail("character not allowed in IRI");
      }
      text += c;
    }
    if (text.empty()) fail("empty IRI");
    try {
      return make_iri(std::move(text));
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  Term blank() {
    take();  // '_'
    if (at_end() || take() != ':') fail("expected ':' after '_'");
    std::string label;
    while (!at_end()) {
      char c = peek();
      if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
          (c >= '0' && c <= '9') || c == '_' || c == '-') {
        label += take();
      } else {
        break;
      }
    }
    if (label.empty()) fail("empty blank node label");
    return make_blank(std::move(label));
  }

  Term literal() {
    take();  // '"'
    std::string value;
    while (true) {
      if (at_end()) fail("unterminated literal");
      char c = take();
      if (c == '"') break;
      if (c == '\\') {
        if (at_end()) fail("truncated escape in literal");
        char e = take();
        switch (e) {
          case 't': value += '\t'; break;
          case 'b': value += '\b'; break;
          case 'n': value += '\n'; break;
          case 'r': value += '\r'; break;
          case 'f': value += '\f'; break;
          case '"': value += '"'; break;
          case '\'': value += '\''; break;
          case '\\': value += '\\'; break;
          case 'u': append_utf8(value, hex_escape(4)); break;
          case 'U': append_utf8(value, hex_escape(8)); break;
          default: fail("invalid escape in literal");
        }
        continue;
      }
      value += c;
    }
    std::string datatype, lang;
    if (!at_end() && peek() == '@') {
      take();
      while (!at_end()) {
        char c = peek();
        if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
            (c >= '0' && c <= '9') || c == '-') {
          lang += take();
        } else {
          break;
        }
      }
      if (lang.empty()) fail("empty language tag");
    } else if (pos_ + 1 < line_.size() && peek() == '^' && line_[pos_ + 1] == '^') {
      pos_ += 2;
      if (at_end() || peek() != '<') fail("expected IRI after '^^'");
      datatype = iri().lexical;
    }
    return make_literal(std::move(value), std::move(datatype), std::move(lang));
  }

  Term term() {
    if (at_end()) fail("unexpected end of line");
    char c = peek();
    if (c == '<') return iri();
    if (c == '_') return blank();
    if (c == '"') return literal();
    fail("expected IRI, blank node, or literal");
  }

 private:
  std::string_view line_;
  std::size_t lineno_;
  std::size_t pos_ = 0;
};

void parse_line(std::string_view line, std::size_t lineno, GraphBuilder& b,
                const ParseOptions& opt) {
  LineScanner sc(line, lineno);
  if (sc.comment_or_end()) return;

  Term s = sc.term();
  if (s.kind == TermKind::Literal) sc.fail("literal in subject position");
  sc.skip_ws();
  Term p = sc.term();
  if (p.kind != TermKind::Iri) sc.fail("predicate must be an IRI");
  sc.skip_ws();
  Term o = sc.term();
  sc.skip_ws();
  if (sc.at_end() || sc.take() != '.') sc.fail("expected '.'");
  if (!sc.comment_or_end()) sc.fail("trailing characters after '.'");

  if (o.kind == TermKind::Literal) {
    if (opt.strip_literals) return;
    if (opt.reject_literals) throw LiteralRejected(lineno);
  }
  b.add(s, p, o);
}

}  // namespace

Graph parse_ntriples(std::istream& in, const ParseOptions& opt) {
  GraphBuilder b;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    parse_line(line, lineno, b, opt);
  }
  return std::move(b).freeze();
}

Graph parse_ntriples(std::string_view text, const ParseOptions& opt) {
  std::istringstream in{std::string(text)};
  return parse_ntriples(in, opt);
}

Graph parse_ntriples_file(const std::filesystem::path& path, const ParseOptions& opt) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return parse_ntriples(in, opt);
}

void serialize_ntriples(const Graph& g, std::ostream& out) {
  for (const TripleIds& t : g.triples()) {
    out << to_ntriples(g.term(t.s)) << ' ' << to_ntriples(g.term(t.p)) << ' '
        << to_ntriples(g.term(t.o)) << " .\n";
  }
}

std::string serialize_ntriples(const Graph& g) {
  std::ostringstream out;
  serialize_ntriples(g, out);
  return out.str();
}

void write_ntriples_file(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  serialize_ntriples(g, out);
}

}  // namespace gsq::rdf
