#include "graphsquash/sparql/parse.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "graphsquash/errors.hpp"

namespace gsq::sparql {

namespace {

struct Token {
  enum class Type { Iri, PName, Var, Literal, LBrace, RBrace, Dot, Star, Word, Punct, End };
  Type type = Type::End;
  std::string text;       // word text, var name, pname, iri text, or punctuation
  rdf::Term literal;      // Type::Literal only
  std::size_t offset = 0;
};

const std::set<std::string> kUnsupported = {
    "FILTER", "BIND",  "VALUES",    "GRAPH",    "SERVICE", "MINUS",  "EXISTS",
    "LIMIT",  "OFFSET", "ORDER",    "GROUP",    "HAVING",  "ASK",    "CONSTRUCT",
    "DESCRIBE", "BASE", "FROM",     "REDUCED",  "NAMED",   "UNDEF",  "NOT",
    "INSERT", "DELETE", "SUBQUERY", "AS"};

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) { tokenize(); }

  Query parse() {
    Query q;
    // prologue
    while (is_word("PREFIX")) {
      ++i_;
      const Token& ns = peek();
      if (ns.type != Token::Type::PName || !ns.text.ends_with(':') ||
          ns.text.find(':') != ns.text.size() - 1) {
        fail(ns, "expected prefix name ending in ':'");
      }
      std::string prefix = ns.text.substr(0, ns.text.size() - 1);
      ++i_;
      const Token& iri = peek();
      if (iri.type != Token::Type::Iri) fail(iri, "expected IRI in PREFIX");
      q.prefixes[prefix] = iri.text;
      ++i_;
    }

    check_unsupported();
    if (!is_word("SELECT")) fail(peek(), "expected SELECT");
    ++i_;
    if (is_word("DISTINCT")) {
      q.distinct = true;
      ++i_;
    }
    check_unsupported();

    if (peek().type == Token::Type::Star) {
      q.wildcard = true;
      ++i_;
    } else {
      while (peek().type == Token::Type::Var) {
        const std::string& name = peek().text;
        if (std::find(q.projection.begin(), q.projection.end(), name) !=
            q.projection.end()) {
          fail(peek(), "duplicate variable in projection");
        }
        q.projection.push_back(name);
        ++i_;
      }
      if (q.projection.empty()) fail(peek(), "expected '*' or variables after SELECT");
    }

    check_unsupported();
    if (!is_word("WHERE")) fail(peek(), "expected WHERE");
    ++i_;
    expect(Token::Type::LBrace, "expected '{' after WHERE");
    prefixes_ = &q.prefixes;
    q.body = group();
    expect(Token::Type::RBrace, "expected '}'");
    check_unsupported();
    if (peek().type != Token::Type::End) fail(peek(), "trailing tokens after query");

    // every projected variable must occur in the body
    if (!q.wildcard) {
      auto body_vars = q.body_variables();
      for (const std::string& v : q.projection) {
        if (std::find(body_vars.begin(), body_vars.end(), v) == body_vars.end()) {
          throw SyntaxError(1, 1, "projected variable ?" + v + " not in query body");
        }
      }
    }
    return q;
  }

 private:
  std::string_view text_;
  std::vector<Token> tokens_;
  std::size_t i_ = 0;
  const std::map<std::string, std::string>* prefixes_ = nullptr;

  [[noreturn]] void fail(const Token& tok, const std::string& msg) const {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < tok.offset && k < text_.size(); ++k) {
      if (text_[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SyntaxError(line, col, msg);
  }

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t k = i_ + ahead;
    return k < tokens_.size() ? tokens_[k] : tokens_.back();
  }

  bool is_word(std::string_view kw) const {
    return peek().type == Token::Type::Word && upper(peek().text) == kw;
  }

  void check_unsupported() const {
    if (peek().type == Token::Type::Word && kUnsupported.contains(upper(peek().text))) {
      throw UnsupportedFeature(upper(peek().text));
    }
  }

  void expect(Token::Type t, const std::string& msg) {
    if (peek().type != t) {
      check_unsupported();
      fail(peek(), msg);
    }
    ++i_;
  }

  std::unique_ptr<Node> group() {
    auto node = unit();
    while (true) {
      if (is_word("UNION")) {
        ++i_;
        auto rhs = unit();
        auto parent = std::make_unique<Node>();
        parent->kind = Node::Kind::Union;
        parent->left = std::move(node);
        parent->right = std::move(rhs);
        node = std::move(parent);
      } else if (is_word("OPTIONAL")) {
        ++i_;
        auto rhs = unit();
        auto parent = std::make_unique<Node>();
        parent->kind = Node::Kind::Optional;
        parent->left = std::move(node);
        parent->right = std::move(rhs);
        node = std::move(parent);
      } else {
        break;
      }
    }
    return node;
  }

  std::unique_ptr<Node> unit() {
    check_unsupported();
    if (peek().type == Token::Type::LBrace) {
      ++i_;
      auto n = group();
      expect(Token::Type::RBrace, "expected '}'");
      return n;
    }
    return bgp();
  }

  bool at_term_start() const {
    switch (peek().type) {
      case Token::Type::Iri:
      case Token::Type::PName:
      case Token::Type::Var:
      case Token::Type::Literal:
        return true;
      case Token::Type::Word:
        return peek().text == "a";
      default:
        return false;
    }
  }

  std::unique_ptr<Node> bgp() {
    auto node = std::make_unique<Node>();
    node->kind = Node::Kind::Bgp;
    if (!at_term_start()) {
      check_unsupported();
      fail(peek(), "expected triple pattern");
    }
    while (at_term_start()) {
      TriplePattern tp;
      tp.s = pattern_term(/*predicate_position=*/false);
      tp.p = pattern_term(/*predicate_position=*/true);
      tp.o = pattern_term(/*predicate_position=*/false);

      if (const rdf::Term* s = as_term(tp.s)) {
        if (s->kind == rdf::TermKind::Literal) fail(peek(), "literal in subject position");
        if (s->kind == rdf::TermKind::Blank) fail(peek(), "blank node in query");
      }
      if (const rdf::Term* p = as_term(tp.p)) {
        if (p->kind != rdf::TermKind::Iri) fail(peek(), "pattern predicate must be an IRI");
      }
      if (const rdf::Term* o = as_term(tp.o)) {
        if (o->kind == rdf::TermKind::Blank) fail(peek(), "blank node in query");
      }
      node->patterns.push_back(std::move(tp));

      if (peek().type == Token::Type::Dot) {
        ++i_;
        continue;  // optional trailing dot: loop re-checks at_term_start()
      }
      break;
    }
    return node;
  }

  PatternTerm pattern_term(bool predicate_position) {
    check_unsupported();
    const Token& tok = peek();
    switch (tok.type) {
      case Token::Type::Var: {
        ++i_;
        return Variable{tok.text};
      }
      case Token::Type::Iri: {
        ++i_;
        return rdf::make_iri(tok.text);
      }
      case Token::Type::PName: {
        ++i_;
        return expand_pname(tok);
      }
      case Token::Type::Literal: {
        ++i_;
        return tok.literal;
      }
      case Token::Type::Word:
        if (tok.text == "a" && predicate_position) {
          ++i_;
          return rdf::make_iri(rdf::kRdfType);
        }
        fail(tok, "unexpected token '" + tok.text + "'");
      default:
        fail(tok, "expected term");
    }
  }

  rdf::Term expand_pname(const Token& tok) {
    std::size_t colon = tok.text.find(':');
    std::string prefix = tok.text.substr(0, colon);
    std::string local = tok.text.substr(colon + 1);
    auto it = prefixes_->find(prefix);
    if (it == prefixes_->end()) fail(tok, "unknown prefix '" + prefix + ":'");
    return rdf::make_iri(it->second + local);
  }

  [[noreturn]] void fail_at(std::size_t offset, const std::string& msg) const {
    Token t;
    t.offset = offset;
    fail(t, msg);
  }

  void tokenize() {
    std::size_t n = text_.size();
    std::size_t i = 0;
    auto word_char = [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    };
    while (i < n) {
      char c = text_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (c == '#') {  // comment to end of line
        while (i < n && text_[i] != '\n') ++i;
        continue;
      }
      Token tok;
      tok.offset = i;
      if (c == '{') {
        tok.type = Token::Type::LBrace;
        ++i;
      } else if (c == '}') {
        tok.type = Token::Type::RBrace;
        ++i;
      } else if (c == '.') {
        tok.type = Token::Type::Dot;
        ++i;
      } else if (c == '*') {
        tok.type = Token::Type::Star;
        ++i;
      } else if (c == ';' || c == ',') {
        throw UnsupportedFeature("predicate-object list");
      } else if (c == '?' || c == '$') {
        ++i;
        std::string name;
        while (i < n && word_char(text_[i])) name += text_[i++];
        if (name.empty()) fail_at(tok.offset, "empty variable name");
        tok.type = Token::Type::Var;
        tok.text = std::move(name);
      } else if (c == '<') {
        ++i;
        std::string iri;
        while (i < n && text_[i] != '>') {
          char ic = text_[i];
          if (static_cast<unsigned char>(ic) <= 0x20) {
            fail_at(tok.offset, "whitespace inside IRI");
          }
          iri += ic;
          ++i;
        }
        if (i >= n) fail_at(tok.offset, "unterminated IRI");
        ++i;  // '>'
        tok.type = Token::Type::Iri;
        tok.text = std::move(iri);
      } else if (c == '"') {
        ++i;
        std::string value;
        bool closed = false;
        while (i < n) {
          char lc = text_[i++];
          if (lc == '"') {
            closed = true;
            break;
          }
          if (lc == '\\') {
            if (i >= n) fail_at(tok.offset, "truncated escape in literal");
            char e = text_[i++];
            switch (e) {
              case 't': value += '\t'; break;
              case 'n': value += '\n'; break;
              case 'r': value += '\r'; break;
              case '"': value += '"'; break;
              case '\\': value += '\\'; break;
              default: fail_at(tok.offset, "invalid escape in literal");
            }
            continue;
          }
          value += lc;
        }
        if (!closed) fail_at(tok.offset, "unterminated literal");
        std::string lang, datatype;
        if (i < n && text_[i] == '@') {
          ++i;
          while (i < n && (std::isalnum(static_cast<unsigned char>(text_[i])) || text_[i] == '-')) {
            lang += text_[i++];
          }
          if (lang.empty()) fail_at(tok.offset, "empty language tag");
        } else if (i + 1 < n && text_[i] == '^' && text_[i + 1] == '^') {
          i += 2;
          if (i >= n || text_[i] != '<') fail_at(tok.offset, "expected IRI after '^^'");
          ++i;
          while (i < n && text_[i] != '>') datatype += text_[i++];
          if (i >= n) fail_at(tok.offset, "unterminated datatype IRI");
          ++i;
        }
        tok.type = Token::Type::Literal;
        tok.literal = rdf::make_literal(std::move(value), std::move(datatype), std::move(lang));
      } else if (word_char(c) || c == ':') {
        std::string word;
        while (i < n && (word_char(text_[i]) || text_[i] == ':' || text_[i] == '-' ||
                         text_[i] == '.')) {
          // a '.' only binds into a pname local part when followed by more
          // word characters, otherwise it terminates the pattern
          if (text_[i] == '.' && !(i + 1 < n && word_char(text_[i + 1]))) break;
          word += text_[i++];
        }
        if (word.find(':') != std::string::npos) {
          tok.type = Token::Type::PName;
        } else {
          tok.type = Token::Type::Word;
        }
        tok.text = std::move(word);
      } else {
        // Anything else becomes a punctuation token; the parser rejects it in
        // context, after unsupported-keyword detection has had its chance.
        tok.type = Token::Type::Punct;
        tok.text = std::string(1, c);
        ++i;
      }
      tokens_.push_back(std::move(tok));
    }
    Token end;
    end.type = Token::Type::End;
    end.offset = n;
    tokens_.push_back(std::move(end));
  }
};

}  // namespace

Query parse_query(std::string_view text) {
  Parser p(text);
  return p.parse();
}

}  // namespace gsq::sparql
