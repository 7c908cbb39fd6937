#include "graphsquash/rdf/term.hpp"

#include <cctype>
#include <cstdio>

#include "graphsquash/errors.hpp"

namespace gsq::rdf {

namespace {

bool iri_char_ok(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return u > 0x20 && c != '<' && c != '>';
}

void append_u4(std::string& out, unsigned value) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "\\u%04X", value);
  out += buf;
}

}  // namespace

Term make_iri(std::string text) {
  if (text.empty()) throw Error("IRI must be non-empty");
  for (char c : text) {
    if (!iri_char_ok(c)) {
      throw Error("IRI contains whitespace or angle brackets: " + text);
    }
  }
  return Term{TermKind::Iri, std::move(text), "", ""};
}

Term make_blank(std::string label) {
  if (label.empty()) throw Error("blank node label must be non-empty");
  return Term{TermKind::Blank, std::move(label), "", ""};
}

Term make_literal(std::string value, std::string datatype, std::string lang) {
  if (!lang.empty()) {
    return Term{TermKind::Literal, std::move(value), kRdfLangString, std::move(lang)};
  }
  if (datatype.empty()) datatype = kXsdString;
  return Term{TermKind::Literal, std::move(value), std::move(datatype), ""};
}

std::size_t TermHash::operator()(const Term& t) const noexcept {
  // FNV-1a over kind and fields with separators.
  std::uint64_t h = 0xCBF29CE484222325ull;
  auto mix = [&h](const char* data, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      h ^= static_cast<unsigned char>(data[i]);
      h *= 0x100000001B3ull;
    }
    h ^= 0xFF;
    h *= 0x100000001B3ull;
  };
  char kind = static_cast<char>(t.kind);
  mix(&kind, 1);
  mix(t.lexical.data(), t.lexical.size());
  mix(t.datatype.data(), t.datatype.size());
  mix(t.lang.data(), t.lang.size());
  return static_cast<std::size_t>(h);
}

std::string to_ntriples(const Term& t) {
  std::string out;
  switch (t.kind) {
    case TermKind::Iri: {
      out += '<';
      for (char c : t.lexical) {
        unsigned char u = static_cast<unsigned char>(c);
        // Escape what the grammar forbids inside IRIREF; multi-byte UTF-8
        // passes through untouched.
        if (u <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' ||
            c == '}' || c == '|' || c == '^' || c == '`' || c == '\\') {
          append_u4(out, u);
        } else {
          out += c;
        }
      }
      out += '>';
      return out;
    }
    case TermKind::Blank:
      return "_:" + t.lexical;
    case TermKind::Literal: {
      out += '"';
      for (char c : t.lexical) {
        switch (c) {
          case '\\': out += "\\\\"; break;
          case '"': out += "\\\""; break;
          case '\n': out += "\\n"; break;
          case '\r': out += "\\r"; break;
          case '\t': out += "\\t"; break;
          default: {
            unsigned char u = static_cast<unsigned char>(c);
            if (u < 0x20) {
              append_u4(out, u);
            } else {
              out += c;
            }
          }
        }
      }
      out += '"';
      if (!t.lang.empty()) {
        out += '@';
        out += t.lang;
      } else if (t.datatype != kXsdString) {
        out += "^^<" + t.datatype + ">";
      }
      return out;
    }
  }
  return out;
}

}  // namespace gsq::rdf
