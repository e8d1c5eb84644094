#include "rdf_lexical.hpp"

#include <cstdio>

namespace medsgraph::rdf::lexical {
namespace {

void append_u_escape(std::string& out, uint32_t code_point) {
  char buf[12];
  if (code_point <= 0xFFFF)
    std::snprintf(buf, sizeof(buf), "\\u%04X", code_point);
  else
    std::snprintf(buf, sizeof(buf), "\\U%08X", code_point);
  out += buf;
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

void append_escaped_iri(std::string& out, std::string_view iri) {
  for (const char c : iri) {
    const auto byte = static_cast<unsigned char>(c);
    if (byte <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' ||
        c == '}' || c == '|' || c == '^' || c == '`' || c == '\\') {
      append_u_escape(out, byte);
    } else {
      out += c;
    }
  }
}

void append_escaped_literal(std::string& out, std::string_view lexical) {
  for (const char c : lexical) {
    switch (c) {
      case '\\':
        out += "\\\\";
        break;
      case '"':
        out += "\\\"";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\b':
        out += "\\b";
        break;
      case '\f':
        out += "\\f";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20)
          append_u_escape(out, static_cast<unsigned char>(c));
        else
          out += c;
    }
  }
}

void append_utf8(std::string& out, uint32_t cp) {
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

bool decode_unicode_escape(std::string_view s, size_t& i, std::string& out) {
  if (i + 1 >= s.size()) return false;
  const char kind = s[i + 1];
  const size_t digits = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
  if (digits == 0 || i + 1 + digits >= s.size() + 0) {
    if (digits == 0) return false;
  }
  if (i + 2 + digits > s.size()) return false;
  uint32_t cp = 0;
  for (size_t k = 0; k < digits; ++k) {
    const int v = hex_value(s[i + 2 + k]);
    if (v < 0) return false;
    cp = cp * 16 + static_cast<uint32_t>(v);
  }
  if (cp > 0x10FFFF) return false;
  append_utf8(out, cp);
  i += 2 + digits;
  return true;
}

}  // namespace medsgraph::rdf::lexical
