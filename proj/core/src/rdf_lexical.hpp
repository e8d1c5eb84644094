// Shared escaping/unescaping for the N-Triples and Turtle codecs.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace medsgraph::rdf::lexical {

// IRIREF escaping: control characters and <>"{}|^`\ become \uXXXX.
void append_escaped_iri(std::string& out, std::string_view iri);

// Literal escaping: ECHAR for \t \b \n \r \f \\ \", \uXXXX for other
// control characters; everything else passes through as UTF-8.
void append_escaped_literal(std::string& out, std::string_view lexical);

// Appends a UTF-8 encoding of the code point.
void append_utf8(std::string& out, uint32_t code_point);

// Decodes \uXXXX / \UXXXXXXXX at s[i] (i at the backslash). Advances i past
// the escape and appends the code point; false on malformed input.
bool decode_unicode_escape(std::string_view s, size_t& i, std::string& out);

}  // namespace medsgraph::rdf::lexical
