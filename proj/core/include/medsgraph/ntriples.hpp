#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "medsgraph/graph.hpp"

namespace medsgraph::rdf {

class ParseError : public std::runtime_error {
 public:
  ParseError(size_t line, const std::string& message);
  size_t line() const { return line_; }

 private:
  size_t line_;
};

/// The input names a blank node, which this data model cannot represent.
class BlankNodeUnsupported : public ParseError {
 public:
  explicit BlankNodeUnsupported(size_t line);
};

/// N-Triples form of one term.
std::string serialize_term(const Term& term);

/// Canonical N-Triples: UTF-8, LF line endings, one statement per line,
/// lines ordered by the (subject, predicate, object) serialized forms.
/// A pure function of the triple set, so any two graphs that compare equal
/// serialize to identical bytes.
std::string serialize_ntriples_canonical(const Graph& g);
void serialize_ntriples_canonical(const Graph& g, std::ostream& out);

/// Parses N-Triples. Plain string literals load as xsd:string. Throws
/// ParseError (with 1-based line number) on malformed input, a datatype
/// outside the supported set, or a language-tagged literal, and
/// BlankNodeUnsupported when a blank node label appears.
Graph parse_ntriples(std::string_view text);
Graph parse_ntriples(std::istream& in);

}  // namespace medsgraph::rdf
