#pragma once

#include <map>
#include <string>
#include <string_view>

#include "medsgraph/graph.hpp"
#include "medsgraph/ntriples.hpp"

namespace medsgraph::rdf {

/// Serializes the graph as Turtle with the given prefix table
/// (prefix -> namespace IRI). Deterministic: prefix declarations sorted by
/// prefix, subjects/predicates/objects in canonical term order with rdf:type
/// leading each subject block. Literals always carry explicit quotes (never
/// the bare numeric/boolean shorthand), so lexical forms survive a
/// parse/serialize cycle byte-exactly.
std::string serialize_turtle(const Graph& g,
                             const std::map<std::string, std::string>& prefixes);

/// Parses the Turtle subset this toolkit emits: @prefix declarations,
/// prefixed names, IRIs, typed literals, 'a', and ';'/',' statement groups.
/// No blank nodes, collections, numeric shorthand, or multi-line strings.
/// Throws ParseError / BlankNodeUnsupported like parse_ntriples.
Graph parse_turtle(std::string_view text);

}  // namespace medsgraph::rdf
