// Test-only graph surgery: rebuild a graph while dropping or adding
// statements. Used by the validator mutation suites.
#pragma once

#include <functional>

#include "medsgraph/graph.hpp"

namespace medsgraph::test {

using TripleFilter =
    std::function<bool(const rdf::Term&, const rdf::Term&, const rdf::Term&)>;

// Copy of g without the triples the filter matches.
inline rdf::Graph drop_matching(const rdf::Graph& g, const TripleFilter& match) {
  rdf::Graph out;
  g.for_each([&](const rdf::Term& s, const rdf::Term& p, const rdf::Term& o) {
    if (!match(s, p, o)) out.insert(s, p, o);
  });
  return out;
}

// Copy of g without the first triple (in insertion order) the filter
// matches; everything else survives.
inline rdf::Graph drop_first_matching(const rdf::Graph& g,
                                      const TripleFilter& match) {
  rdf::Graph out;
  bool dropped = false;
  g.for_each([&](const rdf::Term& s, const rdf::Term& p, const rdf::Term& o) {
    if (!dropped && match(s, p, o)) {
      dropped = true;
      return;
    }
    out.insert(s, p, o);
  });
  return out;
}

inline rdf::Graph with_extra(const rdf::Graph& g,
                             const std::vector<rdf::Triple>& extra) {
  rdf::Graph out;
  g.for_each([&](const rdf::Term& s, const rdf::Term& p, const rdf::Term& o) {
    out.insert(s, p, o);
  });
  for (const rdf::Triple& t : extra) out.insert(t);
  return out;
}

}  // namespace medsgraph::test
