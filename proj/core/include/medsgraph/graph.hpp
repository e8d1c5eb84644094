#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "medsgraph/term.hpp"

namespace medsgraph::rdf {

/// One RDF statement. Subject and predicate must be IRIs.
struct Triple {
  Triple(Term subject_term, Term predicate_term, Term object_term);

  Term subject;
  Term predicate;
  Term object;

  friend bool operator==(const Triple&, const Triple&) = default;
};

using TermId = uint32_t;

struct TripleIds {
  TermId subject;
  TermId predicate;
  TermId object;

  friend bool operator==(const TripleIds&, const TripleIds&) = default;
};

/// A set of triples over interned terms, with subject and predicate indexes.
///
/// Inserting a duplicate triple is a no-op, so size() is the number of
/// distinct statements; equality ignores insertion order. Term ids are dense,
/// stable for the life of the graph, and private to one instance — two graphs
/// number their terms differently. A completed graph is safe to share across
/// threads through const access.
class Graph {
 public:
  bool insert(Term subject, Term predicate, Term object);
  bool insert(const Triple& triple);

  size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  bool contains(const Triple& triple) const;

  size_t term_count() const { return terms_.size(); }
  const Term& term(TermId id) const { return terms_[id]; }
  std::optional<TermId> find_term(const Term& t) const;
  const std::vector<TripleIds>& triples() const { return triples_; }

  /// Indices into triples() whose subject / predicate is the given term.
  std::span<const uint32_t> with_subject(TermId subject) const;
  std::span<const uint32_t> with_predicate(TermId predicate) const;

  /// Objects of (subject, predicate), in insertion order.
  std::vector<TermId> objects_of(TermId subject, TermId predicate) const;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (const TripleIds& t : triples_)
      fn(terms_[t.subject], terms_[t.predicate], terms_[t.object]);
  }

  /// Set union; `other` keeps its own term numbering.
  void merge(const Graph& other);

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  struct TripleIdsHash {
    size_t operator()(const TripleIds& t) const {
      uint64_t h = t.subject;
      h = h * 0x9e3779b97f4a7c15ULL + t.predicate;
      h = h * 0x9e3779b97f4a7c15ULL + t.object;
      h ^= h >> 29;
      return static_cast<size_t>(h * 0xbf58476d1ce4e5b9ULL);
    }
  };

  TermId intern(const Term& t);

  std::vector<Term> terms_;
  std::unordered_map<Term, TermId, TermHash> term_ids_;
  std::vector<TripleIds> triples_;
  std::unordered_set<TripleIds, TripleIdsHash> seen_;
  std::unordered_map<TermId, std::vector<uint32_t>> by_subject_;
  std::unordered_map<TermId, std::vector<uint32_t>> by_predicate_;
};

}  // namespace medsgraph::rdf
