#include "medsgraph/graph.hpp"

namespace medsgraph::rdf {

Triple::Triple(Term subject_term, Term predicate_term, Term object_term)
    : subject(std::move(subject_term)),
      predicate(std::move(predicate_term)),
      object(std::move(object_term)) {
  if (!subject.is_iri()) throw BadTerm("triple subject must be an IRI");
  if (!predicate.is_iri()) throw BadTerm("triple predicate must be an IRI");
}

TermId Graph::intern(const Term& t) {
  const auto it = term_ids_.find(t);
  if (it != term_ids_.end()) return it->second;
  const auto id = static_cast<TermId>(terms_.size());
  terms_.push_back(t);
  term_ids_.emplace(t, id);
  return id;
}

bool Graph::insert(Term subject, Term predicate, Term object) {
  return insert(
      Triple(std::move(subject), std::move(predicate), std::move(object)));
}

bool Graph::insert(const Triple& triple) {
  const TripleIds ids{intern(triple.subject), intern(triple.predicate),
                      intern(triple.object)};
  if (!seen_.insert(ids).second) return false;
  const auto index = static_cast<uint32_t>(triples_.size());
  triples_.push_back(ids);
  by_subject_[ids.subject].push_back(index);
  by_predicate_[ids.predicate].push_back(index);
  return true;
}

bool Graph::contains(const Triple& triple) const {
  const auto s = find_term(triple.subject);
  const auto p = find_term(triple.predicate);
  const auto o = find_term(triple.object);
  if (!s || !p || !o) return false;
  return seen_.contains(TripleIds{*s, *p, *o});
}

std::optional<TermId> Graph::find_term(const Term& t) const {
  const auto it = term_ids_.find(t);
  if (it == term_ids_.end()) return std::nullopt;
  return it->second;
}

std::span<const uint32_t> Graph::with_subject(TermId subject) const {
  const auto it = by_subject_.find(subject);
  if (it == by_subject_.end()) return {};
  return it->second;
}

std::span<const uint32_t> Graph::with_predicate(TermId predicate) const {
  const auto it = by_predicate_.find(predicate);
  if (it == by_predicate_.end()) return {};
  return it->second;
}

std::vector<TermId> Graph::objects_of(TermId subject, TermId predicate) const {
  std::vector<TermId> out;
  for (const uint32_t index : with_subject(subject)) {
    const TripleIds& t = triples_[index];
    if (t.predicate == predicate) out.push_back(t.object);
  }
  return out;
}

void Graph::merge(const Graph& other) {
  // Remap the other graph's term ids into this one's numbering.
  std::vector<TermId> remap(other.terms_.size());
  for (size_t i = 0; i < other.terms_.size(); ++i)
    remap[i] = intern(other.terms_[i]);
  for (const TripleIds& t : other.triples_) {
    const TripleIds ids{remap[t.subject], remap[t.predicate], remap[t.object]};
    if (!seen_.insert(ids).second) continue;
    const auto index = static_cast<uint32_t>(triples_.size());
    triples_.push_back(ids);
    by_subject_[ids.subject].push_back(index);
    by_predicate_[ids.predicate].push_back(index);
  }
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.size() != b.size()) return false;
  for (const TripleIds& t : a.triples_) {
    const auto s = b.find_term(a.term(t.subject));
    const auto p = b.find_term(a.term(t.predicate));
    const auto o = b.find_term(a.term(t.object));
    if (!s || !p || !o || !b.seen_.contains(TripleIds{*s, *p, *o}))
      return false;
  }
  return true;
}

}  // namespace medsgraph::rdf
