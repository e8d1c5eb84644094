#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "medsgraph/graph.hpp"
#include "medsgraph/iri.hpp"
#include "medsgraph/ntriples.hpp"
#include "medsgraph/term.hpp"
#include "medsgraph/turtle.hpp"
#include "medsgraph/vocabulary.hpp"

using namespace medsgraph;
using rdf::Graph;
using rdf::Term;
using rdf::Triple;
using rdf::XsdType;

namespace {

// Random graphs over a small pool of gnarly terms, for property tests.
Graph random_graph(std::mt19937_64& rng, size_t n_triples) {
  const std::vector<Term> nodes = {
      Term::iri("https://example.org/a"),
      Term::iri("https://example.org/b"),
      Term::iri("https://example.org/x/y%20z"),
      Term::iri("urn:uuid:0000"),
  };
  const std::vector<Term> objects = {
      nodes[0],
      nodes[2],
      Term::str("plain"),
      Term::str("line\nbreak\ttab \"quote\" back\\slash"),
      Term::str("unicode π naïve \u0001"),
      Term::boolean(true),
      Term::integer(-42),
      Term::real(0.1),
      Term::real(-0.0),
      Term::date_time(MicroTimestamp(1234567)),
  };
  Graph g;
  for (size_t i = 0; i < n_triples; ++i) {
    g.insert(nodes[rng() % nodes.size()], nodes[rng() % 2],
             objects[rng() % objects.size()]);
  }
  return g;
}

}  // namespace

TEST_SUITE("rdf_core") {

TEST_CASE("IRIs must be absolute") {
  CHECK_NOTHROW(Term::iri("https://example.org/x"));
  CHECK_NOTHROW(Term::iri("urn:x"));
  CHECK_THROWS_AS(Term::iri("relative/path"), rdf::BadTerm);
  CHECK_THROWS_AS(Term::iri(""), rdf::BadTerm);
  CHECK_THROWS_AS(Term::iri("no spaces:x"), rdf::BadTerm);
  CHECK_THROWS_AS(Term::iri("1starts-with-digit:x"), rdf::BadTerm);
}

TEST_CASE("literal factory lexical forms") {
  CHECK(Term::boolean(true).text() == "true");
  CHECK(Term::boolean(false).text() == "false");
  CHECK(Term::integer(-7).text() == "-7");
  CHECK(Term::real(1.5).text() == "1.5");
  CHECK(Term::real(-0.0).text() == "-0");
  CHECK(Term::real(1e300).text() == "1e+300");
  CHECK(Term::date_time(MicroTimestamp(0)).text() == "1970-01-01T00:00:00Z");
  CHECK(Term::str("x").datatype() == XsdType::String);
}

TEST_CASE("xsd:double lexical space") {
  CHECK(rdf::format_xsd_double(std::numeric_limits<double>::infinity()) ==
        "INF");
  CHECK(rdf::format_xsd_double(-std::numeric_limits<double>::infinity()) ==
        "-INF");
  CHECK(rdf::format_xsd_double(std::nan("")) == "NaN");
  CHECK(*rdf::parse_xsd_double("INF") ==
        std::numeric_limits<double>::infinity());
  CHECK(std::isnan(*rdf::parse_xsd_double("NaN")));
  CHECK(!rdf::parse_xsd_double("1.5x").has_value());
  CHECK(!rdf::parse_xsd_double("").has_value());

  // Shortest form round-trips bit-exactly, including subnormals.
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const uint64_t bits = rng();
    double value;
    std::memcpy(&value, &bits, sizeof(value));
    if (!std::isfinite(value)) continue;
    const auto back = rdf::parse_xsd_double(rdf::format_xsd_double(value));
    REQUIRE(back.has_value());
    uint64_t back_bits;
    std::memcpy(&back_bits, &*back, sizeof(back_bits));
    CHECK(back_bits == bits);
  }
}

TEST_CASE("percent encoding is injective and invertible") {
  CHECK(iri_encode_component("A B") == "A%20B");
  CHECK(iri_encode_component("a/b") == "a%2Fb");
  CHECK(iri_encode_component("a%2Fb") == "a%252Fb");
  CHECK(iri_encode_component("ok-._~09Az") == "ok-._~09Az");
  CHECK(*iri_decode_component("A%20B") == "A B");
  CHECK(!iri_decode_component("bad%2").has_value());
  CHECK(!iri_decode_component("bad%zz").has_value());
  for (const char* s : {"π ≈ 3", "a/b?c#d", "tab\the re", "%%%"})
    CHECK(*iri_decode_component(iri_encode_component(s)) == s);
}

TEST_CASE("graph set semantics") {
  Graph g;
  const Term s = Term::iri("https://example.org/s");
  const Term p = Term::iri("https://example.org/p");
  CHECK(g.insert(s, p, Term::str("v")));
  CHECK(!g.insert(s, p, Term::str("v")));
  CHECK(g.size() == 1);
  g.insert(s, p, Term::str("w"));
  g.insert(s, Term::iri("https://example.org/q"), Term::str("v"));
  CHECK(g.size() == 3);
  CHECK(g.contains(Triple(s, p, Term::str("v"))));
  CHECK(!g.contains(Triple(s, p, Term::str("missing"))));
}

TEST_CASE("triples reject literal subjects and predicates") {
  const Term iri = Term::iri("https://example.org/s");
  CHECK_THROWS_AS(Triple(Term::str("x"), iri, iri), rdf::BadTerm);
  CHECK_THROWS_AS(Triple(iri, Term::str("x"), iri), rdf::BadTerm);
}

TEST_CASE("graph equality ignores insertion order; merge is union") {
  std::mt19937_64 rng(99);
  const Graph a = random_graph(rng, 200);

  std::vector<Triple> triples;
  a.for_each([&](const Term& s, const Term& p, const Term& o) {
    triples.emplace_back(s, p, o);
  });
  std::shuffle(triples.begin(), triples.end(), rng);
  Graph b;
  for (const Triple& t : triples) b.insert(t);
  CHECK(a == b);

  Graph c;
  c.insert(Term::iri("https://example.org/only-c"),
           Term::iri("https://example.org/p"), Term::str("v"));
  CHECK(!(a == c));
  c.merge(a);
  CHECK(c.size() == a.size() + 1);
  b.merge(a);  // merging a subset changes nothing
  CHECK(b == a);
}

TEST_CASE("indexes answer subject and predicate lookups") {
  Graph g;
  const Term s1 = Term::iri("https://example.org/s1");
  const Term s2 = Term::iri("https://example.org/s2");
  const Term p1 = Term::iri("https://example.org/p1");
  const Term p2 = Term::iri("https://example.org/p2");
  g.insert(s1, p1, Term::str("a"));
  g.insert(s1, p2, Term::str("b"));
  g.insert(s2, p1, Term::str("c"));
  CHECK(g.with_subject(*g.find_term(s1)).size() == 2);
  CHECK(g.with_predicate(*g.find_term(p1)).size() == 2);
  CHECK(g.objects_of(*g.find_term(s1), *g.find_term(p2)).size() == 1);
}

TEST_CASE("canonical N-Triples: empty graph, order invariance") {
  CHECK(rdf::serialize_ntriples_canonical(Graph{}).empty());

  std::mt19937_64 rng(3);
  const Graph a = random_graph(rng, 150);
  std::vector<Triple> triples;
  a.for_each([&](const Term& s, const Term& p, const Term& o) {
    triples.emplace_back(s, p, o);
  });
  std::shuffle(triples.begin(), triples.end(), rng);
  Graph b;
  for (const Triple& t : triples) b.insert(t);
  CHECK(rdf::serialize_ntriples_canonical(a) ==
        rdf::serialize_ntriples_canonical(b));
}

TEST_CASE("N-Triples parse/serialize fixed point with escapes") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 20; ++round) {
    const Graph g = random_graph(rng, 60);
    const std::string first = rdf::serialize_ntriples_canonical(g);
    const Graph back = rdf::parse_ntriples(first);
    CHECK(back == g);
    CHECK(rdf::serialize_ntriples_canonical(back) == first);
  }
}

TEST_CASE("N-Triples parser edge cases") {
  const Graph g = rdf::parse_ntriples(
      "# comment\n"
      "\n"
      "<https://e.org/s> <https://e.org/p> \"hi\" . # trailing comment\n"
      "<https://e.org/s> <https://e.org/p> "
      "\"typed\"^^<http://www.w3.org/2001/XMLSchema#integer> .\n");
  CHECK(g.size() == 2);

  CHECK_THROWS_AS(rdf::parse_ntriples("_:b0 <https://e.org/p> \"x\" ."),
                  rdf::BlankNodeUnsupported);
  CHECK_THROWS_AS(
      rdf::parse_ntriples("<https://e.org/s> <https://e.org/p> _:b0 ."),
      rdf::BlankNodeUnsupported);
  CHECK_THROWS_AS(
      rdf::parse_ntriples("<https://e.org/s> <https://e.org/p> \"x\"@en ."),
      rdf::ParseError);
  CHECK_THROWS_AS(
      rdf::parse_ntriples("<https://e.org/s> <https://e.org/p> "
                          "\"x\"^^<https://e.org/custom> ."),
      rdf::ParseError);
  CHECK_THROWS_AS(rdf::parse_ntriples("<https://e.org/s> <https://e.org/p> ."),
                  rdf::ParseError);

  try {
    rdf::parse_ntriples("<https://e.org/s> <https://e.org/p> \"ok\" .\nbad\n");
    FAIL("expected ParseError");
  } catch (const rdf::ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("N-Triples unicode escape decoding") {
  const Graph g = rdf::parse_ntriples(
      "<https://e.org/s> <https://e.org/p> \"pi: \\u03C0 \\U0001F600\" .\n");
  bool found = false;
  g.for_each([&](const Term&, const Term&, const Term& o) {
    found = o.text() == "pi: \u03C0 \U0001F600";
  });
  CHECK(found);
}

TEST_CASE("stream parse matches string parse") {
  std::mt19937_64 rng(5);
  const Graph g = random_graph(rng, 80);
  const std::string text = rdf::serialize_ntriples_canonical(g);
  std::istringstream in(text);
  CHECK(rdf::parse_ntriples(in) == g);
}

TEST_CASE("turtle: empty graph is prefix declarations only") {
  const rdf::Vocabulary vocab;
  const std::string text =
      rdf::serialize_turtle(Graph{}, vocab.standard_prefixes());
  CHECK(text.find("@prefix meds: <https://example.org/meds-owl#> .") !=
        std::string::npos);
  CHECK(text.find(" a ") == std::string::npos);
  CHECK(rdf::parse_turtle(text).empty());
}

TEST_CASE("turtle parse-back equality on random graphs") {
  const rdf::Vocabulary vocab;
  std::mt19937_64 rng(13);
  for (int round = 0; round < 20; ++round) {
    const Graph g = random_graph(rng, 60);
    const std::string ttl =
        rdf::serialize_turtle(g, vocab.standard_prefixes());
    CHECK(rdf::parse_turtle(ttl) == g);
  }
}

TEST_CASE("turtle falls back to full IRIs for unsafe locals") {
  Graph g;
  g.insert(Term::iri("https://example.org/meds-owl#has%20space"),
           Term::iri("https://example.org/meds-owl#p"),
           Term::str("v"));
  const rdf::Vocabulary vocab;
  const std::string ttl = rdf::serialize_turtle(g, vocab.standard_prefixes());
  CHECK(ttl.find("<https://example.org/meds-owl#has%20space>") !=
        std::string::npos);
  CHECK(rdf::parse_turtle(ttl) == g);
}

TEST_CASE("vocabulary constants are distinct and prefixed") {
  const rdf::Vocabulary v;
  CHECK(v.event_class.text() == "https://example.org/meds-owl#Event");
  CHECK(v.rdf_type.text() ==
        "http://www.w3.org/1999/02/22-rdf-syntax-ns#type");
  const rdf::Vocabulary custom("https://w3id.org/medsowl#");
  CHECK(custom.event_class.text() == "https://w3id.org/medsowl#Event");
  CHECK_THROWS_AS(rdf::Vocabulary(std::string(rdf::kDctNs)), rdf::BadTerm);

  const std::vector<Term> all = {
      v.subject_class,   v.event_class,       v.code_class,
      v.dataset_metadata_class, v.subject_split_class, v.subject_label_class,
      v.value_modality_class,   v.license_document_class, v.activity_class,
      v.has_subject,     v.has_code,          v.assigned_split,
      v.parent_code,     v.subject_id,        v.time,
      v.code_string,     v.code_description,  v.numeric_value,
      v.text_value,      v.meds_version,      v.prediction_time,
      v.boolean_value,   v.integer_value,     v.float_value,
      v.categorical_value, v.rdf_type,        v.rdfs_label,
      v.dct_title,       v.dct_has_version,   v.dct_created,
      v.dct_license,     v.dcat_distribution, v.dcat_download_url,
      v.dcat_access_url, v.prov_was_generated_by, v.prov_was_derived_from,
  };
  std::set<std::string> texts;
  for (const Term& t : all) texts.insert(t.text());
  CHECK(texts.size() == all.size());
}

}  // TEST_SUITE
