#include "medsgraph/ntriples.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "rdf_lexical.hpp"

namespace medsgraph::rdf {

ParseError::ParseError(size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      line_(line) {}

BlankNodeUnsupported::BlankNodeUnsupported(size_t line)
    : ParseError(line, "blank nodes are not representable in this data model") {}

std::string serialize_term(const Term& term) {
  std::string out;
  if (term.is_iri()) {
    out += '<';
    lexical::append_escaped_iri(out, term.text());
    out += '>';
    return out;
  }
  out += '"';
  lexical::append_escaped_literal(out, term.text());
  out += '"';
  // xsd:string stays plain (RDF 1.1 simple-literal form).
  if (term.datatype() != XsdType::String) {
    out += "^^<";
    out.append(xsd_type_iri(term.datatype()));
    out += '>';
  }
  return out;
}

void serialize_ntriples_canonical(const Graph& g, std::ostream& out) {
  const size_t n_terms = g.term_count();
  std::vector<std::string> forms(n_terms);
  for (size_t i = 0; i < n_terms; ++i)
    forms[i] = serialize_term(g.term(static_cast<TermId>(i)));

  std::vector<TermId> order(n_terms);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](TermId a, TermId b) { return forms[a] < forms[b]; });
  std::vector<uint32_t> rank(n_terms);
  for (size_t i = 0; i < n_terms; ++i) rank[order[i]] = static_cast<uint32_t>(i);

  std::vector<TripleIds> triples = g.triples();
  std::sort(triples.begin(), triples.end(),
            [&](const TripleIds& a, const TripleIds& b) {
              if (rank[a.subject] != rank[b.subject])
                return rank[a.subject] < rank[b.subject];
              if (rank[a.predicate] != rank[b.predicate])
                return rank[a.predicate] < rank[b.predicate];
              return rank[a.object] < rank[b.object];
            });

  for (const TripleIds& t : triples) {
    out << forms[t.subject] << ' ' << forms[t.predicate] << ' '
        << forms[t.object] << " .\n";
  }
}

std::string serialize_ntriples_canonical(const Graph& g) {
  std::ostringstream out;
  serialize_ntriples_canonical(g, out);
  return out.str();
}

namespace {

void skip_ws(std::string_view line, size_t& pos) {
  while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
}

Term parse_iriref(std::string_view line, size_t& pos, size_t line_no) {
  if (pos >= line.size() || line[pos] != '<')
    throw ParseError(line_no, "expected IRI");
  ++pos;
  std::string iri;
  while (pos < line.size() && line[pos] != '>') {
    if (line[pos] == '\\') {
      if (!lexical::decode_unicode_escape(line, pos, iri))
        throw ParseError(line_no, "bad escape in IRI");
    } else {
      iri += line[pos++];
    }
  }
  if (pos >= line.size()) throw ParseError(line_no, "unterminated IRI");
  ++pos;  // '>'
  try {
    return Term::iri(std::move(iri));
  } catch (const BadTerm& e) {
    throw ParseError(line_no, e.what());
  }
}

Term parse_literal(std::string_view line, size_t& pos, size_t line_no) {
  ++pos;  // opening '"'
  std::string lexical_form;
  while (pos < line.size() && line[pos] != '"') {
    if (line[pos] == '\\') {
      if (pos + 1 >= line.size())
        throw ParseError(line_no, "unterminated escape in literal");
      const char c = line[pos + 1];
      switch (c) {
        case 't': lexical_form += '\t'; pos += 2; break;
        case 'b': lexical_form += '\b'; pos += 2; break;
        case 'n': lexical_form += '\n'; pos += 2; break;
        case 'r': lexical_form += '\r'; pos += 2; break;
        case 'f': lexical_form += '\f'; pos += 2; break;
        case '"': lexical_form += '"'; pos += 2; break;
        case '\'': lexical_form += '\''; pos += 2; break;
        case '\\': lexical_form += '\\'; pos += 2; break;
        case 'u':
        case 'U':
          if (!lexical::decode_unicode_escape(line, pos, lexical_form))
            throw ParseError(line_no, "bad unicode escape in literal");
          break;
        default:
          throw ParseError(line_no, "bad escape in literal");
      }
    } else {
      lexical_form += line[pos++];
    }
  }
  if (pos >= line.size()) throw ParseError(line_no, "unterminated literal");
  ++pos;  // closing '"'

  XsdType datatype = XsdType::String;
  if (pos + 1 < line.size() && line[pos] == '^' && line[pos + 1] == '^') {
    pos += 2;
    const Term dt = parse_iriref(line, pos, line_no);
    const auto mapped = xsd_type_from_iri(dt.text());
    if (!mapped)
      throw ParseError(line_no, "unsupported literal datatype <" + dt.text() + ">");
    datatype = *mapped;
  } else if (pos < line.size() && line[pos] == '@') {
    throw ParseError(line_no, "language-tagged literals are not supported");
  }
  return Term::literal(std::move(lexical_form), datatype);
}

Term parse_term(std::string_view line, size_t& pos, size_t line_no,
                bool allow_literal) {
  if (pos >= line.size()) throw ParseError(line_no, "unexpected end of line");
  const char c = line[pos];
  if (c == '_') throw BlankNodeUnsupported(line_no);
  if (c == '<') return parse_iriref(line, pos, line_no);
  if (c == '"' && allow_literal) return parse_literal(line, pos, line_no);
  throw ParseError(line_no, "unexpected character '" + std::string(1, c) + "'");
}

void parse_line(Graph& g, std::string_view line, size_t line_no) {
  size_t pos = 0;
  skip_ws(line, pos);
  if (pos >= line.size() || line[pos] == '#') return;

  Term subject = parse_term(line, pos, line_no, /*allow_literal=*/false);
  skip_ws(line, pos);
  Term predicate = parse_term(line, pos, line_no, /*allow_literal=*/false);
  skip_ws(line, pos);
  Term object = parse_term(line, pos, line_no, /*allow_literal=*/true);
  skip_ws(line, pos);
  if (pos >= line.size() || line[pos] != '.')
    throw ParseError(line_no, "expected '.' after triple");
  ++pos;
  skip_ws(line, pos);
  if (pos < line.size() && line[pos] != '#')
    throw ParseError(line_no, "trailing characters after '.'");

  g.insert(std::move(subject), std::move(predicate), std::move(object));
}

}  // namespace

Graph parse_ntriples(std::string_view text) {
  Graph g;
  size_t line_no = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (line.ends_with('\r')) line.remove_suffix(1);
    ++line_no;
    if (!line.empty()) parse_line(g, line, line_no);
    if (end == text.size()) break;
    start = end + 1;
  }
  return g;
}

Graph parse_ntriples(std::istream& in) {
  Graph g;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (view.ends_with('\r')) view.remove_suffix(1);
    if (!view.empty()) parse_line(g, view, line_no);
  }
  return g;
}

}  // namespace medsgraph::rdf
