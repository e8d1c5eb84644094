#include "medsgraph/turtle.hpp"

#include "medsgraph/vocabulary.hpp"

#include <algorithm>
#include <numeric>

#include "rdf_lexical.hpp"

namespace medsgraph::rdf {
namespace {

bool is_local_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.';
}

// Conservative PN_LOCAL check; anything outside falls back to a full IRI.
bool is_safe_local(std::string_view local) {
  if (local.empty() || local.front() == '.' || local.back() == '.')
    return false;
  return std::all_of(local.begin(), local.end(), is_local_char) &&
         local.front() != '-';
}

struct PrefixTable {
  // (namespace, prefix) pairs, longest namespace first.
  std::vector<std::pair<std::string, std::string>> by_namespace;

  explicit PrefixTable(const std::map<std::string, std::string>& prefixes) {
    for (const auto& [prefix, ns] : prefixes)
      by_namespace.emplace_back(ns, prefix);
    std::sort(by_namespace.begin(), by_namespace.end(),
              [](const auto& a, const auto& b) {
                if (a.first.size() != b.first.size())
                  return a.first.size() > b.first.size();
                return a < b;
              });
  }

  std::string shorten(const std::string& iri) const {
    for (const auto& [ns, prefix] : by_namespace) {
      if (!iri.starts_with(ns)) continue;
      const std::string_view local(iri.data() + ns.size(),
                                   iri.size() - ns.size());
      if (is_safe_local(local)) return prefix + ":" + std::string(local);
    }
    std::string out;
    out += '<';
    lexical::append_escaped_iri(out, iri);
    out += '>';
    return out;
  }
};

std::string turtle_term(const Term& term, const PrefixTable& table) {
  if (term.is_iri()) return table.shorten(term.text());
  std::string out;
  out += '"';
  lexical::append_escaped_literal(out, term.text());
  out += '"';
  if (term.datatype() != XsdType::String) {
    out += "^^";
    out += table.shorten(std::string(xsd_type_iri(term.datatype())));
  }
  return out;
}

}  // namespace

std::string serialize_turtle(
    const Graph& g, const std::map<std::string, std::string>& prefixes) {
  const PrefixTable table(prefixes);
  std::string out;
  for (const auto& [prefix, ns] : prefixes) {
    out += "@prefix " + prefix + ": <";
    lexical::append_escaped_iri(out, ns);
    out += "> .\n";
  }

  // Canonical ordering via the N-Triples forms.
  const size_t n_terms = g.term_count();
  std::vector<std::string> forms(n_terms);
  for (size_t i = 0; i < n_terms; ++i)
    forms[i] = serialize_term(g.term(static_cast<TermId>(i)));
  const auto term_less = [&](TermId a, TermId b) { return forms[a] < forms[b]; };

  std::optional<TermId> rdf_type_id;
  if (const auto found =
          g.find_term(Term::iri(std::string(kRdfNs) + "type")))
    rdf_type_id = *found;

  std::vector<TermId> subjects;
  for (const TripleIds& t : g.triples()) subjects.push_back(t.subject);
  std::sort(subjects.begin(), subjects.end(), term_less);
  subjects.erase(std::unique(subjects.begin(), subjects.end()),
                 subjects.end());

  for (const TermId subject : subjects) {
    out += '\n';
    out += turtle_term(g.term(subject), table);

    std::vector<TermId> predicates;
    for (const uint32_t index : g.with_subject(subject))
      predicates.push_back(g.triples()[index].predicate);
    std::sort(predicates.begin(), predicates.end(), term_less);
    predicates.erase(std::unique(predicates.begin(), predicates.end()),
                     predicates.end());
    // rdf:type leads its block, abbreviated to 'a'.
    if (rdf_type_id) {
      const auto it =
          std::find(predicates.begin(), predicates.end(), *rdf_type_id);
      if (it != predicates.end()) std::rotate(predicates.begin(), it, it + 1);
    }

    bool first_predicate = true;
    for (const TermId predicate : predicates) {
      out += first_predicate ? " " : " ;\n    ";
      first_predicate = false;
      if (rdf_type_id && predicate == *rdf_type_id)
        out += "a";
      else
        out += turtle_term(g.term(predicate), table);

      std::vector<TermId> objects = g.objects_of(subject, predicate);
      std::sort(objects.begin(), objects.end(), term_less);
      objects.erase(std::unique(objects.begin(), objects.end()),
                    objects.end());
      for (size_t i = 0; i < objects.size(); ++i) {
        out += i == 0 ? " " : ", ";
        out += turtle_term(g.term(objects[i]), table);
      }
    }
    out += " .\n";
  }
  return out;
}

namespace {

class TurtleParser {
 public:
  explicit TurtleParser(std::string_view text) : text_(text) {}

  Graph parse() {
    Graph g;
    skip_trivia();
    while (pos_ < text_.size()) {
      if (peek() == '@') {
        parse_prefix_directive();
      } else {
        parse_triples(g);
      }
      skip_trivia();
    }
    return g;
  }

 private:
  char peek() const { return text_[pos_]; }
  bool done() const { return pos_ >= text_.size(); }

  void skip_trivia() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(line_, message);
  }

  void expect(char c) {
    if (done() || peek() != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void parse_prefix_directive() {
    static constexpr std::string_view kPrefix = "@prefix";
    if (text_.substr(pos_, kPrefix.size()) != kPrefix)
      fail("unknown directive");
    pos_ += kPrefix.size();
    skip_trivia();
    std::string name;
    while (!done() && peek() != ':') name += text_[pos_++];
    expect(':');
    skip_trivia();
    const Term ns = parse_iriref();
    skip_trivia();
    expect('.');
    prefixes_[name] = ns.text();
  }

  Term parse_iriref() {
    expect('<');
    std::string iri;
    while (!done() && peek() != '>') {
      if (peek() == '\\') {
        if (!lexical::decode_unicode_escape(text_, pos_, iri))
          fail("bad escape in IRI");
      } else {
        iri += text_[pos_++];
      }
    }
    expect('>');
    try {
      return Term::iri(std::move(iri));
    } catch (const BadTerm& e) {
      fail(e.what());
    }
  }

  Term parse_prefixed_name() {
    std::string prefix;
    while (!done() && peek() != ':') {
      if (!is_local_char(peek())) fail("bad prefixed name");
      prefix += text_[pos_++];
    }
    expect(':');
    std::string local;
    while (!done() && is_local_char(peek())) local += text_[pos_++];
    // PN_LOCAL cannot end with '.'; give trailing dots back to the parser.
    while (!local.empty() && local.back() == '.') {
      local.pop_back();
      --pos_;
    }
    const auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) fail("undeclared prefix '" + prefix + ":'");
    try {
      return Term::iri(it->second + local);
    } catch (const BadTerm& e) {
      fail(e.what());
    }
  }

  Term parse_literal() {
    expect('"');
    std::string lexical_form;
    while (!done() && peek() != '"') {
      if (peek() == '\\') {
        if (pos_ + 1 >= text_.size()) fail("unterminated escape");
        const char c = text_[pos_ + 1];
        switch (c) {
          case 't': lexical_form += '\t'; pos_ += 2; break;
          case 'b': lexical_form += '\b'; pos_ += 2; break;
          case 'n': lexical_form += '\n'; pos_ += 2; break;
          case 'r': lexical_form += '\r'; pos_ += 2; break;
          case 'f': lexical_form += '\f'; pos_ += 2; break;
          case '"': lexical_form += '"'; pos_ += 2; break;
          case '\'': lexical_form += '\''; pos_ += 2; break;
          case '\\': lexical_form += '\\'; pos_ += 2; break;
          case 'u':
          case 'U':
            if (!lexical::decode_unicode_escape(text_, pos_, lexical_form))
              fail("bad unicode escape in literal");
            break;
          default:
            fail("bad escape in literal");
        }
      } else {
        if (peek() == '\n') ++line_;
        lexical_form += text_[pos_++];
      }
    }
    expect('"');
    XsdType datatype = XsdType::String;
    if (pos_ + 1 < text_.size() && peek() == '^' && text_[pos_ + 1] == '^') {
      pos_ += 2;
      const Term dt = peek() == '<' ? parse_iriref() : parse_prefixed_name();
      const auto mapped = xsd_type_from_iri(dt.text());
      if (!mapped) fail("unsupported literal datatype <" + dt.text() + ">");
      datatype = *mapped;
    } else if (!done() && peek() == '@') {
      fail("language-tagged literals are not supported");
    }
    return Term::literal(std::move(lexical_form), datatype);
  }

  Term parse_term(bool allow_literal, bool verb_position = false) {
    if (done()) fail("unexpected end of input");
    const char c = peek();
    if (c == '_') throw BlankNodeUnsupported(line_);
    if (c == '<') return parse_iriref();
    if (c == '"') {
      if (!allow_literal) fail("literal not allowed here");
      return parse_literal();
    }
    if (verb_position && c == 'a') {
      const char next = pos_ + 1 < text_.size() ? text_[pos_ + 1] : ' ';
      if (next == ' ' || next == '\t' || next == '\n' || next == '\r') {
        ++pos_;
        return Term::iri(std::string(kRdfNs) + "type");
      }
    }
    if (is_local_char(c)) return parse_prefixed_name();
    fail(std::string("unexpected character '") + c + "'");
  }

  void parse_triples(Graph& g) {
    const Term subject = parse_term(/*allow_literal=*/false);
    while (true) {
      skip_trivia();
      const Term predicate =
          parse_term(/*allow_literal=*/false, /*verb_position=*/true);
      while (true) {
        skip_trivia();
        Term object = parse_term(/*allow_literal=*/true);
        g.insert(subject, predicate, std::move(object));
        skip_trivia();
        if (!done() && peek() == ',') {
          ++pos_;
          continue;
        }
        break;
      }
      if (!done() && peek() == ';') {
        ++pos_;
        skip_trivia();
        // A dangling ';' before '.' is legal Turtle.
        if (!done() && peek() == '.') break;
        continue;
      }
      break;
    }
    skip_trivia();
    expect('.');
  }

  std::string_view text_;
  size_t pos_ = 0;
  size_t line_ = 1;
  std::map<std::string, std::string, std::less<>> prefixes_;
};

}  // namespace

Graph parse_turtle(std::string_view text) { return TurtleParser(text).parse(); }

}  // namespace medsgraph::rdf
