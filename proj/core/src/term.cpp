#include "medsgraph/term.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <functional>

#include "medsgraph/iri.hpp"

namespace medsgraph::rdf {

std::string_view xsd_type_iri(XsdType type) {
  switch (type) {
    case XsdType::String:
      return "http://www.w3.org/2001/XMLSchema#string";
    case XsdType::Boolean:
      return "http://www.w3.org/2001/XMLSchema#boolean";
    case XsdType::Integer:
      return "http://www.w3.org/2001/XMLSchema#integer";
    case XsdType::Double:
      return "http://www.w3.org/2001/XMLSchema#double";
    case XsdType::DateTime:
      return "http://www.w3.org/2001/XMLSchema#dateTime";
  }
  return {};
}

std::optional<XsdType> xsd_type_from_iri(std::string_view iri) {
  for (const XsdType t : {XsdType::String, XsdType::Boolean, XsdType::Integer,
                          XsdType::Double, XsdType::DateTime}) {
    if (iri == xsd_type_iri(t)) return t;
  }
  return std::nullopt;
}

Term Term::iri(std::string value) {
  if (!iri_is_absolute(value))
    throw BadTerm("not an absolute IRI: '" + value + "'");
  return Term(Kind::Iri, std::move(value), XsdType::String);
}

Term Term::literal(std::string lexical, XsdType datatype) {
  return Term(Kind::Literal, std::move(lexical), datatype);
}

Term Term::str(std::string lexical) {
  return literal(std::move(lexical), XsdType::String);
}

Term Term::boolean(bool value) {
  return literal(value ? "true" : "false", XsdType::Boolean);
}

Term Term::integer(int64_t value) {
  return literal(std::to_string(value), XsdType::Integer);
}

Term Term::real(double value) {
  return literal(format_xsd_double(value), XsdType::Double);
}

Term Term::date_time(MicroTimestamp value) {
  return literal(format_timestamp(value), XsdType::DateTime);
}

XsdType Term::datatype() const {
  if (kind_ != Kind::Literal)
    throw std::logic_error("Term::datatype() called on an IRI");
  return datatype_;
}

size_t TermHash::operator()(const Term& t) const {
  size_t h = std::hash<std::string>{}(t.text());
  const auto tag = static_cast<size_t>(t.kind()) * 31 +
                   (t.is_literal() ? static_cast<size_t>(t.datatype()) : 0);
  return h ^ (tag + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::string format_xsd_double(double value) {
  if (std::isnan(value)) return "NaN";
  if (std::isinf(value)) return value > 0 ? "INF" : "-INF";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::optional<double> parse_xsd_double(std::string_view lexical) {
  if (lexical == "NaN") return std::nan("");
  if (lexical == "INF" || lexical == "+INF")
    return std::numeric_limits<double>::infinity();
  if (lexical == "-INF") return -std::numeric_limits<double>::infinity();
  double value = 0;
  const auto res =
      std::from_chars(lexical.data(), lexical.data() + lexical.size(), value);
  if (res.ec != std::errc() || res.ptr != lexical.data() + lexical.size())
    return std::nullopt;
  return value;
}

}  // namespace medsgraph::rdf
