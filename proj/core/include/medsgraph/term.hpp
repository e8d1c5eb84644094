#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "medsgraph/timestamp.hpp"

namespace medsgraph::rdf {

/// Literal datatypes the data model admits. Everything the MEDS mapping
/// emits fits in these five.
enum class XsdType : uint8_t { String, Boolean, Integer, Double, DateTime };

std::string_view xsd_type_iri(XsdType type);
std::optional<XsdType> xsd_type_from_iri(std::string_view iri);

/// Thrown when a term would violate the data model (relative IRI, ...).
class BadTerm : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An RDF term: an absolute IRI or a typed literal. There is no blank-node
/// variant, so graphs built from these terms cannot contain one.
///
/// Literal identity is (lexical form, datatype) — two literals of the same
/// datatype with different spellings of one value are distinct terms.
class Term {
 public:
  enum class Kind : uint8_t { Iri, Literal };

  /// Throws BadTerm unless `value` is an absolute IRI.
  static Term iri(std::string value);
  static Term literal(std::string lexical, XsdType datatype);

  static Term str(std::string lexical);
  static Term boolean(bool value);
  static Term integer(int64_t value);
  static Term real(double value);
  static Term date_time(MicroTimestamp value);

  Kind kind() const { return kind_; }
  bool is_iri() const { return kind_ == Kind::Iri; }
  bool is_literal() const { return kind_ == Kind::Literal; }

  /// IRI text or literal lexical form.
  const std::string& text() const { return text_; }

  /// Literals only.
  XsdType datatype() const;

  friend bool operator==(const Term&, const Term&) = default;

 private:
  Term(Kind kind, std::string text, XsdType datatype)
      : text_(std::move(text)), kind_(kind), datatype_(datatype) {}

  std::string text_;
  Kind kind_;
  XsdType datatype_;  // meaningful for literals only
};

struct TermHash {
  size_t operator()(const Term& t) const;
};

/// Shortest decimal form that parses back to the same double, using the
/// xsd:double lexical space ("NaN", "INF", "-INF" for non-finite values).
std::string format_xsd_double(double value);
std::optional<double> parse_xsd_double(std::string_view lexical);

}  // namespace medsgraph::rdf
