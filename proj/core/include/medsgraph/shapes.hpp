#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "medsgraph/graph.hpp"
#include "medsgraph/vocabulary.hpp"

namespace medsgraph::shapes {

/// One predicate's constraints on instances of a target class.
struct PropertyConstraint {
  std::string path;  // predicate IRI
  uint32_t min_count = 0;
  std::optional<uint32_t> max_count;  // absent = unbounded
  std::optional<rdf::XsdType> datatype;
  std::optional<std::string> class_of_object;  // object must carry this type

  friend bool operator==(const PropertyConstraint&,
                         const PropertyConstraint&) = default;
};

/// Bounds the combined value count across a set of alternative predicates
/// (e.g. "exactly one label value").
struct ExclusiveGroup {
  std::vector<std::string> paths;
  uint32_t min_total = 0;
  uint32_t max_total = 0;

  friend bool operator==(const ExclusiveGroup&, const ExclusiveGroup&) = default;
};

struct NodeShape {
  std::string target_class;
  std::vector<PropertyConstraint> constraints;
  std::vector<ExclusiveGroup> exclusive_groups;

  friend bool operator==(const NodeShape&, const NodeShape&) = default;
};

/// A set of node shapes plus the suite-level split-membership rule: per
/// split group (split nodes sharing an IRI parent path), a subject may hold
/// at most one edge of the stored predicate.
struct ShapeSuite {
  std::vector<NodeShape> shapes;
  std::optional<std::string> split_membership_path;

  friend bool operator==(const ShapeSuite&, const ShapeSuite&) = default;
};

enum class ConstraintKind : uint8_t {
  MinCount,
  MaxCount,
  Datatype,
  ClassOfObject,
  ExclusiveGroup,
  SplitMembership,
};

std::string_view constraint_kind_name(ConstraintKind kind);

struct Violation {
  std::string focus_node;
  std::string target_class;  // empty for suite-level rules
  ConstraintKind kind;
  std::string path;  // predicate, or comma-joined group paths
  std::string detail;
};

struct ValidationReport {
  bool conforms = true;
  std::vector<Violation> violations;
};

/// The constraint suite encoding the MEDS cardinalities: Event, Subject,
/// Code, DatasetMetadata, and SubjectLabel shapes (the label-value
/// exclusive group set to exactly one) plus the split-membership rule.
ShapeSuite builtin_meds_suite(const rdf::Vocabulary& vocab = rdf::Vocabulary());

/// Checks every typed node against the shape of its class(es). Problems are
/// report entries, never exceptions; conforms <=> no entries.
ValidationReport validate(const rdf::Graph& g, const ShapeSuite& suite);

class ShapeSyntaxError : public std::runtime_error {
 public:
  ShapeSyntaxError(size_t line, const std::string& message);
  size_t line() const { return line_; }

 private:
  size_t line_;
};

/// Parses the line-oriented shape format:
///
///   rule split-membership <predicateIRI>
///   shape <ClassIRI>
///     prop <PredicateIRI> min=<n> max=<n|*> [datatype=<IRI>|class=<IRI>]
///     group exactly=<n> {<IRI>, <IRI>, ...}
///     group min=<n> max=<n> {<IRI>, ...}
///
/// '#' starts a full-line comment. Structural rules (min<=max, datatype and
/// class mutually exclusive, unique paths, one shape per class) are
/// enforced here.
ShapeSuite parse_suite(std::string_view text);
ShapeSuite load_suite(const std::filesystem::path& path);

/// Canonical text form; parse_suite(format_suite(s)) == s.
std::string format_suite(const ShapeSuite& suite);

void print_report(const ValidationReport& report, std::ostream& out);

}  // namespace medsgraph::shapes
