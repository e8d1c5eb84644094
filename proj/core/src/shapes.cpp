#include "medsgraph/shapes.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace medsgraph::shapes {

using rdf::Graph;
using rdf::Term;
using rdf::TermId;
using rdf::Vocabulary;
using rdf::XsdType;

std::string_view constraint_kind_name(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::MinCount:
      return "minCount";
    case ConstraintKind::MaxCount:
      return "maxCount";
    case ConstraintKind::Datatype:
      return "datatype";
    case ConstraintKind::ClassOfObject:
      return "class";
    case ConstraintKind::ExclusiveGroup:
      return "exclusiveGroup";
    case ConstraintKind::SplitMembership:
      return "splitMembership";
  }
  return {};
}

ShapeSuite builtin_meds_suite(const Vocabulary& v) {
  const auto iri = [](const Term& t) { return t.text(); };
  ShapeSuite suite;

  NodeShape event;
  event.target_class = iri(v.event_class);
  event.constraints = {
      {iri(v.has_subject), 1, 1, std::nullopt, iri(v.subject_class)},
      {iri(v.has_code), 1, 1, std::nullopt, iri(v.code_class)},
      {iri(v.code_string), 1, 1, XsdType::String, std::nullopt},
      {iri(v.time), 0, 1, XsdType::DateTime, std::nullopt},
      {iri(v.numeric_value), 0, 1, XsdType::Double, std::nullopt},
      {iri(v.text_value), 0, 1, XsdType::String, std::nullopt},
  };
  suite.shapes.push_back(std::move(event));

  NodeShape subject;
  subject.target_class = iri(v.subject_class);
  subject.constraints = {
      {iri(v.subject_id), 1, 1, std::nullopt, std::nullopt},
  };
  suite.shapes.push_back(std::move(subject));

  NodeShape code;
  code.target_class = iri(v.code_class);
  code.constraints = {
      {iri(v.code_string), 1, 1, std::nullopt, std::nullopt},
      {iri(v.code_description), 0, 1, std::nullopt, std::nullopt},
      {iri(v.parent_code), 0, std::nullopt, std::nullopt, iri(v.code_class)},
  };
  suite.shapes.push_back(std::move(code));

  NodeShape dataset;
  dataset.target_class = iri(v.dataset_metadata_class);
  dataset.constraints = {
      {iri(v.dct_title), 1, 1, std::nullopt, std::nullopt},
      {iri(v.meds_version), 1, 1, std::nullopt, std::nullopt},
      {iri(v.dct_created), 1, 1, XsdType::DateTime, std::nullopt},
      {iri(v.dct_has_version), 0, 1, std::nullopt, std::nullopt},
  };
  suite.shapes.push_back(std::move(dataset));

  NodeShape label;
  label.target_class = iri(v.subject_label_class);
  label.constraints = {
      {iri(v.has_subject), 1, 1, std::nullopt, iri(v.subject_class)},
      {iri(v.prediction_time), 1, 1, XsdType::DateTime, std::nullopt},
      {iri(v.boolean_value), 0, 1, std::nullopt, std::nullopt},
      {iri(v.integer_value), 0, 1, std::nullopt, std::nullopt},
      {iri(v.float_value), 0, 1, std::nullopt, std::nullopt},
      {iri(v.categorical_value), 0, 1, std::nullopt, std::nullopt},
  };
  label.exclusive_groups = {
      {{iri(v.boolean_value), iri(v.integer_value), iri(v.float_value),
        iri(v.categorical_value)},
       1,
       1},
  };
  suite.shapes.push_back(std::move(label));

  suite.split_membership_path = iri(v.assigned_split);
  return suite;
}

namespace {

std::string join_paths(const std::vector<std::string>& paths) {
  std::string out;
  for (size_t i = 0; i < paths.size(); ++i) {
    if (i) out += ", ";
    out += paths[i];
  }
  return out;
}

// IRI with its last '/'-segment removed; the grouping key for splits.
std::string_view parent_path(std::string_view iri) {
  const size_t slash = iri.rfind('/');
  return slash == std::string_view::npos ? iri : iri.substr(0, slash);
}

struct CompiledConstraint {
  const PropertyConstraint* source;
  std::optional<TermId> path;  // absent => predicate never occurs in graph
  std::optional<TermId> object_class;
};

struct CompiledShape {
  const NodeShape* source;
  std::vector<CompiledConstraint> constraints;
  std::vector<std::vector<std::optional<TermId>>> group_paths;
};

}  // namespace

ValidationReport validate(const Graph& g, const ShapeSuite& suite) {
  ValidationReport report;
  const auto add = [&](const std::string& focus, const std::string& cls,
                       ConstraintKind kind, std::string path,
                       std::string detail) {
    report.violations.push_back(
        {focus, cls, kind, std::move(path), std::move(detail)});
  };

  const auto find_iri = [&](const std::string& iri) {
    return g.find_term(Term::iri(iri));
  };
  const auto type_id =
      find_iri(std::string(rdf::kRdfNs) + "type");

  // Compile shape IRIs to this graph's term ids once.
  std::unordered_map<TermId, const CompiledShape*> shapes_by_class;
  std::vector<CompiledShape> compiled;
  compiled.reserve(suite.shapes.size());
  for (const NodeShape& shape : suite.shapes) {
    CompiledShape cs;
    cs.source = &shape;
    for (const PropertyConstraint& constraint : shape.constraints) {
      CompiledConstraint cc;
      cc.source = &constraint;
      cc.path = find_iri(constraint.path);
      if (constraint.class_of_object)
        cc.object_class = find_iri(*constraint.class_of_object);
      cs.constraints.push_back(cc);
    }
    for (const ExclusiveGroup& group : shape.exclusive_groups) {
      std::vector<std::optional<TermId>> ids;
      for (const std::string& path : group.paths) ids.push_back(find_iri(path));
      cs.group_paths.push_back(std::move(ids));
    }
    compiled.push_back(std::move(cs));
  }
  for (const CompiledShape& cs : compiled) {
    if (const auto id = find_iri(cs.source->target_class))
      shapes_by_class.emplace(*id, &cs);
  }

  const auto has_type = [&](TermId node, TermId cls) {
    if (!type_id) return false;
    for (const uint32_t t : g.with_subject(node)) {
      const rdf::TripleIds& triple = g.triples()[t];
      if (triple.predicate == *type_id && triple.object == cls) return true;
    }
    return false;
  };

  // Focus nodes: every subject of an rdf:type triple naming a shaped class.
  if (type_id) {
    for (const uint32_t index : g.with_predicate(*type_id)) {
      const rdf::TripleIds& typing = g.triples()[index];
      const auto shape_it = shapes_by_class.find(typing.object);
      if (shape_it == shapes_by_class.end()) continue;
      const CompiledShape& shape = *shape_it->second;
      const TermId node = typing.subject;
      const std::string& focus = g.term(node).text();
      const std::string& cls = shape.source->target_class;

      // Objects per predicate for this node.
      std::unordered_map<TermId, std::vector<TermId>> objects;
      for (const uint32_t t : g.with_subject(node)) {
        const rdf::TripleIds& triple = g.triples()[t];
        objects[triple.predicate].push_back(triple.object);
      }
      const auto count_of = [&](const std::optional<TermId>& path) -> size_t {
        if (!path) return 0;
        const auto it = objects.find(*path);
        return it == objects.end() ? 0 : it->second.size();
      };

      for (const CompiledConstraint& cc : shape.constraints) {
        const PropertyConstraint& c = *cc.source;
        const size_t count = count_of(cc.path);
        if (count < c.min_count)
          add(focus, cls, ConstraintKind::MinCount, c.path,
              "observed " + std::to_string(count) + " < minCount " +
                  std::to_string(c.min_count));
        if (c.max_count && count > *c.max_count)
          add(focus, cls, ConstraintKind::MaxCount, c.path,
              "observed " + std::to_string(count) + " > maxCount " +
                  std::to_string(*c.max_count));
        if (count == 0 || !cc.path) continue;
        const auto it = objects.find(*cc.path);
        if (c.datatype) {
          for (const TermId obj : it->second) {
            const Term& term = g.term(obj);
            if (!term.is_literal() || term.datatype() != *c.datatype)
              add(focus, cls, ConstraintKind::Datatype, c.path,
                  "object is not a literal of datatype <" +
                      std::string(rdf::xsd_type_iri(*c.datatype)) + ">");
          }
        }
        if (c.class_of_object) {
          for (const TermId obj : it->second) {
            const Term& term = g.term(obj);
            const bool ok = term.is_iri() && cc.object_class &&
                            has_type(obj, *cc.object_class);
            if (!ok)
              add(focus, cls, ConstraintKind::ClassOfObject, c.path,
                  "object " + term.text() + " is not typed <" +
                      *c.class_of_object + ">");
          }
        }
      }

      for (size_t gi = 0; gi < shape.group_paths.size(); ++gi) {
        const ExclusiveGroup& group = shape.source->exclusive_groups[gi];
        size_t total = 0;
        for (const auto& path : shape.group_paths[gi]) total += count_of(path);
        if (total < group.min_total || total > group.max_total)
          add(focus, cls, ConstraintKind::ExclusiveGroup,
              join_paths(group.paths),
              "observed " + std::to_string(total) + " values across group, "
                  "expected between " + std::to_string(group.min_total) +
                  " and " + std::to_string(group.max_total));
      }
    }
  }

  // Suite-level rule: within one split group, at most one assignedSplit
  // edge per subject.
  if (suite.split_membership_path) {
    if (const auto pred = find_iri(*suite.split_membership_path)) {
      std::unordered_map<TermId, std::vector<TermId>> by_subject;
      for (const uint32_t index : g.with_predicate(*pred)) {
        const rdf::TripleIds& t = g.triples()[index];
        by_subject[t.subject].push_back(t.object);
      }
      for (auto& [subject, splits] : by_subject) {
        if (splits.size() < 2) continue;
        std::map<std::string_view, std::vector<TermId>> by_group;
        for (const TermId split : splits)
          by_group[parent_path(g.term(split).text())].push_back(split);
        for (const auto& [group, members] : by_group) {
          if (members.size() < 2) continue;
          std::string detail = "subject assigned to " +
                               std::to_string(members.size()) +
                               " splits of one group:";
          for (const TermId member : members)
            detail += " " + g.term(member).text();
          add(g.term(subject).text(), std::string(),
              ConstraintKind::SplitMembership, *suite.split_membership_path,
              detail);
        }
      }
    }
  }

  report.conforms = report.violations.empty();
  return report;
}

ShapeSyntaxError::ShapeSyntaxError(size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      line_(line) {}

namespace {

// Structural rules shared by parse_suite and (via tests) the builtin suite.
void check_suite(const ShapeSuite& suite, size_t line = 0) {
  std::set<std::string> classes;
  for (const NodeShape& shape : suite.shapes) {
    if (!classes.insert(shape.target_class).second)
      throw ShapeSyntaxError(line, "duplicate shape for class <" +
                                       shape.target_class + ">");
    std::set<std::string> paths;
    for (const PropertyConstraint& c : shape.constraints) {
      if (!paths.insert(c.path).second)
        throw ShapeSyntaxError(line, "duplicate prop <" + c.path +
                                         "> in shape <" + shape.target_class +
                                         ">");
      if (c.max_count && c.min_count > *c.max_count)
        throw ShapeSyntaxError(line, "min=" + std::to_string(c.min_count) +
                                         " exceeds max for <" + c.path + ">");
      if (c.datatype && c.class_of_object)
        throw ShapeSyntaxError(
            line, "datatype and class are mutually exclusive on <" + c.path +
                      ">");
    }
    for (const ExclusiveGroup& group : shape.exclusive_groups) {
      if (group.paths.size() < 2)
        throw ShapeSyntaxError(line, "group needs at least two paths");
      if (group.min_total > group.max_total)
        throw ShapeSyntaxError(line, "group min exceeds max");
    }
  }
}

struct LineParser {
  std::string_view text;
  size_t line_no;

  void skip_ws() {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t'))
      text.remove_prefix(1);
  }

  bool done() {
    skip_ws();
    return text.empty();
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ShapeSyntaxError(line_no, message);
  }

  std::string word() {
    skip_ws();
    size_t n = 0;
    while (n < text.size() && text[n] != ' ' && text[n] != '\t') ++n;
    if (n == 0) fail("expected a word");
    std::string out(text.substr(0, n));
    text.remove_prefix(n);
    return out;
  }

  std::string iri() {
    skip_ws();
    if (text.empty() || text.front() != '<') fail("expected <IRI>");
    const size_t close = text.find('>');
    if (close == std::string_view::npos) fail("unterminated <IRI>");
    std::string out(text.substr(1, close - 1));
    text.remove_prefix(close + 1);
    if (out.empty()) fail("empty IRI");
    return out;
  }

  // "key=" prefix check; consumes it when present.
  bool key(std::string_view name) {
    skip_ws();
    if (!text.starts_with(name) || text.size() <= name.size() ||
        text[name.size()] != '=')
      return false;
    text.remove_prefix(name.size() + 1);
    return true;
  }

  uint32_t number() {
    skip_ws();
    size_t n = 0;
    uint64_t value = 0;
    while (n < text.size() && text[n] >= '0' && text[n] <= '9') {
      value = value * 10 + static_cast<uint64_t>(text[n] - '0');
      if (value > UINT32_MAX) fail("number out of range");
      ++n;
    }
    if (n == 0) fail("expected a number");
    text.remove_prefix(n);
    return static_cast<uint32_t>(value);
  }
};

}  // namespace

ShapeSuite parse_suite(std::string_view text) {
  ShapeSuite suite;
  NodeShape* current = nullptr;
  size_t line_no = 0;
  size_t start = 0;
  size_t last_line = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    if (raw.ends_with('\r')) raw.remove_suffix(1);
    ++line_no;
    LineParser lp{raw, line_no};
    if (!lp.done() && lp.text.front() != '#') {
      last_line = line_no;
      const std::string head = lp.word();
      if (head == "shape") {
        suite.shapes.emplace_back();
        current = &suite.shapes.back();
        current->target_class = lp.iri();
      } else if (head == "rule") {
        const std::string rule = lp.word();
        if (rule != "split-membership")
          lp.fail("unknown rule '" + rule + "'");
        suite.split_membership_path = lp.iri();
      } else if (head == "prop") {
        if (!current) lp.fail("prop before any shape");
        PropertyConstraint c;
        c.path = lp.iri();
        if (!lp.key("min")) lp.fail("expected min=");
        c.min_count = lp.number();
        if (!lp.key("max")) lp.fail("expected max=");
        lp.skip_ws();
        if (!lp.text.empty() && lp.text.front() == '*')
          lp.text.remove_prefix(1);
        else
          c.max_count = lp.number();
        if (lp.key("datatype")) {
          const std::string dt = lp.iri();
          const auto mapped = rdf::xsd_type_from_iri(dt);
          if (!mapped) lp.fail("unsupported datatype <" + dt + ">");
          c.datatype = *mapped;
        } else if (lp.key("class")) {
          c.class_of_object = lp.iri();
        }
        current->constraints.push_back(std::move(c));
      } else if (head == "group") {
        if (!current) lp.fail("group before any shape");
        ExclusiveGroup group;
        if (lp.key("exactly")) {
          group.min_total = group.max_total = lp.number();
        } else if (lp.key("min")) {
          group.min_total = lp.number();
          if (!lp.key("max")) lp.fail("expected max=");
          group.max_total = lp.number();
        } else {
          lp.fail("expected exactly= or min=");
        }
        lp.skip_ws();
        if (lp.text.empty() || lp.text.front() != '{') lp.fail("expected '{'");
        lp.text.remove_prefix(1);
        for (;;) {
          group.paths.push_back(lp.iri());
          lp.skip_ws();
          if (!lp.text.empty() && lp.text.front() == ',') {
            lp.text.remove_prefix(1);
            continue;
          }
          break;
        }
        lp.skip_ws();
        if (lp.text.empty() || lp.text.front() != '}') lp.fail("expected '}'");
        lp.text.remove_prefix(1);
        current->exclusive_groups.push_back(std::move(group));
      } else {
        lp.fail("unknown directive '" + head + "'");
      }
      if (!lp.done() && lp.text.front() != '#')
        lp.fail("trailing characters");
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  check_suite(suite, last_line);
  return suite;
}

ShapeSuite load_suite(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ShapeSyntaxError(0, "cannot open " + path.generic_string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_suite(buf.str());
}

std::string format_suite(const ShapeSuite& suite) {
  std::string out;
  if (suite.split_membership_path)
    out += "rule split-membership <" + *suite.split_membership_path + ">\n";
  for (const NodeShape& shape : suite.shapes) {
    out += "shape <" + shape.target_class + ">\n";
    for (const PropertyConstraint& c : shape.constraints) {
      out += "  prop <" + c.path + "> min=" + std::to_string(c.min_count);
      out += " max=";
      out += c.max_count ? std::to_string(*c.max_count) : std::string("*");
      if (c.datatype)
        out +=
            " datatype=<" + std::string(rdf::xsd_type_iri(*c.datatype)) + ">";
      if (c.class_of_object) out += " class=<" + *c.class_of_object + ">";
      out += "\n";
    }
    for (const ExclusiveGroup& group : shape.exclusive_groups) {
      out += group.min_total == group.max_total
                 ? "  group exactly=" + std::to_string(group.min_total)
                 : "  group min=" + std::to_string(group.min_total) +
                       " max=" + std::to_string(group.max_total);
      out += " {";
      for (size_t i = 0; i < group.paths.size(); ++i) {
        if (i) out += ", ";
        out += "<" + group.paths[i] + ">";
      }
      out += "}\n";
    }
  }
  return out;
}

void print_report(const ValidationReport& report, std::ostream& out) {
  out << "conforms: " << (report.conforms ? "true" : "false") << "\n";
  out << "violations: " << report.violations.size() << "\n";
  for (const Violation& v : report.violations) {
    out << "  - focus: " << v.focus_node << "\n";
    if (!v.target_class.empty())
      out << "    shape: <" << v.target_class << ">\n";
    out << "    constraint: " << constraint_kind_name(v.kind) << " on <"
        << v.path << ">\n";
    out << "    detail: " << v.detail << "\n";
  }
}

}  // namespace medsgraph::shapes
