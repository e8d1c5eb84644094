// meds-graph: convert MEDS datasets to RDF, validate, report statistics,
// and measure round-trip fidelity.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "medsgraph/mapping.hpp"
#include "medsgraph/meds_reader.hpp"
#include "medsgraph/meds_writer.hpp"
#include "medsgraph/ntriples.hpp"
#include "medsgraph/roundtrip.hpp"
#include "medsgraph/shapes.hpp"
#include "medsgraph/stats.hpp"
#include "medsgraph/synth.hpp"
#include "medsgraph/turtle.hpp"

namespace {

namespace mg = medsgraph;

// Exit codes: 0 ok, 1 usage, 2 ingest/parse error, 3 validation violations
// or fidelity diffs, 4 I/O error.
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kIngestError = 2;
constexpr int kViolations = 3;
constexpr int kIoError = 4;

void warn_to_stderr(const std::string& message) {
  std::cerr << "warning: " << message << "\n";
}

struct ConvertOptions {
  std::string input;
  std::string output;
  std::string format = "ntriples";
  std::string base_iri = "https://example.org/meds/";
  std::string shapes_file;
  std::string stats_out;
  bool no_validate = false;
  bool no_event_provenance = false;
  bool collect = false;
  unsigned threads = 1;
};

int write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return kIoError;
  }
  return kOk;
}

mg::shapes::ShapeSuite suite_for(const std::string& shapes_file,
                                 const mg::rdf::Vocabulary& vocab) {
  if (shapes_file.empty()) return mg::shapes::builtin_meds_suite(vocab);
  return mg::shapes::load_suite(shapes_file);
}

int run_convert(const ConvertOptions& opt) {
  mg::mapping::MappingContext ctx;
  ctx.base_iri = opt.base_iri;
  ctx.include_event_provenance = !opt.no_event_provenance;
  const auto strictness = opt.collect ? mg::mapping::Strictness::Collect
                                      : mg::mapping::Strictness::FailFast;

  mg::mapping::ConvertResult result;
  try {
    result = mg::mapping::convert_root(opt.input, ctx, strictness, opt.threads,
                                       warn_to_stderr);
  } catch (const mg::meds::IngestError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIngestError;
  } catch (const mg::mapping::MappingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIngestError;
  }
  for (const mg::mapping::ConvertIssue& issue : result.issues)
    std::cerr << "issue: " << issue.where << ": " << issue.message << "\n";

  const mg::rdf::Vocabulary vocab(ctx.meds_namespace);
  if (!opt.no_validate) {
    mg::shapes::ShapeSuite suite;
    try {
      suite = suite_for(opt.shapes_file, vocab);
    } catch (const mg::shapes::ShapeSyntaxError& e) {
      std::cerr << "error: shapes file: " << e.what() << "\n";
      return kIngestError;
    }
    const mg::shapes::ValidationReport report =
        mg::shapes::validate(result.graph, suite);
    if (!report.conforms) {
      mg::shapes::print_report(report, std::cout);
      std::cerr << "error: graph does not conform; nothing written\n";
      return kViolations;
    }
  }

  std::string bytes;
  if (opt.format == "turtle")
    bytes = mg::rdf::serialize_turtle(result.graph, vocab.standard_prefixes());
  else
    bytes = mg::rdf::serialize_ntriples_canonical(result.graph);
  if (const int rc = write_file(opt.output, bytes); rc != kOk) return rc;

  if (!opt.stats_out.empty()) {
    const mg::stats::GraphStats stats =
        mg::stats::compute_stats(result.graph, vocab);
    if (const int rc = write_file(opt.stats_out, mg::stats::stats_json(stats));
        rc != kOk)
      return rc;
  }
  return kOk;
}

int run_validate(const std::string& input, const std::string& shapes_file) {
  mg::rdf::Graph graph;
  try {
    std::ifstream in(input, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot open " << input << "\n";
      return kIngestError;
    }
    graph = mg::rdf::parse_ntriples(in);
  } catch (const mg::rdf::ParseError& e) {
    std::cerr << "error: " << input << ": " << e.what() << "\n";
    return kIngestError;
  }
  const mg::rdf::Vocabulary vocab;
  mg::shapes::ShapeSuite suite;
  try {
    suite = suite_for(shapes_file, vocab);
  } catch (const mg::shapes::ShapeSyntaxError& e) {
    std::cerr << "error: shapes file: " << e.what() << "\n";
    return kIngestError;
  }
  const mg::shapes::ValidationReport report =
      mg::shapes::validate(graph, suite);
  mg::shapes::print_report(report, std::cout);
  return report.conforms ? kOk : kViolations;
}

int run_stats(const std::string& input, const std::string& stats_out) {
  mg::rdf::Graph graph;
  try {
    std::ifstream in(input, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot open " << input << "\n";
      return kIngestError;
    }
    graph = mg::rdf::parse_ntriples(in);
  } catch (const mg::rdf::ParseError& e) {
    std::cerr << "error: " << input << ": " << e.what() << "\n";
    return kIngestError;
  }
  const mg::stats::GraphStats stats = mg::stats::compute_stats(graph);
  const std::string json = mg::stats::stats_json(stats);
  mg::stats::print_stats_table(stats, std::cerr);
  if (stats_out.empty()) {
    std::cout << json;
    return kOk;
  }
  return write_file(stats_out, json);
}

int run_roundtrip(const std::string& input, const std::string& base_iri,
                  unsigned threads, const std::string& report_path) {
  (void)threads;
  mg::meds::MedsDataset dataset;
  try {
    dataset = mg::meds::load_dataset(input, warn_to_stderr);
  } catch (const mg::meds::IngestError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIngestError;
  }
  mg::mapping::MappingContext ctx;
  ctx.base_iri = base_iri;
  mg::mapping::ConvertResult converted;
  try {
    converted = mg::mapping::convert(dataset, ctx);
  } catch (const mg::mapping::MappingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIngestError;
  }
  const mg::rdf::Vocabulary vocab(ctx.meds_namespace);
  const mg::shapes::ValidationReport validation =
      mg::shapes::validate(converted.graph, mg::shapes::builtin_meds_suite(vocab));
  if (!validation.conforms) {
    mg::shapes::print_report(validation, std::cout);
    std::cerr << "error: converted graph does not conform\n";
    return kViolations;
  }
  mg::meds::MedsDataset reconstructed;
  try {
    reconstructed = mg::roundtrip::invert(converted.graph, vocab);
  } catch (const mg::roundtrip::RoundtripError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kViolations;
  }
  const mg::roundtrip::FidelityReport report =
      mg::roundtrip::fidelity(dataset, reconstructed);
  const std::string json = mg::roundtrip::fidelity_json(report);
  if (report_path.empty()) {
    std::cout << json;
  } else if (const int rc = write_file(report_path, json); rc != kOk) {
    return rc;
  }
  if (!report.clean()) {
    std::cerr << "error: round trip produced " << report.diffs.size()
              << " diff(s)\n";
    return kViolations;
  }
  return kOk;
}

struct SynthOptions {
  std::string output;
  mg::synth::SynthConfig config;
  std::string label_kind = "boolean";
  std::string splits;
};

int run_synth(SynthOptions& opt) {
  if (opt.label_kind == "boolean")
    opt.config.label_kind = mg::synth::LabelKind::Boolean;
  else if (opt.label_kind == "integer")
    opt.config.label_kind = mg::synth::LabelKind::Integer;
  else if (opt.label_kind == "float")
    opt.config.label_kind = mg::synth::LabelKind::Float;
  else if (opt.label_kind == "categorical")
    opt.config.label_kind = mg::synth::LabelKind::Categorical;
  else {
    std::cerr << "error: unknown label kind '" << opt.label_kind << "'\n";
    return kUsage;
  }
  if (!opt.splits.empty()) {
    opt.config.split_fractions.clear();
    std::stringstream ss(opt.splits);
    std::string part;
    while (std::getline(ss, part, ',')) {
      const size_t eq = part.find('=');
      if (eq == std::string::npos) {
        std::cerr << "error: --splits expects name=fraction[,...]\n";
        return kUsage;
      }
      opt.config.split_fractions.emplace_back(part.substr(0, eq),
                                              std::stod(part.substr(eq + 1)));
    }
  }
  try {
    const mg::meds::MedsDataset dataset = mg::synth::generate(opt.config);
    mg::meds::write_meds_root(dataset, opt.output);
  } catch (const mg::synth::BadSynthConfig& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MEDS dataset <-> RDF knowledge-graph converter"};
  app.require_subcommand(1);

  ConvertOptions convert_opt;
  CLI::App* convert = app.add_subcommand(
      "convert", "Convert a MEDS root into a validated RDF graph");
  convert->add_option("--input", convert_opt.input, "MEDS root directory")
      ->required();
  convert->add_option("--output", convert_opt.output, "Graph output path")
      ->required();
  convert->add_option("--format", convert_opt.format, "ntriples|turtle")
      ->check(CLI::IsMember({"ntriples", "turtle"}));
  convert->add_option("--base-iri", convert_opt.base_iri, "Instance base IRI")
      ->envname("MEDS_GRAPH_BASE_IRI");
  convert->add_option("--shapes", convert_opt.shapes_file,
                      "Shape suite file (default: builtin)");
  convert->add_option("--stats-out", convert_opt.stats_out,
                      "Write graph statistics JSON here");
  convert->add_flag("--no-validate", convert_opt.no_validate,
                    "Serialize without validating");
  convert->add_flag("--no-event-provenance", convert_opt.no_event_provenance,
                    "Skip per-event prov:wasDerivedFrom triples");
  convert->add_flag("--collect", convert_opt.collect,
                    "Collect record issues instead of failing fast");
  CLI::Option* strict_flag =
      convert->add_flag("--strict", "Fail on the first bad record (default)");
  convert->add_option("--threads", convert_opt.threads,
                      "Shard-level parallelism");

  std::string validate_input, validate_shapes;
  CLI::App* validate = app.add_subcommand(
      "validate", "Validate an N-Triples graph against a shape suite");
  validate->add_option("--input", validate_input, "N-Triples file")
      ->required();
  validate->add_option("--shapes", validate_shapes,
                       "Shape suite file (default: builtin)");

  std::string stats_input, stats_out;
  CLI::App* stats =
      app.add_subcommand("stats", "Graph statistics of an N-Triples file");
  stats->add_option("--input", stats_input, "N-Triples file")->required();
  stats->add_option("--stats-out", stats_out,
                    "Write JSON here instead of stdout");

  std::string rt_input, rt_base = "https://example.org/meds/", rt_report;
  unsigned rt_threads = 1;
  CLI::App* roundtrip = app.add_subcommand(
      "roundtrip", "Convert, invert, and compare against the source tables");
  roundtrip->add_option("--input", rt_input, "MEDS root directory")
      ->required();
  roundtrip->add_option("--base-iri", rt_base, "Instance base IRI")
      ->envname("MEDS_GRAPH_BASE_IRI");
  roundtrip->add_option("--threads", rt_threads, "Shard-level parallelism");
  roundtrip->add_option("--report", rt_report,
                        "Write the fidelity report JSON here");

  SynthOptions synth_opt;
  CLI::App* synth =
      app.add_subcommand("synth", "Generate a synthetic MEDS root");
  synth->add_option("--output", synth_opt.output, "Target directory")
      ->required();
  synth->add_option("--seed", synth_opt.config.seed, "PRNG seed");
  synth->add_option("--subjects", synth_opt.config.n_subjects,
                    "Number of subjects");
  synth->add_option("--events-min", synth_opt.config.events_per_subject_min,
                    "Events per subject, lower bound");
  synth->add_option("--events-max", synth_opt.config.events_per_subject_max,
                    "Events per subject, upper bound");
  synth->add_option("--p-time", synth_opt.config.p_time,
                    "Probability an event is timestamped");
  synth->add_option("--p-numeric", synth_opt.config.p_numeric,
                    "Probability of a numeric value");
  synth->add_option("--p-text", synth_opt.config.p_text,
                    "Probability of a text value");
  synth->add_option("--codes", synth_opt.config.n_codes, "Code table size");
  synth->add_option("--code-depth", synth_opt.config.code_hierarchy_depth,
                    "Code hierarchy depth");
  synth->add_option("--labels-min", synth_opt.config.labels_per_subject_min,
                    "Labels per subject, lower bound");
  synth->add_option("--labels-max", synth_opt.config.labels_per_subject_max,
                    "Labels per subject, upper bound");
  synth->add_option("--label-kind", synth_opt.label_kind,
                    "boolean|integer|float|categorical");
  synth->add_option("--splits", synth_opt.splits,
                    "Split fractions, e.g. train=0.8,tuning=0.1,held_out=0.1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  if (convert->parsed()) {
    if (convert_opt.collect && strict_flag->count() > 0) {
      std::cerr << "error: --strict and --collect are mutually exclusive\n";
      return kUsage;
    }
    return run_convert(convert_opt);
  }
  if (validate->parsed()) return run_validate(validate_input, validate_shapes);
  if (stats->parsed()) return run_stats(stats_input, stats_out);
  if (roundtrip->parsed())
    return run_roundtrip(rt_input, rt_base, rt_threads, rt_report);
  if (synth->parsed()) return run_synth(synth_opt);
  return kUsage;
}
