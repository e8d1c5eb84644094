#pragma once

#include <map>
#include <string>
#include <string_view>

#include "medsgraph/term.hpp"

namespace medsgraph::rdf {

inline constexpr std::string_view kRdfNs =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfsNs =
    "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kXsdNs =
    "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kDctNs = "http://purl.org/dc/terms/";
inline constexpr std::string_view kDcatNs = "http://www.w3.org/ns/dcat#";
inline constexpr std::string_view kProvNs = "http://www.w3.org/ns/prov#";

/// Placeholder namespace for the MEDS vocabulary. Substitute the published
/// ontology IRI through the Vocabulary constructor when one is pinned.
inline constexpr std::string_view kDefaultMedsNs =
    "https://example.org/meds-owl#";

/// IRI constants for the MEDS vocabulary plus the imported DCTERMS / DCAT /
/// PROV-O / RDF(S) terms. The meds namespace is configurable; everything
/// else is fixed by its publisher.
class Vocabulary {
 public:
  explicit Vocabulary(std::string meds_ns = std::string(kDefaultMedsNs));

  const std::string& meds_ns() const { return meds_ns_; }

  /// Prefix table (rdf, rdfs, xsd, dct, dcat, prov, meds) for Turtle output.
  std::map<std::string, std::string> standard_prefixes() const;

  // MEDS classes.
  Term subject_class;
  Term event_class;
  Term code_class;
  Term dataset_metadata_class;
  Term subject_split_class;
  Term subject_label_class;
  Term value_modality_class;

  // Imported classes.
  Term license_document_class;  // dct:LicenseDocument
  Term activity_class;          // prov:Activity

  // MEDS object properties.
  Term has_subject;
  Term has_code;
  Term assigned_split;
  Term parent_code;

  // MEDS data properties.
  Term subject_id;
  Term time;
  Term code_string;
  Term code_description;
  Term numeric_value;
  Term text_value;
  Term meds_version;
  Term prediction_time;
  Term boolean_value;
  Term integer_value;
  Term float_value;
  Term categorical_value;

  // Imported properties.
  Term rdf_type;
  Term rdfs_label;
  Term dct_title;
  Term dct_has_version;
  Term dct_created;
  Term dct_license;
  Term dcat_distribution;
  Term dcat_download_url;
  Term dcat_access_url;
  Term prov_was_generated_by;
  Term prov_was_derived_from;

 private:
  std::string meds_ns_;
};

}  // namespace medsgraph::rdf
