#include "medsgraph/vocabulary.hpp"

namespace medsgraph::rdf {
namespace {

Term ns_term(std::string_view ns, std::string_view local) {
  std::string iri;
  iri.reserve(ns.size() + local.size());
  iri.append(ns).append(local);
  return Term::iri(std::move(iri));
}

}  // namespace

Vocabulary::Vocabulary(std::string meds_ns)
    : subject_class(ns_term(meds_ns, "Subject")),
      event_class(ns_term(meds_ns, "Event")),
      code_class(ns_term(meds_ns, "Code")),
      dataset_metadata_class(ns_term(meds_ns, "DatasetMetadata")),
      subject_split_class(ns_term(meds_ns, "SubjectSplit")),
      subject_label_class(ns_term(meds_ns, "SubjectLabel")),
      value_modality_class(ns_term(meds_ns, "ValueModality")),
      license_document_class(ns_term(kDctNs, "LicenseDocument")),
      activity_class(ns_term(kProvNs, "Activity")),
      has_subject(ns_term(meds_ns, "hasSubject")),
      has_code(ns_term(meds_ns, "hasCode")),
      assigned_split(ns_term(meds_ns, "assignedSplit")),
      parent_code(ns_term(meds_ns, "parentCode")),
      subject_id(ns_term(meds_ns, "subjectId")),
      time(ns_term(meds_ns, "time")),
      code_string(ns_term(meds_ns, "codeString")),
      code_description(ns_term(meds_ns, "codeDescription")),
      numeric_value(ns_term(meds_ns, "numericValue")),
      text_value(ns_term(meds_ns, "textValue")),
      meds_version(ns_term(meds_ns, "medsVersion")),
      prediction_time(ns_term(meds_ns, "predictionTime")),
      boolean_value(ns_term(meds_ns, "booleanValue")),
      integer_value(ns_term(meds_ns, "integerValue")),
      float_value(ns_term(meds_ns, "floatValue")),
      categorical_value(ns_term(meds_ns, "categoricalValue")),
      rdf_type(ns_term(kRdfNs, "type")),
      rdfs_label(ns_term(kRdfsNs, "label")),
      dct_title(ns_term(kDctNs, "title")),
      dct_has_version(ns_term(kDctNs, "hasVersion")),
      dct_created(ns_term(kDctNs, "created")),
      dct_license(ns_term(kDctNs, "license")),
      dcat_distribution(ns_term(kDcatNs, "distribution")),
      dcat_download_url(ns_term(kDcatNs, "downloadURL")),
      dcat_access_url(ns_term(kDcatNs, "accessURL")),
      prov_was_generated_by(ns_term(kProvNs, "wasGeneratedBy")),
      prov_was_derived_from(ns_term(kProvNs, "wasDerivedFrom")),
      meds_ns_(std::move(meds_ns)) {
  for (const std::string_view fixed :
       {kRdfNs, kRdfsNs, kXsdNs, kDctNs, kDcatNs, kProvNs}) {
    if (meds_ns_ == fixed)
      throw BadTerm("meds namespace collides with an imported namespace: " +
                    meds_ns_);
  }
}

std::map<std::string, std::string> Vocabulary::standard_prefixes() const {
  return {
      {"rdf", std::string(kRdfNs)},   {"rdfs", std::string(kRdfsNs)},
      {"xsd", std::string(kXsdNs)},   {"dct", std::string(kDctNs)},
      {"dcat", std::string(kDcatNs)}, {"prov", std::string(kProvNs)},
      {"meds", meds_ns_},
  };
}

}  // namespace medsgraph::rdf
