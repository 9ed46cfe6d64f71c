#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dgkit/dates.hpp"
#include "dgkit/lineage/model.hpp"

namespace dgkit::lineage {

// Cell values stay lexical: ISO dates/datetimes, decimal numbers, or null.
using Cell = std::optional<std::string>;

struct ClinicalRecord {
    std::string subject_id;
    std::map<std::string, Cell> cells; // variable name -> value
};

struct ExecutionContext {
    // fallback study start when the record carries no reference column
    std::optional<dates::Date> reference_start;
    // record column holding the per-subject reference start date
    std::string study_day_ref_var;
};

// Derivation with input/output record columns resolved.
struct ResolvedDerivation {
    Derivation derivation;
    std::vector<std::string> input_names;
    std::vector<std::string> output_names;
};

ResolvedDerivation resolve_derivation(const UcmModel& model, const rdf::Iri& derivation);

// Applies one derivation to a record. Null inputs propagate null outputs;
// study days are never 0 (day 1 is the start day, the day before is -1).
ClinicalRecord execute_derivation(const ResolvedDerivation& d, ClinicalRecord record,
                                  const ExecutionContext& ctx);

// Chains derivations backward from `target`, then forward-executes what the
// record's columns can feed until the target cell is populated.
std::vector<ClinicalRecord> execute_pipeline(const UcmModel& model,
                                             std::vector<ClinicalRecord> records,
                                             const rdf::Iri& target,
                                             const ExecutionContext& ctx);

// Record CSVs carry a subject id column (USUBJID or subject_id) plus one
// column per variable name.
std::vector<ClinicalRecord> records_from_csv(std::string_view csv_text,
                                             std::vector<std::string>& column_order);
std::string records_to_csv(const std::vector<ClinicalRecord>& records,
                           const std::vector<std::string>& column_order);

// Study-day rule: E >= S gives (E - S) + 1, otherwise E - S.
std::int64_t study_day(const dates::Date& event, const dates::Date& start);

} // namespace dgkit::lineage
