#pragma once

#include <json.hpp>

#include "divmet/scan.hpp"

namespace divmet {

using ordered_json = nlohmann::ordered_json;

// Integers that fit a JSON number are emitted as numbers, larger ones as
// decimal strings; rationals are always "p/q" strings.
ordered_json nat_json(const Nat& n);

ordered_json table_json(const DistanceTable& t);
std::string table_csv(const DistanceTable& t);
std::string table_text(const DistanceTable& t);

ordered_json axiom_report_json(const AxiomReport& r);
ordered_json equiv_po_json(const EquivPOReport& r);
ordered_json preorder_json(const Preorder& p);
ordered_json partition_json(const DivisorPartition& p);
ordered_json window_json(const WindowPartition& w);
ordered_json class_report_json(const ClassReport& r);
ordered_json triple_report_json(const TripleEquivalenceReport& r);
ordered_json permutation_report_json(const PermutationReport& r);
ordered_json class_count_json(const ClassCountReport& r);
ordered_json family_disjointness_json(const FamilyDisjointnessReport& r);

// Canonical scan schemas. Deterministic: no timing, no thread counts.
ordered_json scan_report_json(const ScanReport& r);
std::string scan_report_csv(const ScanReport& r);
ordered_json multiperfect_json(const MultiperfectReport& r);
ordered_json census_json(const CensusReport& r);

}  // namespace divmet
