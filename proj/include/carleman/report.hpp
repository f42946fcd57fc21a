#ifndef CARLEMAN_REPORT_HPP
#define CARLEMAN_REPORT_HPP

#include <ostream>
#include <string>

#include <json.hpp>

#include "carleman/assoc.hpp"
#include "carleman/estimates.hpp"
#include "carleman/ladder.hpp"
#include "carleman/weights.hpp"

namespace carleman {

using Json = nlohmann::ordered_json;

// Deterministic rendering: insertion-ordered keys, 2-space indent, every
// floating value printed with 17 significant digits, non-finite as null.
std::string render_json(const Json& j);
std::string format_double(double x);

Json to_json(const ConditionReport& r);
Json to_json(const Comparison& c);
Json to_json(const Ladder& ladder, const LadderCheck& check, const WeightSequence& seq);
Json to_json(const Lemma2Fit& fit);
// {tag, params, rows: [{k, left, right, ratio, ...}], fit: {C, L_or_gamma, ...} | null, verdict, notes}
Json to_json(const EstimateReport& r);

// Per-row CSV: k,sample,left,right,ratio,log_left,log_right,skipped.
void write_rows_csv(std::ostream& os, const EstimateReport& r);

}  // namespace carleman

#endif  // CARLEMAN_REPORT_HPP
