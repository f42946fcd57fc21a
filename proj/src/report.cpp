#include "carleman/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace carleman {
namespace {

void render(const Json& j, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        render(it.value(), out, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const Json& e : j) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += pad;
        render(e, out, depth + 1);
      }
      out += flat ? "]" : "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s = buf;
  // Keep floats recognizable as floats.
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string render_json(const Json& j) {
  std::string out;
  render(j, out, 0);
  out += "\n";
  return out;
}

Json to_json(const ConditionReport& r) {
  Json j;
  j["condition"] = to_string(r.condition);
  j["holds"] = r.holds;
  j["constant"] = optional_number(r.constant);
  j["witness"] = r.witness ? Json(*r.witness) : Json(nullptr);
  j["window"] = Json::array({r.window.lo, r.window.hi});
  if (r.derived_constant) j["derived_constant"] = *r.derived_constant;
  if (r.witness_log_value) {
    j["witness_log_value"] = *r.witness_log_value;
    j["witness_value"] = std::exp(*r.witness_log_value);
  }
  j["heuristic"] = r.heuristic;
  j["trend"] = to_string(r.trend);
  return j;
}

Json to_json(const Comparison& c) {
  Json j;
  j["verdict"] = to_string(c.verdict);
  j["h"] = c.h;
  j["C1"] = c.c1;
  j["log_h"] = c.log_h;
  j["forward"] = to_string(c.forward);
  j["reverse"] = to_string(c.reverse);
  j["window"] = Json::array({c.window.lo, c.window.hi});
  return j;
}

Json to_json(const Ladder& ladder, const LadderCheck& check, const WeightSequence& seq) {
  Json j;
  j["k"] = ladder.base_k;
  j["sigma"] = ladder.sigma;
  j["indices"] = ladder.indices;
  Json margins = Json::array();
  for (const BandMargin& m : check.margins) {
    Json e;
    e["band"] = m.band;
    e["index"] = m.index;
    e["lambda"] = std::exp(seq.log_lambda(m.index));
    e["lower"] = m.lower;
    e["upper"] = m.upper;
    margins.push_back(std::move(e));
  }
  j["margins"] = std::move(margins);
  j["min_margin"] = check.min_margin;
  j["ok"] = check.ok;
  j["maximal"] = maximality_check(ladder, seq);
  j["truncated"] = ladder.truncated;
  return j;
}

Json to_json(const Lemma2Fit& fit) {
  Json j;
  j["window"] = Json::array({fit.window.lo, fit.window.hi});
  j["max_ratio"] = fit.max_ratio;
  j["argmax"] = fit.argmax;
  j["trend"] = to_string(fit.trend);
  j["H"] = optional_number(fit.h);
  j["D"] = optional_number(fit.d);
  j["H_theory"] = optional_number(fit.h_theory);
  j["within_theory"] = fit.within_theory;
  j["admissible"] = fit.admissible;
  return j;
}

Json to_json(const EstimateReport& r) {
  Json j;
  j["tag"] = r.tag;
  Json params = Json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  j["params"] = std::move(params);
  Json rows = Json::array();
  for (const EstimateRow& row : r.rows) {
    Json e;
    e["k"] = row.k;
    e["left"] = row.left;
    e["right"] = row.right;
    e["ratio"] = row.ratio;
    e["log_left"] = row.log_left;
    e["log_right"] = row.log_right;
    if (row.sample) e["sample"] = *row.sample;
    if (row.skipped) e["skipped"] = true;
    rows.push_back(std::move(e));
  }
  j["rows"] = std::move(rows);
  if (r.fit) {
    Json f;
    f["C"] = r.fit->c;
    f["L_or_gamma"] = r.fit->gamma;
    f["log_C"] = r.fit->log_c;
    f["log_L_or_gamma"] = r.fit->log_gamma;
    f["max_residual"] = r.fit->max_residual;
    f["points"] = r.fit->points;
    f["first_k"] = r.fit->first_k;
    f["concave"] = r.fit->concave;
    j["fit"] = std::move(f);
  } else {
    j["fit"] = nullptr;
  }
  j["verdict"] = to_string(r.verdict);
  j["notes"] = r.notes;
  return j;
}

void write_rows_csv(std::ostream& os, const EstimateReport& r) {
  os << "k,sample,left,right,ratio,log_left,log_right,skipped\n";
  auto num = [](double x) { return std::isfinite(x) ? format_double(x) : (x > 0 ? "inf" : (x < 0 ? "-inf" : "nan")); };
  for (const EstimateRow& row : r.rows) {
    os << row.k << ',' << (row.sample ? std::to_string(*row.sample) : "") << ',' << num(row.left) << ','
       << num(row.right) << ',' << num(row.ratio) << ',' << num(row.log_left) << ',' << num(row.log_right) << ','
       << (row.skipped ? 1 : 0) << '\n';
  }
}

}  // namespace carleman
