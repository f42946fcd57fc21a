#include "carleman/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "carleman/assoc.hpp"
#include "carleman/config.hpp"
#include "carleman/cutoff.hpp"
#include "carleman/estimates.hpp"
#include "carleman/ladder.hpp"
#include "carleman/norms.hpp"
#include "carleman/operators.hpp"
#include "carleman/report.hpp"
#include "carleman/weights.hpp"

namespace carleman {
namespace {

constexpr const char* kOutDirEnv = "CARLEMAN_OUT_DIR";

struct Outputs {
  std::ostream& out;
  std::ostream& err;
  std::optional<std::filesystem::path> dir;

  void file(const std::string& name, const std::string& text) const {
    if (!dir) return;
    std::filesystem::create_directories(*dir);
    std::ofstream f(*dir / name, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + (*dir / name).string());
    f << text;
  }
  void json(const Json& j) const {
    const std::string text = render_json(j);
    out << text;
    file("report.json", text);
  }
  void csv(const std::string& text) const {
    out << text;
    file("rows.csv", text);
  }
};

WeightSequence sequence_at(const RunConfig& cfg, std::size_t i) {
  if (cfg.sequences.size() <= i) throw ConfigError("missing --seq (need " + std::to_string(i + 1) + ")");
  return parse_sequence(cfg.sequences[i], cfg.k_max);
}

IndexWindow window_for(const RunConfig& cfg, const WeightSequence& seq) {
  if (cfg.window) return *cfg.window;
  return {1, std::min<std::size_t>(seq.k_max(), 10000)};
}

std::vector<GridFunction> load_or_sample(const RunConfig& cfg, bool mean_zero, std::size_t count) {
  std::vector<GridFunction> set;
  if (!cfg.input.empty()) {
    std::ifstream in(cfg.input);
    if (!in) throw ConfigError("cannot read " + cfg.input);
    const bool is_json = cfg.input.size() >= 5 && cfg.input.substr(cfg.input.size() - 5) == ".json";
    if (is_json) {
      std::ostringstream ss;
      ss << in.rdbuf();
      set.push_back(spectrum_from_json(ss.str()));
    } else {
      set.push_back(read_samples_csv(in));
    }
    return set;
  }
  std::mt19937_64 rng(cfg.seed);
  for (std::size_t i = 0; i < count; ++i)
    set.push_back(random_band_limited(cfg.dim, cfg.grid_size(), cfg.band, rng, mean_zero));
  return set;
}

int exit_for(Verdict v) { return v == Verdict::violated ? kExitViolation : kExitOk; }

void emit_estimate(const Outputs& o, const EstimateReport& rep) {
  std::ostringstream csv;
  write_rows_csv(csv, rep);
  o.file("rows.csv", csv.str());
  o.json(to_json(rep));
}

int cmd_check(const RunConfig& cfg, const Outputs& o) {
  const WeightSequence seq = sequence_at(cfg, 0);
  const IndexWindow w = window_for(cfg, seq);
  const IndexWindow inner{w.lo, std::min(w.hi, seq.k_max() - 1)};
  Json j;
  j["sequence"] = seq.name();
  j["family"] = to_string(seq.family());
  j["window"] = Json::array({w.lo, w.hi});
  const ConditionReport adm = is_admissible(seq, w);
  j["admissible"] = adm.holds;
  Json conds = Json::array();
  conds.push_back(to_json(check_log_convex(seq, inner)));
  conds.push_back(to_json(check_analytic_inclusion(seq, w)));
  conds.push_back(to_json(check_moderate_growth(seq, w)));
  conds.push_back(to_json(check_deriv_closed(seq, inner)));
  conds.push_back(to_json(check_root_divergence(seq, w)));
  conds.push_back(to_json(adm));
  j["conditions"] = std::move(conds);
  o.json(j);
  return kExitOk;
}

int cmd_compare(const RunConfig& cfg, const Outputs& o) {
  const WeightSequence a = sequence_at(cfg, 0);
  const WeightSequence b = sequence_at(cfg, 1);
  const IndexWindow w = cfg.window ? *cfg.window : IndexWindow{1, std::min<std::size_t>({a.k_max(), b.k_max(), 10000})};
  Json j;
  j["a"] = a.name();
  j["b"] = b.name();
  const Json c = to_json(compare(a, b, w));
  for (auto it = c.begin(); it != c.end(); ++it) j[it.key()] = it.value();
  o.json(j);
  return kExitOk;
}

int cmd_ladder(const RunConfig& cfg, const Outputs& o) {
  const WeightSequence seq = sequence_at(cfg, 0);
  const double sigma = cfg.sigma ? *cfg.sigma : default_sigma(seq);
  const Ladder ladder = build_ladder(seq, cfg.k, sigma, cfg.j_max);
  const LadderCheck check = verify_ladder(ladder, seq);
  o.json(to_json(ladder, check, seq));
  return check.ok && maximality_check(ladder, seq) ? kExitOk : kExitViolation;
}

int cmd_omega(const RunConfig& cfg, const Outputs& o, double t_max, std::size_t points) {
  const WeightSequence seq = sequence_at(cfg, 0);
  const OmegaTable table(seq);
  if (!(t_max > 0.0) || points < 2) throw ConfigError("omega needs --t-max > 0 and --points >= 2");
  std::ostringstream csv;
  csv << "t,omega\n";
  for (std::size_t i = 1; i <= points; ++i) {
    const double t = t_max * static_cast<double>(i) / static_cast<double>(points);
    csv << format_double(t) << ',' << format_double(omega_fast(table, t)) << '\n';
  }
  o.csv(csv.str());
  return kExitOk;
}

int cmd_lemma2(const RunConfig& cfg, const Outputs& o) {
  const WeightSequence seq = sequence_at(cfg, 0);
  const Lemma2Fit fit = lemma2_fit(seq, window_for(cfg, seq));
  std::ostringstream csv;
  csv << "k,Lambda_k,omega_of_Lambda_k,ratio\n";
  for (const Lemma2Row& r : fit.rows)
    csv << r.k << ',' << format_double(std::exp(r.log_lambda)) << ',' << format_double(r.omega) << ','
        << format_double(r.ratio) << '\n';
  o.out << csv.str();
  o.file("rows.csv", csv.str());
  o.file("report.json", render_json(to_json(fit)));
  return kExitOk;
}

int cmd_decompose(const RunConfig& cfg, const Outputs& o) {
  const WeightSequence seq = sequence_at(cfg, 0);
  const double sigma = cfg.sigma ? *cfg.sigma : default_sigma(seq);
  const Ladder ladder = build_ladder(seq, cfg.k, sigma, cfg.j_max);
  const GridFunction u = load_or_sample(cfg, false, 1).front();
  const BandDecomposition dec = band_decompose(u, ladder, seq);
  Json j;
  j["k"] = ladder.base_k;
  j["sigma"] = ladder.sigma;
  j["indices"] = ladder.indices;
  Json bands = Json::array();
  GridFunction sum = GridFunction::zero(u.dim(), u.n());
  double energy = 0.0;
  for (std::size_t b = 0; b < dec.parts.size(); ++b) {
    Json e;
    e["band"] = b;
    if (b < dec.bands()) e["upper_edge"] = std::exp(dec.log_upper_edges[b]);
    else e["residual"] = true;
    const double nb = dec.parts[b].l2_norm();
    e["l2_norm"] = nb;
    energy += nb * nb;
    sum = sum + dec.parts[b];
    bands.push_back(std::move(e));
  }
  j["bands"] = std::move(bands);
  j["uncovered"] = dec.uncovered;
  const double total = u.l2_norm();
  j["l2_norm"] = total;
  j["energy_defect"] = total > 0.0 ? std::abs(energy - total * total) / (total * total) : 0.0;
  j["reconstruction_error"] = (sum - u).l2_norm();
  o.json(j);
  return kExitOk;
}

int cmd_eq19(const RunConfig& cfg, const Outputs& o) {
  const WeightSequence seq = sequence_at(cfg, 0);
  const auto set = load_or_sample(cfg, false, cfg.samples);
  EstimateReport rep;
  rep.tag = "weighted_plancherel";
  rep.params = {{"k_lo", static_cast<double>(cfg.k_lo)},
                {"k_hi", static_cast<double>(cfg.k_hi)},
                {"samples", static_cast<double>(set.size())}};
  rep.verdict = Verdict::bounded_geometric;
  std::size_t violations = 0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (unsigned k = cfg.k_lo; k <= cfg.k_hi; ++k) {
      EstimateReport one = check_eq19(set[i], seq, k);
      one.rows.front().sample = i;
      rep.rows.push_back(one.rows.front());
      if (one.verdict == Verdict::violated) ++violations;
    }
  }
  rep.params.emplace_back("violations", static_cast<double>(violations));
  if (violations > 0) rep.verdict = Verdict::violated;
  emit_estimate(o, rep);
  return exit_for(rep.verdict);
}

int cmd_lemma4(const RunConfig& cfg, const Outputs& o) {
  const WeightSequence seq = sequence_at(cfg, 0);
  const GridFunction u = load_or_sample(cfg, false, 1).front();
  const CutoffFamily family = make_cutoff_family(cfg.inner_box(), cfg.outer_box(), cfg.k_hi, cfg.grid_size());
  const EstimateReport rep = check_lemma4(u, family, seq, cfg.k_lo, cfg.k_hi);
  emit_estimate(o, rep);
  return exit_for(rep.verdict);
}

int cmd_lemma6(const RunConfig& cfg, const Outputs& o) {
  const WeightSequence seq = sequence_at(cfg, 0);
  const OmegaTable omega(seq);
  const GridFunction u = load_or_sample(cfg, false, 1).front();
  const double sigma = cfg.sigma ? *cfg.sigma : default_sigma(seq);
  const EstimateReport rep = sweep_lemma6(u, seq, omega, cfg.k_lo, cfg.k_hi, sigma);
  emit_estimate(o, rep);
  return exit_for(rep.verdict);
}

int cmd_theta(const RunConfig& cfg, const Outputs& o, bool lambda_variant) {
  const WeightSequence seq = sequence_at(cfg, 0);
  const OmegaTable omega(seq);
  const double sigma = cfg.sigma ? *cfg.sigma : default_sigma(seq);
  const EstimateReport rep =
      check_theta_bound(seq, omega, sigma, cfg.k_lo, cfg.k_hi, cfg.gamma.value_or(1.0), 2000,
                        lambda_variant ? ThetaVariant::lambda_exponent : ThetaVariant::omega_exponent);
  emit_estimate(o, rep);
  return exit_for(rep.verdict);
}

EstimateSetup setup_for(const RunConfig& cfg) { return {cfg.inner_box(), cfg.outer_box(), cfg.k_lo, cfg.k_hi}; }

int cmd_operator(const RunConfig& cfg, const Outputs& o) {
  const WeightSequence seq = sequence_at(cfg, 0);
  const OperatorModel op = builtin_operator(cfg.op, cfg.grid_size(), cfg.dim);
  std::vector<GridFunction> set;
  if (op.has_pseudo_inverse()) {
    for (const GridFunction& f : load_or_sample(cfg, true, cfg.samples)) set.push_back(op.pseudo_inverse(f));
  } else {
    set = load_or_sample(cfg, false, cfg.samples);
  }
  const EstimateReport rep = fit_theorem1(op, seq, setup_for(cfg), set);
  emit_estimate(o, rep);
  return exit_for(rep.verdict);
}

int cmd_prop5(const RunConfig& cfg, const Outputs& o) {
  const WeightSequence seq = sequence_at(cfg, 0);
  const OperatorModel op = builtin_operator(cfg.op, cfg.grid_size(), cfg.dim);
  EstimateReport rep;
  if (cfg.input.empty()) {
    rep = fit_prop5(op, seq, setup_for(cfg), cfg.grid_size());
  } else {
    const auto set = load_or_sample(cfg, false, 1);
    rep = fit_prop5(op, seq, setup_for(cfg), cfg.grid_size(), std::span<const GridFunction>(set));
  }
  emit_estimate(o, rep);
  return exit_for(rep.verdict);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Denjoy-Carleman weight sequences, ladders and a priori estimate checks", "carleman"};
  app.require_subcommand(1);

  // Every flag is collected as text and applied over the config file.
  std::map<std::string, std::string> flags;
  std::string config_path;
  std::vector<std::string> seqs;
  double t_max = 100.0;
  std::size_t points = 201;
  bool lambda_variant = false;

  auto add_common = [&](CLI::App* sub, std::initializer_list<const char*> keys) {
    sub->add_option("--config", config_path, "key=value config file");
    sub->add_option("--out", flags["out"], "output directory for report.json / rows.csv");
    for (const char* key : keys) {
      const std::string k = key;
      if (k == "seq") {
        sub->add_option("--seq", seqs, "sequence spec, e.g. gevrey:1, logfam:1,1, qfam:2, table:file.json");
        continue;
      }
      std::string flag = "--" + k;
      std::replace(flag.begin(), flag.end(), '_', '-');
      sub->add_option(flag, flags[k]);
    }
  };

  CLI::App* check = app.add_subcommand("check", "condition report for one sequence");
  add_common(check, {"seq", "window", "k_max"});
  CLI::App* cmp = app.add_subcommand("compare", "order two sequences");
  add_common(cmp, {"seq", "window", "k_max"});
  std::string seq_a, seq_b;
  cmp->add_option("--a", seq_a, "first sequence");
  cmp->add_option("--b", seq_b, "second sequence");
  CLI::App* ladder = app.add_subcommand("ladder", "geometric index ladder");
  add_common(ladder, {"seq", "k", "sigma", "jmax", "k_max"});
  CLI::App* omega = app.add_subcommand("omega", "associated weight function as CSV");
  add_common(omega, {"seq", "k_max"});
  omega->add_option("--t-max", t_max, "largest t");
  omega->add_option("--points", points, "number of equispaced samples in (0, t-max]");
  CLI::App* lemma2 = app.add_subcommand("lemma2", "omega(Lambda_k)/k table as CSV");
  add_common(lemma2, {"seq", "window", "k_max"});
  CLI::App* dec = app.add_subcommand("decompose", "frequency-band decomposition along a ladder");
  add_common(dec, {"seq", "k", "sigma", "jmax", "n", "dim", "band", "seed", "input", "k_max"});
  CLI::App* eq19 = app.add_subcommand("verify-eq19", "weighted Plancherel bound on random functions");
  add_common(eq19, {"seq", "k_lo", "k_hi", "n", "dim", "band", "seed", "samples", "input", "k_max"});
  CLI::App* lemma4 = app.add_subcommand("verify-lemma4", "cutoff estimate |||chi_k u||| <= gamma^k |||u|||_U");
  add_common(lemma4, {"seq", "k_lo", "k_hi", "n", "band", "seed", "input", "V", "U", "k_max"});
  CLI::App* lemma6 = app.add_subcommand("verify-lemma6", "band-weighted estimate swept over k");
  add_common(lemma6, {"seq", "k_lo", "k_hi", "sigma", "n", "band", "seed", "input", "k_max"});
  CLI::App* theta = app.add_subcommand("verify-theta", "Theta_max^(1/(k+1)) bound over a ladder");
  add_common(theta, {"seq", "k_lo", "k_hi", "sigma", "gamma", "k_max"});
  theta->add_flag("--lambda-exponent", lambda_variant, "use exp(-Lambda) instead of exp(-omega(Lambda))");
  CLI::App* opest = app.add_subcommand("operator-estimate", "fit (C, L) for an operator");
  add_common(opest, {"seq", "op", "k_lo", "k_hi", "n", "dim", "band", "seed", "samples", "input", "V", "U", "k_max"});
  CLI::App* prop5 = app.add_subcommand("prop5-estimate", "fit (C, h) over the operator kernel");
  add_common(prop5, {"seq", "op", "k_lo", "k_hi", "n", "dim", "input", "V", "U", "k_max"});

  std::vector<std::string> args(argv + 1, argv + argc);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  const bool operator_cmd = sub == opest || sub == prop5;
  try {
    RunConfig cfg;
    if (operator_cmd) cfg.dim = 2;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot read config " + config_path);
      apply_key_values(cfg, parse_key_values(in));
    }
    std::map<std::string, std::string> given;
    for (const auto& [k, v] : flags)
      if (!v.empty()) given[k] = v;
    apply_key_values(cfg, given);
    if (!seqs.empty()) cfg.sequences = seqs;
    if (!seq_a.empty() || !seq_b.empty()) {
      if (seq_a.empty() || seq_b.empty()) throw ConfigError("compare needs both --a and --b");
      cfg.sequences = {seq_a, seq_b};
    }
    if (sub == lemma4 || sub == lemma6) cfg.dim = 1;
    if (const char* env = std::getenv(kOutDirEnv); env && *env) cfg.out_dir = env;
    cfg.validate();

    Outputs o{out, err, std::nullopt};
    if (given.count("out") || std::getenv(kOutDirEnv) || (!config_path.empty() && cfg.out_dir != "."))
      o.dir = std::filesystem::path(cfg.out_dir);

    if (sub == check) return cmd_check(cfg, o);
    if (sub == cmp) return cmd_compare(cfg, o);
    if (sub == ladder) return cmd_ladder(cfg, o);
    if (sub == omega) return cmd_omega(cfg, o, t_max, points);
    if (sub == lemma2) return cmd_lemma2(cfg, o);
    if (sub == dec) return cmd_decompose(cfg, o);
    if (sub == eq19) return cmd_eq19(cfg, o);
    if (sub == lemma4) return cmd_lemma4(cfg, o);
    if (sub == lemma6) return cmd_lemma6(cfg, o);
    if (sub == theta) return cmd_theta(cfg, o, lambda_variant);
    if (sub == opest) return cmd_operator(cfg, o);
    if (sub == prop5) return cmd_prop5(cfg, o);
    err << "unhandled subcommand " << name << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << name << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << name << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const EmptyBandError& e) {
    err << name << ": numerical failure: " << e.what() << " (band " << e.band() << ")\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << name << ": numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

int run_cli(int argc, char** argv) { return run_cli(argc, argv, std::cout, std::cerr); }

}  // namespace carleman
