// nlft: discrete SU(1,1) nonlinear Fourier transform toolkit.
//
// Subcommands: `nft eval` (transform on a circle grid), `variation`
// (r-variation with the optimal partition), `verify` (identity and
// inequality checks on files or seeded ensembles), `experiment` (ensemble
// ratio tables). All randomness derives from --seed through counter-based
// streams, so a given trial is reproducible in isolation and reports are
// byte-identical across runs.

#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <nlft/experiments.hpp>
#include <nlft/io.hpp>
#include <nlft/nlft.hpp>

using namespace nlft;

namespace {

struct OutputSink {
  std::string path;  // empty: stdout

  void write(const std::string& text) const {
    if (path.empty()) {
      std::fwrite(text.data(), 1, text.size(), stdout);
      return;
    }
    write_text_file(path, text);
  }
};

std::string render_json(const Json& j) { return j.dump(2) + "\n"; }

double parse_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity") return kInfExponent;
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw ParseError("trailing characters in exponent: " + text);
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("cannot parse exponent: '" + text + "'");
  }
}

Json config_json(const EnsembleConfig& cfg) {
  return Json{{"seed", cfg.seed},
              {"trials", cfg.trials},
              {"support_lo", cfg.support_lo},
              {"support_hi", cfg.support_hi},
              {"radius", cfg.radius},
              {"Q", cfg.Q},
              {"law", cfg.law == DiscLaw::uniform_disc ? "disc" : "modulus"}};
}

std::string reports_to_csv(const std::vector<CheckReport>& reports) {
  std::string out = report_csv_header() + "\n";
  for (const auto& rep : reports) out += report_to_csv_row(rep) + "\n";
  return out;
}

std::string rows_to_csv(const std::vector<TrialRow>& rows, const EnsembleSummary& summary) {
  std::string out = "trial,lhs,rhs,ratio,theta,pass\n";
  for (const auto& row : rows)
    out += std::to_string(row.trial) + "," + float17(row.lhs) + "," + float17(row.rhs) + "," +
           float17(row.ratio) + "," + float17(row.theta) + "," + (row.pass ? "1" : "0") + "\n";
  out += "max,,," + float17(summary.max_ratio) + ",,\n";
  out += "median,,," + float17(summary.median_ratio) + ",,\n";
  return out;
}

Json rows_to_json(const std::vector<TrialRow>& rows, const EnsembleSummary& summary) {
  Json arr = Json::array();
  for (const auto& row : rows)
    arr.push_back({{"trial", row.trial},
                   {"lhs", row.lhs},
                   {"rhs", row.rhs},
                   {"ratio", row.ratio},
                   {"theta", row.theta},
                   {"pass", row.pass}});
  return Json{{"rows", arr},
              {"summary",
               {{"max_ratio", summary.max_ratio},
                {"median_ratio", summary.median_ratio},
                {"all_pass", summary.all_pass}}}};
}

DiscLaw law_from(const std::string& name) {
  return name == "modulus" ? DiscLaw::uniform_modulus : DiscLaw::uniform_disc;
}

struct EnsembleFlags {
  EnsembleConfig cfg;
  std::string law = "disc";
  std::string input;
  CLI::App* cmd = nullptr;
};

// Shared ensemble flags; radius and Q defaults vary per command.
void add_ensemble_flags(CLI::App* cmd, EnsembleFlags& state) {
  cmd->add_option("--seed", state.cfg.seed, "base seed for the counter generator");
  cmd->add_option("--trials", state.cfg.trials, "number of seeded draws");
  cmd->add_option(
      "--support",
      [&state](const std::vector<std::string>& vals) {
        const std::string& v = vals.back();
        const auto comma = v.find(',');
        if (comma == std::string::npos) throw CLI::ValidationError("--support expects 'lo,hi'");
        try {
          state.cfg.support_lo = std::stoi(v.substr(0, comma));
          state.cfg.support_hi = std::stoi(v.substr(comma + 1));
        } catch (const std::exception&) {
          throw CLI::ValidationError("--support expects integers 'lo,hi'");
        }
        return true;
      },
      "support interval as 'lo,hi'");
  cmd->add_option("--radius", state.cfg.radius, "modulus bound of random entries, in (0,1)");
  cmd->add_option("--Q", state.cfg.Q, "circle grid size");
  cmd->add_option("--law", state.law, "draw law: disc (area-uniform) or modulus")
      ->check(CLI::IsMember({"disc", "modulus"}));
}

int emit_reports(const std::string& command, const EnsembleConfig& cfg,
                 const std::vector<CheckReport>& reports, const std::string& format,
                 const OutputSink& sink) {
  bool all_pass = true;
  for (const auto& rep : reports) all_pass = all_pass && rep.pass;
  if (format == "csv") {
    sink.write(reports_to_csv(reports));
  } else {
    Json arr = Json::array();
    for (const auto& rep : reports) arr.push_back(report_to_json(rep));
    sink.write(render_json(Json{{"command", command},
                                {"config", config_json(cfg)},
                                {"all_pass", all_pass},
                                {"reports", arr}}));
  }
  return all_pass ? 0 : 1;
}

int emit_rows(const std::string& command, const EnsembleConfig& cfg, const Json& params,
              const std::vector<TrialRow>& rows, const std::string& format,
              const OutputSink& sink) {
  const EnsembleSummary summary = summarize(rows);
  if (format == "csv") {
    sink.write(rows_to_csv(rows, summary));
  } else {
    Json body = rows_to_json(rows, summary);
    body["command"] = command;
    body["config"] = config_json(cfg);
    for (auto it = params.begin(); it != params.end(); ++it) body["config"][it.key()] = *it;
    sink.write(render_json(body));
  }
  return summary.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete SU(1,1) nonlinear Fourier transform toolkit"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string format = "json";
  OutputSink sink;
  app.add_option("--format", format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", sink.path, "output path (default: stdout)");

  // ---- nft eval -----------------------------------------------------------
  auto* nft_cmd = app.add_subcommand("nft", "evaluate the transform");
  nft_cmd->require_subcommand(1);
  auto* eval_cmd = nft_cmd->add_subcommand("eval", "full transform on a circle grid");
  std::string eval_input;
  int eval_q = 0;
  eval_cmd->add_option("--input", eval_input, "potential file (.csv or .json)")->required();
  eval_cmd->add_option("--Q", eval_q, "circle grid size")->required();

  // ---- variation ----------------------------------------------------------
  auto* var_cmd = app.add_subcommand("variation", "r-variation with the optimal partition");
  std::string var_curve = "gamma", var_input, var_r_text = "2", var_dump;
  double var_theta = 0.0;
  var_cmd->add_option("--curve", var_curve, "gamma (group) or sigma (algebra)")
      ->check(CLI::IsMember({"gamma", "sigma"}));
  var_cmd->add_option("--r", var_r_text, "variation exponent in [1, inf]")->required();
  var_cmd->add_option("--input", var_input, "potential file")->required();
  var_cmd->add_option("--z", var_theta, "circle point as an angle in radians")->required();
  var_cmd->add_option("--dump-curve", var_dump, "write the sampled curve as JSON");

  // ---- verify -------------------------------------------------------------
  auto* verify_cmd = app.add_subcommand("verify", "identity and inequality checks");
  verify_cmd->require_subcommand(1);
  std::map<std::string, EnsembleFlags> verify_subs;
  const auto add_verify = [&](const std::string& name, const std::string& help, double radius,
                              int q, int trials, bool with_input) {
    EnsembleFlags& sub = verify_subs[name];
    sub.cfg.trials = trials;
    sub.cfg.radius = radius;
    sub.cfg.Q = q;
    sub.cmd = verify_cmd->add_subcommand(name, help);
    add_ensemble_flags(sub.cmd, sub);
    if (with_input)
      sub.cmd->add_option("--input", sub.input, "check this potential file instead");
  };

  // defaults keep every check inside its double-precision envelope
  add_verify("plancherel", "mean of log|a| against the closed form", 0.7, 1 << 13, 20, true);
  add_verify("riemann-lebesgue", "sup of sqrt(log|a|) against the ell^1 sum", 0.9, 512, 20,
             true);
  add_verify("unit-step", "one-step logarithm identity", 0.45, 64, 200, false);
  add_verify("v1", "1-variation additivity", 0.6, 64, 20, true);
  add_verify("norm-identity", "transfer matrix norm identity", 0.9, 64, 500, false);
  add_verify("monotonicity", "variation decreasing in the exponent", 0.9, 64, 100, false);
  add_verify("triangle", "concatenation triangle inequalities", 0.9, 64, 100, false);
  auto* verify_all = verify_cmd->add_subcommand("all", "run every check");
  EnsembleFlags all_state;
  all_state.cmd = verify_all;
  add_ensemble_flags(verify_all, all_state);

  // ---- experiment ---------------------------------------------------------
  auto* exp_cmd = app.add_subcommand("experiment", "ensemble ratio tables");
  exp_cmd->require_subcommand(1);
  struct ExpState {
    EnsembleFlags flags;
    double p = 1.5;
    std::string r_text = "1.8";
  };
  std::map<std::string, ExpState> exp_subs;
  const auto add_experiment = [&](const std::string& name, const std::string& help,
                                  double radius) {
    ExpState& state = exp_subs[name];
    state.flags.cfg.radius = radius;
    state.flags.cmd = exp_cmd->add_subcommand(name, help);
    state.flags.cmd->add_option("--p", state.p, "lower exponent");
    state.flags.cmd->add_option("--r", state.r_text, "variation exponent");
    add_ensemble_flags(state.flags.cmd, state.flags);
  };
  add_experiment("prop21", "gamma-vs-sigma excess over its budget", 0.9);
  add_experiment("cor22", "sigma-vs-gamma excess over its budget", 0.9);
  add_experiment("step1", "multi-step log defect over squared V_r", 0.05);
  add_experiment("hy", "Hausdorff-Young ratio", 0.9);
  add_experiment("mpz", "variational MPZ ratio", 0.9);
  add_experiment("main-theorem", "two-regime bound ratio", 0.9);

  auto* sharp_cmd =
      exp_cmd->add_subcommand("sharpness", "endpoint growth along the trapezoidal family");
  double sharp_p = 1.5;
  std::string sharp_ms = "4,8,16,32,64";
  int sharp_q = 1 << 10;
  sharp_cmd->add_option("--p", sharp_p, "exponent in (1,2)");
  sharp_cmd->add_option("--M", sharp_ms, "comma list of family sizes");
  sharp_cmd->add_option("--Q", sharp_q, "circle grid size");

  auto* ck_cmd = exp_cmd->add_subcommand("ck", "dyadic decomposition and majorization chain");
  EnsembleFlags ck_flags;
  double ck_p = 1.5;
  std::string ck_r_text = "1.8";
  int ck_depth = 10;
  ck_flags.cfg.trials = 20;
  ck_flags.cfg.Q = 256;
  ck_flags.cmd = ck_cmd;
  ck_cmd->add_option("--p", ck_p, "mass exponent");
  ck_cmd->add_option("--r", ck_r_text, "variation exponent, p < r < p'");
  ck_cmd->add_option("--depth", ck_depth, "dyadic depth (<= 20)");
  ck_cmd->add_option("--input", ck_flags.input, "potential file (otherwise seeded ensemble)");
  add_ensemble_flags(ck_cmd, ck_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(ErrorClass::parse);
  }

  try {
    // ---- nft eval ----
    if (eval_cmd->parsed()) {
      const Potential f = read_potential_file(eval_input);
      const CircleGrid grid = circle_grid(eval_q);
      if (format == "csv") {
        std::string out = "theta,a_re,a_im,b_re,b_im\n";
        for (int j = 0; j < grid.Q; ++j) {
          const GroupElement g = full_nft(f, grid.point(j));
          out += float17(grid.point(j).theta) + "," + float17(g.a.real()) + "," +
                 float17(g.a.imag()) + "," + float17(g.b.real()) + "," + float17(g.b.imag()) +
                 "\n";
        }
        sink.write(out);
      } else {
        Json points = Json::array();
        for (int j = 0; j < grid.Q; ++j) {
          const GroupElement g = full_nft(f, grid.point(j));
          points.push_back({{"theta", grid.point(j).theta},
                            {"a_re", g.a.real()},
                            {"a_im", g.a.imag()},
                            {"b_re", g.b.real()},
                            {"b_im", g.b.imag()}});
        }
        sink.write(
            render_json(Json{{"command", "nft eval"}, {"Q", grid.Q}, {"points", points}}));
      }
      return 0;
    }

    // ---- variation ----
    if (var_cmd->parsed()) {
      const Potential f = read_potential_file(var_input);
      const double r = parse_exponent(var_r_text);
      const CirclePoint z = CirclePoint::from_angle(var_theta);
      VariationResult res;
      Json dump;
      if (var_curve == "gamma") {
        const auto curve = gamma_curve(f, z);
        res = variation(curve, {r});
        if (!var_dump.empty()) dump = curve_to_json(curve);
      } else {
        const auto curve = sigma_curve(f, z);
        res = variation(curve, {r});
        if (!var_dump.empty()) dump = curve_to_json(curve);
      }
      if (!var_dump.empty()) write_text_file(var_dump, render_json(dump));
      sink.write(render_json(Json{{"command", "variation"},
                                  {"curve", var_curve},
                                  {"r", r},
                                  {"theta", z.theta},
                                  {"value", res.value},
                                  {"partition", res.partition}}));
      return 0;
    }

    // ---- verify ----
    if (verify_cmd->parsed()) {
      const auto run_one = [&](const std::string& name, const EnsembleConfig& cfg,
                               const std::string& input) -> std::vector<CheckReport> {
        if (!input.empty()) {
          const Potential f = read_potential_file(input);
          if (name == "plancherel") return {check_plancherel(f, cfg.Q)};
          if (name == "riemann-lebesgue") return {check_riemann_lebesgue(f, cfg.Q)};
          if (name == "v1") {
            std::vector<CheckReport> reps;
            const CircleGrid grid = circle_grid(std::min(cfg.Q, 256));
            for (int j = 0; j < grid.Q; ++j) reps.push_back(v1_identity(f, grid.point(j)));
            return reps;
          }
        }
        if (name == "plancherel") return run_verify_plancherel(cfg);
        if (name == "riemann-lebesgue") return run_verify_riemann_lebesgue(cfg);
        if (name == "unit-step") return run_verify_unit_step(cfg);
        if (name == "v1") return run_verify_v1(cfg);
        if (name == "norm-identity") return run_verify_norm_identity(cfg, 1e-12);
        if (name == "monotonicity") return run_verify_monotonicity(cfg);
        return run_verify_triangle(cfg);
      };

      if (verify_all->parsed()) {
        std::vector<CheckReport> reports;
        for (const auto& name : {"plancherel", "riemann-lebesgue", "unit-step", "v1",
                                 "norm-identity", "monotonicity", "triangle"}) {
          EnsembleConfig cfg = verify_subs[name].cfg;
          cfg.seed = all_state.cfg.seed;
          if (verify_all->count("--trials")) cfg.trials = all_state.cfg.trials;
          if (verify_all->count("--Q")) cfg.Q = all_state.cfg.Q;
          if (verify_all->count("--support")) {
            cfg.support_lo = all_state.cfg.support_lo;
            cfg.support_hi = all_state.cfg.support_hi;
          }
          if (verify_all->count("--radius")) cfg.radius = all_state.cfg.radius;
          if (verify_all->count("--law")) cfg.law = law_from(all_state.law);
          auto reps = run_one(name, cfg, "");
          for (auto& rep : reps) {
            rep.metadata["check"] = name;
            reports.push_back(std::move(rep));
          }
        }
        return emit_reports("verify all", all_state.cfg, reports, format, sink);
      }

      for (auto& [name, sub] : verify_subs) {
        if (!sub.cmd->parsed()) continue;
        sub.cfg.law = law_from(sub.law);
        return emit_reports("verify " + name, sub.cfg, run_one(name, sub.cfg, sub.input),
                            format, sink);
      }
    }

    // ---- experiment ----
    if (exp_cmd->parsed()) {
      for (auto& [name, state] : exp_subs) {
        if (!state.flags.cmd->parsed()) continue;
        state.flags.cfg.law = law_from(state.flags.law);
        const double r = parse_exponent(state.r_text);
        const Json params{{"p", state.p}, {"r", r}};
        const EnsembleConfig& cfg = state.flags.cfg;
        std::vector<TrialRow> rows;
        if (name == "prop21") rows = run_prop21_ensemble(cfg, r);
        if (name == "cor22") rows = run_cor22_ensemble(cfg, r);
        if (name == "step1") {
          if (!(cfg.radius <= 0.45))
            throw BadRadius("step1 ensembles require radius <= 0.45 (principal log region)");
          rows = run_step1_ensemble(cfg, r);
        }
        if (name == "hy") rows = run_hy_ensemble(cfg, state.p);
        if (name == "mpz") rows = run_mpz_ensemble(cfg, state.p, r);
        if (name == "main-theorem") rows = run_theorem_ensemble(cfg, state.p, r);
        return emit_rows("experiment " + name, cfg, params, rows, format, sink);
      }

      if (sharp_cmd->parsed()) {
        std::vector<int> Ms;
        std::stringstream ss(sharp_ms);
        std::string item;
        while (std::getline(ss, item, ','))
          Ms.push_back(detail::parse_int(detail::trim(item), "M"));
        const SharpnessSeries series = sharpness_series(sharp_p, Ms, sharp_q);
        if (format == "csv") {
          std::string out = "M,lhs,rhs,ratio\n";
          for (const auto& pt : series.points)
            out += std::to_string(pt.M) + "," + float17(pt.lhs) + "," + float17(pt.rhs) + "," +
                   float17(pt.ratio) + "\n";
          out += "fitted_exponent,,," + float17(series.fitted_exponent) + "\n";
          sink.write(out);
        } else {
          Json rows = Json::array();
          for (const auto& pt : series.points)
            rows.push_back(
                {{"M", pt.M}, {"lhs", pt.lhs}, {"rhs", pt.rhs}, {"ratio", pt.ratio}});
          sink.write(render_json(Json{{"command", "experiment sharpness"},
                                      {"p", sharp_p},
                                      {"Q", sharp_q},
                                      {"rows", rows},
                                      {"fitted_exponent", series.fitted_exponent}}));
        }
        return 0;
      }

      if (ck_cmd->parsed()) {
        ck_flags.cfg.law = law_from(ck_flags.law);
        const double ck_r = parse_exponent(ck_r_text);
        std::vector<CheckReport> reports;
        if (!ck_flags.input.empty()) {
          reports.push_back(ck_bound_check(read_potential_file(ck_flags.input), ck_p, ck_r,
                                           ck_flags.cfg.Q, ck_depth));
        } else {
          for (int i = 0; i < ck_flags.cfg.trials; ++i) {
            CheckReport rep = ck_bound_check(ensemble_potential(ck_flags.cfg, i), ck_p, ck_r,
                                             ck_flags.cfg.Q, ck_depth);
            rep.metadata["trial"] = std::to_string(i);
            reports.push_back(std::move(rep));
          }
        }
        return emit_reports("experiment ck", ck_flags.cfg, reports, format, sink);
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.error_class());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
