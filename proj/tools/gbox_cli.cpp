// Command-line front end: evaluate correlation series, run CHSH and chained
// Bell tests, build and sample hidden-variable models, exercise the quantum
// reference boxes, and certify sphere-input boxes from sampled data.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "gbox/chained.hpp"
#include "gbox/corrfn.hpp"
#include "gbox/jointbox.hpp"
#include "gbox/json_io.hpp"
#include "gbox/lhv.hpp"
#include "gbox/quantum.hpp"
#include "gbox/rng.hpp"
#include "gbox/sodbox.hpp"

namespace {

using gbox::CorrelationFunction;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kNegative = 2;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

// Artifacts land via temp file + rename so readers never see partial output.
void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output path: " + path);
    out << content;
  }
  fs::rename(tmp, target);
}

void emit(const std::optional<std::string>& out_path, const std::string& content) {
  if (out_path)
    write_atomic(*out_path, content);
  else
    std::cout << content;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return j;
}

CorrelationFunction load_correlation(const std::string& path) {
  try {
    return gbox::correlation_from_json(load_json(path));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

// Built-in reference signal: (2/7)cos 3t - cos t.
CorrelationFunction scifi_correlation() {
  CorrelationFunction f(3);
  f.add_term({3, 3}, 2.0 / 7.0, 0.0);
  f.add_term({1, 1}, -1.0, 0.0);
  return f;
}

struct RunConfig {
  std::uint64_t seed = 0;
  std::optional<std::string> out;
  std::string format = "json";
};

void apply_config_file(const std::string& path, RunConfig& cfg) {
  const json j = load_json(path);
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("output")) cfg.out = j.at("output").get<std::string>();
  if (j.contains("format")) cfg.format = j.at("format").get<std::string>();
}

struct SodboxRow {
  Eigen::VectorXd x, y;
  std::array<double, 4> p;
};

std::vector<SodboxRow> load_sodbox_csv(const std::string& path, int dim) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::vector<SodboxRow> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (lineno == 1 && line.find("x1") != std::string::npos) continue;  // header
    std::stringstream ss(line);
    std::vector<double> vals;
    std::string cell;
    while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
    if (static_cast<int>(vals.size()) != 2 * dim + 4)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected " + std::to_string(2 * dim + 4) +
                               " columns (x1..xd,y1..yd,p_pp,p_pm,p_mp,p_mm)");
    SodboxRow r;
    r.x = Eigen::Map<Eigen::VectorXd>(vals.data(), dim);
    r.y = Eigen::Map<Eigen::VectorXd>(vals.data() + dim, dim);
    for (int k = 0; k < 4; ++k) r.p[k] = vals[2 * dim + k];
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rotation-symmetric Bell-test toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;
  app.add_option("--config", config_path, "JSON run configuration file");
  app.add_option("--seed", cfg.seed, "RNG seed for stochastic commands");
  std::string out_path;
  auto* out_opt = app.add_option("--out", out_path, "write the artifact here (atomic)");
  int workers = 1;
  app.add_option("--workers", workers,
                 "worker count; per-sample RNG streams make artifacts "
                 "byte-identical for any value")
      ->check(CLI::PositiveNumber);

  // --- eval: evaluate a series or export a probability-table sweep ---------
  auto* eval = app.add_subcommand(
      "eval", "Evaluate a correlation series C(alpha, beta), or sweep the "
              "induced probability table P = 1/4 + 1/4 ab C over a grid");
  std::string eval_corr;
  double eval_alpha = 0.0, eval_beta = 0.0;
  int eval_grid = 0;
  eval->add_option("--corr", eval_corr, "series JSON file")->required();
  eval->add_option("--alpha", eval_alpha, "Alice angle");
  eval->add_option("--beta", eval_beta, "Bob angle");
  eval->add_option("--grid", eval_grid,
                   "emit CSV alpha,beta,p_pp,p_pm,p_mp,p_mm over an NxN grid");

  // --- chsh ------------------------------------------------------------------
  auto* chsh = app.add_subcommand(
      "chsh", "Four-term Bell value C(a1,b2)+C(a3,b2)+C(a3,b4)-C(a1,b4); "
              "classical bound 2");
  std::string chsh_corr;
  bool chsh_scifi = false, chsh_max = false;
  std::vector<double> chsh_angles;
  chsh->add_option("--corr", chsh_corr, "series JSON file");
  chsh->add_flag("--scifi", chsh_scifi,
                 "use the built-in (2/7)cos 3t - cos t signal");
  chsh->add_option("--angles", chsh_angles, "a1 b2 a3 b4")->expected(4);
  chsh->add_flag("--maximize", chsh_max, "grid + coordinate-descent optimum");

  // --- bci -------------------------------------------------------------------
  auto* bci = app.add_subcommand(
      "bci", "N-setting chained Bell inequality; classical bound N-2");
  std::string bci_corr;
  int bci_n = 4;
  double bci_tp = 0.0, bci_tm = std::numbers::pi;
  bci->add_option("--corr", bci_corr, "series JSON file")->required();
  bci->add_option("--n", bci_n, "even number of settings, >= 4");
  bci->add_option("--theta-plus", bci_tp, "correlation angle");
  bci->add_option("--theta-minus", bci_tm, "anticorrelation angle");

  // --- witness ---------------------------------------------------------------
  auto* witness = app.add_subcommand(
      "witness", "Two-angle nonlocality witness: measure purity at theta-plus "
                 "and the gap at theta-minus, then search even N for a "
                 "violated chained inequality");
  std::string wit_corr;
  double wit_tp = 0.0, wit_tm = std::numbers::pi;
  int wit_cap = 10000;
  witness->add_option("--corr", wit_corr, "series JSON file")->required();
  witness->add_option("--theta-plus", wit_tp, "near-perfect-correlation angle")
      ->required();
  witness->add_option("--theta-minus", wit_tm, "gap angle")->required();
  witness->add_option("--n-cap", wit_cap, "largest N to scan");

  // --- protocol --------------------------------------------------------------
  auto* protocol = app.add_subcommand(
      "protocol", "Finite-shot two-setting witness protocol with a shared "
                  "uniform angle offset");
  std::string proto_corr;
  int proto_two_j = 1;
  double proto_tp = 0.0, proto_tm = std::numbers::pi, proto_sigmas = 4.0;
  long long proto_shots = 100000;
  protocol->add_option("--corr", proto_corr, "series JSON file")->required();
  protocol->add_option("--two-j", proto_two_j, "spin promise as the integer 2J")
      ->required();
  protocol->add_option("--theta-plus", proto_tp, "purity angle")->required();
  protocol->add_option("--theta-minus", proto_tm, "gap angle")->required();
  protocol->add_option("--shots", proto_shots, "total number of shots");
  protocol->add_option("--sigmas", proto_sigmas, "statistical margin in stderrs");

  // --- lhv ---------------------------------------------------------------
  auto* lhv = app.add_subcommand(
      "lhv", "Hidden-variable constructions: worst-case constants, explicit "
             "models, certificates, Monte-Carlo sampling");
  auto* lhv_gamma = lhv->add_subcommand(
      "gamma", "worst-case shrink factor gamma_N and its window half-width");
  int gamma_n_arg = 1;
  lhv_gamma->add_option("--n", gamma_n_arg, "number of series terms")->required();
  auto* lhv_build = lhv->add_subcommand(
      "build", "explicit model for a zero-constant series at a given window");
  std::string lhvb_corr;
  double lhvb_xi = 1.0;
  lhv_build->add_option("--corr", lhvb_corr, "series JSON file")->required();
  lhv_build->add_option("--xi", lhvb_xi, "window half-width in (0, pi)");
  auto* lhv_certify = lhv->add_subcommand(
      "certify", "noise certificate max|C - C00| <= gamma_N (1 - |C00|)");
  std::string lhvc_corr;
  lhv_certify->add_option("--corr", lhvc_corr, "series JSON file")->required();
  auto* lhv_sample = lhv->add_subcommand(
      "sample", "Monte-Carlo outcomes of a stored model at fixed angles");
  std::string lhvs_model;
  double lhvs_alpha = 0.0, lhvs_beta = 0.0;
  long long lhvs_shots = 100000;
  lhv_sample->add_option("--model", lhvs_model, "model JSON file")->required();
  lhv_sample->add_option("--alpha", lhvs_alpha, "Alice angle");
  lhv_sample->add_option("--beta", lhvs_beta, "Bob angle");
  lhv_sample->add_option("--shots", lhvs_shots, "number of samples");
  lhv->require_subcommand(1);

  // --- quantum -----------------------------------------------------------
  auto* quantum = app.add_subcommand(
      "quantum", "Two-qubit reference boxes from the noisy-singlet family");
  double q_werner = 1.0;
  bool q_sweep = false, q_chsh_max = false;
  int q_points = 360;
  quantum->add_option("--werner", q_werner, "noise parameter p in [0, 1]")
      ->required();
  quantum->add_flag("--sweep", q_sweep, "CSV of C(alpha - beta) over one period");
  quantum->add_flag("--chsh-max", q_chsh_max, "optimized CHSH value and angles");
  quantum->add_option("--points", q_points, "sweep resolution");

  // --- sodbox --------------------------------------------------------------
  auto* sodbox = app.add_subcommand(
      "sodbox", "Certify a sampled sphere-input box: affine structure, local "
                "unbiasedness, unitality, cone positivity");
  std::string sod_csv;
  int sod_dim = 3;
  sodbox->add_option("--csv", sod_csv,
                     "rows x1..xd,y1..yd,p_pp,p_pm,p_mp,p_mm")->required();
  sodbox->add_option("--dim", sod_dim, "sphere dimension d in [2, 16]");

  // --- fit -----------------------------------------------------------------
  auto* fit = app.add_subcommand(
      "fit", "Least-squares trig-series fit of sampled correlations");
  std::string fit_csv;
  int fit_two_j = 1;
  fit->add_option("--samples", fit_csv, "CSV rows alpha,beta,value")->required();
  fit->add_option("--two-j", fit_two_j, "frequency cap as the integer 2J");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) apply_config_file(config_path, cfg);
    if (out_opt->count()) cfg.out = out_path;

    if (*eval) {
      const auto f = load_correlation(eval_corr);
      if (eval_grid > 0) {
        const auto box = gbox::from_correlation(f);
        std::ostringstream csv;
        csv << "alpha,beta,p_pp,p_pm,p_mp,p_mm\n";
        const double step = 2.0 * std::numbers::pi / eval_grid;
        for (int i = 0; i < eval_grid; ++i)
          for (int j = 0; j < eval_grid; ++j) {
            const double a = i * step, b = j * step;
            csv << fmt(a) << ',' << fmt(b);
            for (int aa : {+1, -1})
              for (int bb : {+1, -1})
                csv << ',' << fmt(box.evaluate_joint(aa, bb, a, b));
            csv << '\n';
          }
        emit(cfg.out, csv.str());
        std::cout << "eval grid=" << eval_grid << " rows=" << eval_grid * eval_grid
                  << "\n";
      } else {
        std::cout << "eval C(" << fmt(eval_alpha) << "," << fmt(eval_beta)
                  << ")=" << fmt(f.evaluate(eval_alpha, eval_beta)) << "\n";
      }
      return kOk;
    }

    if (*chsh) {
      if (chsh_scifi != chsh_corr.empty())
        throw std::runtime_error("pass exactly one of --scifi or --corr");
      const CorrelationFunction f =
          chsh_scifi ? scifi_correlation() : load_correlation(chsh_corr);
      const auto c = [&](double a, double b) { return f.evaluate(a, b); };
      double value;
      std::array<double, 4> angles{};
      if (chsh_max) {
        const auto opt = gbox::chsh_maximize(c);
        value = opt.value;
        angles = opt.angles;
      } else if (chsh_angles.size() == 4) {
        angles = {chsh_angles[0], chsh_angles[1], chsh_angles[2], chsh_angles[3]};
        value = gbox::chsh_value(c, angles[0], angles[1], angles[2], angles[3]);
      } else {
        throw std::runtime_error("pass --angles a1 b2 a3 b4 or --maximize");
      }
      json j{{"chsh", value},
             {"angles", {{"a1", angles[0]}, {"b2", angles[1]},
                         {"a3", angles[2]}, {"b4", angles[3]}}},
             {"violated", value > 2.0}};
      if (cfg.out) emit(cfg.out, j.dump(2) + "\n");
      std::cout << "chsh value=" << fmt(value)
                << " violated=" << (value > 2.0 ? "true" : "false") << "\n";
      return value > 2.0 ? kOk : kNegative;
    }

    if (*bci) {
      const auto f = load_correlation(bci_corr);
      const auto setting = gbox::make_chained_setting(bci_n, bci_tp, bci_tm);
      const auto report = gbox::bci_value(
          [&](double a, double b) { return f.evaluate(a, b); }, setting);
      if (cfg.out) emit(cfg.out, gbox::to_json(report).dump(2) + "\n");
      std::cout << "bci n=" << report.n_settings << " lhs=" << fmt(report.lhs)
                << " bound=" << fmt(report.classical_bound)
                << " violated=" << (report.violated ? "true" : "false") << "\n";
      return report.violated ? kOk : kNegative;
    }

    if (*witness) {
      const auto f = load_correlation(wit_corr);
      const auto res = gbox::witness_search(f, wit_tp, wit_tm, wit_cap);
      json j = gbox::to_json(res.report);
      j["epsilon"] = res.epsilon;
      j["delta"] = res.delta;
      j["epsilon_limit"] = res.epsilon_limit;
      j["guaranteed"] = res.guaranteed;
      if (res.setting) {
        j["angles"] = {{"alice", res.setting->alice_angles},
                       {"bob", res.setting->bob_angles}};
      }
      if (cfg.out) emit(cfg.out, j.dump(2) + "\n");
      std::cout << "witness n=" << res.report.n_settings
                << " lhs=" << fmt(res.report.lhs)
                << " bound=" << fmt(res.report.classical_bound)
                << " violated=" << (res.report.violated ? "true" : "false")
                << "\n";
      return res.report.violated ? kOk : kNegative;
    }

    if (*protocol) {
      const auto f = load_correlation(proto_corr);
      const auto box_fn = gbox::from_correlation(f);
      const auto est = gbox::simulate_witness_protocol(
          [&](double a, double b) {
            return std::array<double, 4>{box_fn.evaluate_joint(+1, +1, a, b),
                                         box_fn.evaluate_joint(+1, -1, a, b),
                                         box_fn.evaluate_joint(-1, +1, a, b),
                                         box_fn.evaluate_joint(-1, -1, a, b)};
          },
          proto_two_j, proto_tp, proto_tm, proto_shots, cfg.seed, proto_sigmas);
      json j{{"c_plus", est.c_plus},
             {"c_plus_stderr", est.c_plus_stderr},
             {"c_minus", est.c_minus},
             {"c_minus_stderr", est.c_minus_stderr},
             {"shots_plus", est.shots_plus},
             {"shots_minus", est.shots_minus},
             {"witness", gbox::to_json(est.witness.report)},
             {"guaranteed", est.witness.guaranteed}};
      if (cfg.out) emit(cfg.out, j.dump(2) + "\n");
      std::cout << "protocol c_plus=" << fmt(est.c_plus)
                << " c_minus=" << fmt(est.c_minus)
                << " n=" << est.witness.report.n_settings
                << " violated=" << (est.witness.report.violated ? "true" : "false")
                << "\n";
      return est.witness.report.violated ? kOk : kNegative;
    }

    if (*lhv) {
      if (*lhv_gamma) {
        const auto g = gbox::gamma_n(gamma_n_arg);
        std::cout << "gamma n=" << gamma_n_arg << " value=" << fmt(g.gamma)
                  << " xi=" << fmt(g.xi_star)
                  << " lower_bound=" << fmt(g.lower_bound) << "\n";
        return kOk;
      }
      if (*lhv_build) {
        const auto f = load_correlation(lhvb_corr);
        const auto model = gbox::build_lhv(f, lhvb_xi);
        emit(cfg.out, gbox::to_json(model).dump(2) + "\n");
        std::cout << "lhv-build n_terms=" << model.n_terms
                  << " scale=" << fmt(model.scale) << "\n";
        return kOk;
      }
      if (*lhv_certify) {
        const auto f = load_correlation(lhvc_corr);
        const auto cert = gbox::locality_certificate(f);
        json j{{"passed", cert.passed},
               {"deviation", cert.deviation},
               {"bound", cert.bound},
               {"gamma", cert.gamma},
               {"n", cert.n_used}};
        if (cfg.out) emit(cfg.out, j.dump(2) + "\n");
        std::cout << "lhv-certify passed=" << (cert.passed ? "true" : "false")
                  << " deviation=" << fmt(cert.deviation)
                  << " bound=" << fmt(cert.bound) << "\n";
        return cert.passed ? kOk : kNegative;
      }
      if (*lhv_sample) {
        const auto model = gbox::lhv_from_json(load_json(lhvs_model));
        double sum = 0.0;
        for (long long i = 0; i < lhvs_shots; ++i) {
          gbox::RngStream rng(cfg.seed, 0, static_cast<std::uint64_t>(i));
          const auto [a, b] = gbox::sample_lhv(model, lhvs_alpha, lhvs_beta, rng);
          sum += a * b;
        }
        const double mean = sum / lhvs_shots;
        const double se =
            std::sqrt(std::max(0.0, 1.0 - mean * mean) / lhvs_shots);
        std::ostringstream csv;
        csv << "alpha,beta,samples,empirical_C,stderr\n"
            << fmt(lhvs_alpha) << ',' << fmt(lhvs_beta) << ',' << lhvs_shots
            << ',' << fmt(mean) << ',' << fmt(se) << '\n';
        emit(cfg.out, csv.str());
        std::cout << "lhv-sample C=" << fmt(mean) << " stderr=" << fmt(se) << "\n";
        return kOk;
      }
    }

    if (*quantum) {
      const auto rho = gbox::werner_state(q_werner);
      if (q_sweep) {
        std::ostringstream csv;
        csv << "theta,correlation\n";
        for (int i = 0; i < q_points; ++i) {
          const double t = 2.0 * std::numbers::pi * i / q_points;
          csv << fmt(t) << ',' << fmt(gbox::quantum_correlation(rho, t, 0.0))
              << '\n';
        }
        emit(cfg.out, csv.str());
        std::cout << "quantum sweep p=" << fmt(q_werner) << " points=" << q_points
                  << "\n";
        return kOk;
      }
      if (q_chsh_max) {
        const auto opt = gbox::chsh_maximize(
            [&](double a, double b) { return gbox::quantum_correlation(rho, a, b); });
        json j{{"chsh", opt.value},
               {"angles", {{"a1", opt.angles[0]}, {"b2", opt.angles[1]},
                           {"a3", opt.angles[2]}, {"b4", opt.angles[3]}}}};
        if (cfg.out) emit(cfg.out, j.dump(2) + "\n");
        std::cout << "quantum chsh-max p=" << fmt(q_werner)
                  << " value=" << fmt(opt.value) << "\n";
        return opt.value > 2.0 ? kOk : kNegative;
      }
      throw std::runtime_error("pass --sweep or --chsh-max");
    }

    if (*sodbox) {
      const auto rows = load_sodbox_csv(sod_csv, sod_dim);
      // Fit each party's unconditioned affine structure from the sampled rows.
      std::vector<gbox::DirectionSample> alice, bob;
      for (const auto& r : rows) {
        alice.push_back({r.x, {r.p[0] + r.p[1], r.p[2] + r.p[3]}});
        bob.push_back({r.y, {r.p[0] + r.p[2], r.p[1] + r.p[3]}});
      }
      const auto fa = gbox::fit_affine(alice, sod_dim);
      const auto fb = gbox::fit_affine(bob, sod_dim);
      const double residual = std::max(fa.residual_rms, fb.residual_rms);

      // Interpolate the sampled box bilinearly for the global certificates:
      // fit P(+,+|x,y) = (1,x)^T Omega (1,y) by least squares.
      const int cols = (sod_dim + 1) * (sod_dim + 1);
      if (static_cast<int>(rows.size()) < cols)
        throw std::runtime_error("need at least " + std::to_string(cols) +
                                 " rows for dimension " + std::to_string(sod_dim));
      Eigen::MatrixXd design(rows.size(), cols);
      Eigen::VectorXd ypp(rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        Eigen::VectorXd ex(sod_dim + 1), ey(sod_dim + 1);
        ex(0) = 1.0;
        ex.tail(sod_dim) = rows[i].x;
        ey(0) = 1.0;
        ey.tail(sod_dim) = rows[i].y;
        const Eigen::MatrixXd outer = ex * ey.transpose();
        design.row(i) = Eigen::Map<const Eigen::RowVectorXd>(outer.data(), cols);
        ypp(i) = rows[i].p[0];
      }
      const Eigen::VectorXd w = design.colPivHouseholderQr().solve(ypp);
      gbox::OmegaForm form;
      form.dim = sod_dim;
      form.omega = Eigen::Map<const Eigen::MatrixXd>(w.data(), sod_dim + 1,
                                                     sod_dim + 1);
      const auto evaluator = gbox::box_from_omega(form);
      const auto unbiased = gbox::check_locally_unbiased(evaluator, sod_dim);
      const auto cone = gbox::check_unital_positive(form);

      json j{{"affine_residual", residual},
             {"unbiased", unbiased.unbiased},
             {"unital", cone.unital},
             {"positivity_min", cone.worst_ray_value}};
      if (cfg.out) emit(cfg.out, j.dump(2) + "\n");
      const bool pass = residual < 1e-6 && unbiased.unbiased && cone.unital &&
                        cone.positive;
      std::cout << "sodbox affine_residual=" << fmt(residual)
                << " unbiased=" << (unbiased.unbiased ? "true" : "false")
                << " unital=" << (cone.unital ? "true" : "false")
                << " positivity_min=" << fmt(cone.worst_ray_value) << "\n";
      return pass ? kOk : kNegative;
    }

    if (*fit) {
      std::ifstream in(fit_csv);
      if (!in) throw std::runtime_error("cannot open input file: " + fit_csv);
      std::vector<gbox::TrigSample> samples;
      std::string line;
      int lineno = 0;
      while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (lineno == 1 && line.find("alpha") != std::string::npos) continue;
        std::stringstream ss(line);
        std::string a, b, v;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') ||
            !std::getline(ss, v, ','))
          throw std::runtime_error(fit_csv + ":" + std::to_string(lineno) +
                                   ": expected alpha,beta,value");
        samples.push_back({std::stod(a), std::stod(b), std::stod(v)});
      }
      const auto result = gbox::fit_trig_series(samples, fit_two_j);
      json j = gbox::to_json(result.function);
      j["residual_rms"] = result.residual_rms;
      emit(cfg.out, j.dump(2) + "\n");
      std::cout << "fit two_j=" << fit_two_j
                << " terms=" << result.function.term_count()
                << " residual_rms=" << fmt(result.residual_rms) << "\n";
      return kOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
