// Command-line front end: spectrum / phase / predictor / fraclap /
// fraclap-apply / invert / bench. JSON is the canonical machine format (no
// wall-clock fields, so identical config + seed gives byte-identical output);
// CSV is for plotting. Exit codes: 0 ok, 2 invalid input, 3 numerical failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "toepspec/eigensolve.hpp"
#include "toepspec/fraclap.hpp"
#include "toepspec/predictor.hpp"
#include "toepspec/serialize.hpp"

using namespace toepspec;
using nlohmann::json;

namespace {

#ifndef TOEPSPEC_VERSION
#define TOEPSPEC_VERSION "0.0.0"
#endif
#ifndef TOEPSPEC_GIT_HASH
#define TOEPSPEC_GIT_HASH "unknown"
#endif

std::string version_string() {
  return std::string(TOEPSPEC_VERSION) + "+" + TOEPSPEC_GIT_HASH;
}

struct CliError : std::runtime_error {
  int code;
  CliError(int c, const std::string& m) : std::runtime_error(m), code(c) {}
};

LoadedSymbol resolve_symbol(const std::string& preset, const std::string& file) {
  if (!preset.empty() && !file.empty())
    throw CliError(2, "give either --preset or --symbol, not both");
  try {
    if (!preset.empty()) return make_preset(preset);
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw CliError(2, "cannot open symbol file: " + file);
      std::stringstream ss;
      ss << in.rdbuf();
      return load_symbol_json(ss.str());
    }
  } catch (const CliError&) {
    throw;
  } catch (const std::exception& e) {
    throw CliError(2, e.what());
  }
  throw CliError(2, "no symbol given (use --preset or --symbol)");
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw CliError(2, "cannot write: " + path);
  out << text;
}

json base_report(const json& config) {
  json j;
  j["config"] = config;
  j["version"] = version_string();
  return j;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

template <class F>
double time_median_ms(F&& f, int reps = 5) {
  std::vector<double> times;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return median(times);
}

int run_spectrum(const std::string& preset, const std::string& file, int n, bool dense_check,
                 std::vector<double> local, const std::string& json_out,
                 const std::string& csv_out, const std::string& dump_matrix, int threads) {
  auto sym = resolve_symbol(preset, file);
  SolveOptions opts;
  opts.dense_check = dense_check;
  opts.threads = threads;
  SpectrumSolver solver(sym.view(), n, opts);

  if (!dump_matrix.empty()) {
    const ToeplitzMatrix t(sym.column(n), sym.name);
    std::ostringstream ss;
    ss.precision(17);
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = 0; j < t.size(); ++j)
        ss << t.entry(i, j) << (j + 1 < t.size() ? ',' : '\n');
    write_text(dump_matrix, ss.str());
  }

  SpectrumReport rep = local.empty() ? solver.full_spectrum()
                                     : solver.local_spectrum(local[0], local[1]);

  json config{{"command", "spectrum"},
              {"symbol", sym.name},
              {"N", n},
              {"dense_check", dense_check}};
  if (!local.empty()) config["local"] = {local[0], local[1]};
  json out = base_report(config);
  out["N"] = rep.n;
  json recs = json::array();
  double max_resid = 0.0;
  for (const auto& r : rep.records) {
    recs.push_back({{"k", r.k},
                    {"lambda", r.lambda},
                    {"gamma", r.gamma},
                    {"residual", r.residual}});
    max_resid = std::max(max_resid, r.residual);
  }
  out["records"] = recs;
  out["max_abs_gamma"] = rep.max_abs_gamma;
  if (rep.dense_max_dev) out["dense_max_dev"] = *rep.dense_max_dev;
  out["invariants"] = {
      {"residuals_below_1e-12", max_resid <= 1e-12},
      {"strictly_increasing",
       std::is_sorted(rep.records.begin(), rep.records.end(),
                      [](const EigenRecord& a, const EigenRecord& b) { return a.lambda < b.lambda; })},
      {"bijection_ok", rep.bijection_ok}};

  if (!csv_out.empty()) {
    std::ostringstream ss;
    ss.precision(17);
    ss << "k,lambda,gamma,residual\n";
    for (const auto& r : rep.records)
      ss << r.k << ',' << r.lambda << ',' << r.gamma << ',' << r.residual << '\n';
    write_text(csv_out, ss.str());
  }
  write_text(json_out, out.dump(2));
  return 0;
}

int run_phase(const std::string& preset, const std::string& file, int n, int grid,
              const std::string& csv_out) {
  auto sym = resolve_symbol(preset, file);
  auto view = sym.view();
  PhaseEngine engine(view, n);
  // singular symbols: the factor degenerates as lambda' -> 0, so stay away
  const double lo = sym.is_singular() ? 0.05 : 1e-9;
  PhaseSweep sweep(engine, lo, 2.0 - 1e-9, grid);
  std::ostringstream ss;
  ss.precision(17);
  ss << "lambda_prime,theta0,rho_N,rho_limit\n";
  for (const auto& s : sweep.samples()) {
    double lim = std::nan("");
    try {
      lim = rho_limit(view, s.lambda_prime, 512, 1e-6).rho;
    } catch (const std::exception&) {
      // leave NaN when the tail bound cannot be certified at this order
    }
    ss << s.lambda_prime << ',' << s.theta0 << ',' << s.rho << ',' << lim << '\n';
  }
  write_text(csv_out, ss.str());
  return 0;
}

int run_predictor(const std::string& preset, const std::string& file, int m,
                  const std::string& json_out) {
  auto sym = resolve_symbol(preset, file);
  const auto autocov = sym.column(m);
  const auto k = levinson(autocov);
  const auto match = verify_spectral_match(k, autocov);
  json out = base_report({{"command", "predictor"}, {"symbol", sym.name}, {"M", m}});
  out["coeffs"] = k.coeffs();
  out["prediction_error"] = k.prediction_error();
  out["spectral_match_dev"] = match.max_deviation;
  out["invariants"] = {{"spectral_match_below_1e-8", match.max_deviation <= 1e-8},
                       {"zero_free_disc", k.min_modulus_on_circle() > 0.0 && k.winding_number() == 0}};
  write_text(json_out, out.dump(2));
  return 0;
}

int run_fraclap(double alpha, int n, int kmin, int kmax, const std::string& cpreset,
                const std::string& csv_out, const std::string& json_out) {
  if (kmin < 1 || kmax < kmin) throw CliError(2, "fraclap: need 1 <= kmin <= kmax");
  FourierSymbol c = cpreset == "cos" ? FourierSymbol({1.0, 0.15}, 0.0, "cos")
                                     : FourierSymbol({1.0}, 0.0, "one");
  SingularSymbol h(alpha, c, n);
  const auto dense = dense_eigh(ToeplitzMatrix::build(h, n), true);
  const auto modes = match_modes(alpha, c, n, kmin, kmax, dense);
  const auto fc = frac_constants(alpha);

  std::ostringstream ss;
  ss.precision(17);
  ss << "k,mu_k,approx,bound,matched_lambda,gap,overlap\n";
  for (const auto& m : modes)
    ss << m.k << ',' << m.mu << ',' << m.approx_eig << ',' << m.bound << ','
       << m.matched_lambda << ',' << m.eig_gap << ',' << m.overlap << '\n';
  if (!csv_out.empty()) write_text(csv_out, ss.str());

  json out = base_report({{"command", "fraclap"},
                          {"alpha", alpha},
                          {"N", n},
                          {"kmin", kmin},
                          {"kmax", kmax},
                          {"c", cpreset.empty() ? "one" : cpreset}});
  out["C_alpha"] = fc.C_alpha;
  out["C_of_alpha"] = fc.C_of_alpha;
  out["L_alpha"] = fc.L_alpha;
  out["L_alpha_alt_reading"] = fc.L_alpha_alt;
  out["L_prime_alpha"] = fc.L_prime_alpha;
  json arr = json::array();
  bool identity_ok = true;
  for (const auto& m : modes) {
    arr.push_back({{"k", m.k},
                   {"mu_k", m.mu},
                   {"approx", m.approx_eig},
                   {"bound", m.bound},
                   {"matched_index", m.matched_index},
                   {"matched_lambda", m.matched_lambda},
                   {"gap", m.eig_gap},
                   {"overlap", m.overlap},
                   {"below_threshold", m.below_threshold},
                   {"collision", m.collision}});
    identity_ok = identity_ok &&
                  std::abs(m.approx_eig * std::pow(n, 2.0 * alpha) - m.mu_tilde) <
                      1e-12 * std::max(1.0, m.mu_tilde);
  }
  out["modes"] = arr;
  out["invariants"] = {{"mu_tilde_identity", identity_ok}};
  if (!json_out.empty()) write_text(json_out, out.dump(2));
  return 0;
}

int run_fraclap_apply(double alpha, int n, const std::string& csv_out) {
  FourierSymbol c({1.0});
  auto f = [](double x) { return bump_profile(x); };
  const auto got = discrete_fraclap_apply(alpha, c, n, f);
  std::ostringstream ss;
  ss.precision(17);
  ss << "x,discrete,oracle,abs_err\n";
  double sup = 0.0;
  for (const auto& s : got) {
    const double want = fraclap_pv_oracle(alpha, f, s.x).value;
    const double err = std::abs(s.value - want);
    sup = std::max(sup, err);
    ss << s.x << ',' << s.value << ',' << want << ',' << err << '\n';
  }
  write_text(csv_out, ss.str());
  std::cerr << "sup error on [0.2, 0.8]: " << sup << "\n";
  return 0;
}

int run_invert(const std::string& preset, const std::string& file, int n, double lambda_prime,
               const std::string& json_out) {
  auto sym = resolve_symbol(preset, file);
  SpectrumSolver solver(sym.view(), n, {});
  const double entry = solver.invert_entry_11(lambda_prime);
  const double lam = sym.view().f1(lambda_prime);
  const double dense = inverse_entry_dense(ToeplitzMatrix(sym.column(n), sym.name), 0, 0, lam);
  json out = base_report({{"command", "invert"},
                          {"symbol", sym.name},
                          {"N", n},
                          {"lambda_prime", lambda_prime}});
  out["lambda"] = lam;
  out["entry_formula"] = entry;
  out["entry_dense"] = dense;
  out["rel_deviation"] = std::abs(entry - dense) / std::max(1e-300, std::abs(dense));
  out["invariants"] = {{"matches_dense_1e-8", std::abs(entry - dense) <= 1e-8 * std::abs(dense)}};
  write_text(json_out, out.dump(2));
  return 0;
}

int run_bench(const std::string& preset, int n, std::uint64_t seed) {
  auto sym = resolve_symbol(preset.empty() ? "loop1" : preset, "");
  std::ostringstream ss;
  ss << "benchmark (medians of 5 runs), symbol=" << sym.name << ", N=" << n << "\n";

  SpectrumSolver solver(sym.view(), n, {});
  const double t_solver = time_median_ms([&] { (void)solver.full_spectrum(); });
  ss << "  characteristic equation, full spectrum: " << t_solver << " ms ("
     << t_solver / (n + 1) << " ms/eigenvalue)\n";

  const ToeplitzMatrix t(sym.column(n), sym.name);
  const double t_dense = time_median_ms([&] { (void)dense_eigh(t, false); });
  ss << "  dense eigensolver (values only):        " << t_dense << " ms\n";

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> x(static_cast<std::size_t>(n) + 1);
  for (auto& v : x) v = u(rng);
  const double t_naive = time_median_ms([&] { (void)matvec(t, x, MatvecMode::naive); });
  CirculantMatvec plan(t);
  const double t_fft = time_median_ms([&] { (void)plan.apply(x); });
  ss << "  matvec naive: " << t_naive << " ms;  fft: " << t_fft << " ms (planned circulant)\n";
  std::cout << ss.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toeplitz spectra toolkit: characteristic-equation eigensolver, "
               "predictor polynomials, and fractional-Laplacian asymptotics"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(0, 1);

  std::string preset, file, json_out = "-", csv_out, dump_matrix;
  int n = 64, grid = 512, m = 32, kmin = 8, kmax = 16, threads = 0;
  bool dense_check = false;
  double alpha = 0.75, lambda_prime = 0.5;
  std::vector<double> local;
  std::uint64_t seed = 0;

  auto* sp = app.add_subcommand("spectrum", "eigenvalues of T_N(f) via the phase method");
  sp->add_option("--preset", preset, "builtin symbol: tridiag|loop1|halpha:a[:c]");
  sp->add_option("--symbol", file, "symbol JSON file");
  sp->add_option("--N", n, "matrix order parameter (size N+1)")->check(CLI::Range(2, 1 << 20));
  sp->add_flag("--dense-check", dense_check, "compare against the dense eigensolver");
  sp->add_option("--local", local, "restrict to the window [theta1, theta2]")->expected(2);
  sp->add_option("--json", json_out, "report path ('-' = stdout)");
  sp->add_option("--csv", csv_out, "CSV export path");
  sp->add_option("--dump-matrix", dump_matrix, "write the dense matrix as CSV");
  sp->add_option("--threads", threads, "solver threads (0 = TOEPLITZ_SPECTRA_THREADS/auto)");

  auto* ph = app.add_subcommand("phase", "sweep of rho_N and the limit phase");
  ph->add_option("--preset", preset, "builtin symbol");
  ph->add_option("--symbol", file, "symbol JSON file");
  ph->add_option("--N", n, "matrix order parameter")->check(CLI::Range(2, 1 << 20));
  ph->add_option("--grid", grid, "number of lambda' samples")->check(CLI::Range(2, 1 << 20));
  ph->add_option("--csv", csv_out, "CSV output path ('-' = stdout)");

  auto* pr = app.add_subcommand("predictor", "Levinson predictor polynomial");
  pr->add_option("--preset", preset, "builtin symbol");
  pr->add_option("--symbol", file, "symbol JSON file");
  pr->add_option("--M", m, "predictor degree")->check(CLI::Range(1, 1 << 16));
  pr->add_option("--json", json_out, "report path ('-' = stdout)");

  auto* fl = app.add_subcommand("fraclap", "fractional-Laplacian eigenmode matching");
  fl->add_option("--alpha", alpha, "exponent in (0,1) \\ {1/2}")->required();
  fl->add_option("--N", n, "matrix order parameter")->check(CLI::Range(8, 4096));
  fl->add_option("--kmin", kmin, "first mode index");
  fl->add_option("--kmax", kmax, "last mode index");
  fl->add_option("--c", preset, "c preset: one|cos");
  fl->add_option("--modes", csv_out, "CSV output path");
  fl->add_option("--json", json_out, "report path ('-' = stdout)");

  auto* fa = app.add_subcommand("fraclap-apply", "discrete operator vs the P.V. oracle");
  fa->add_option("--alpha", alpha, "exponent in (0,1) \\ {1/2}")->required();
  fa->add_option("--N", n, "grid size")->check(CLI::Range(8, 1 << 16));
  bool bump = false;
  fa->add_flag("--bump", bump, "use the builtin bump test function");
  fa->add_option("--csv", csv_out, "CSV output path ('-' = stdout)");

  auto* iv = app.add_subcommand("invert", "(1,1) entry of (T_N(f) - lambda I)^{-1}");
  iv->add_option("--preset", preset, "builtin symbol");
  iv->add_option("--symbol", file, "symbol JSON file");
  iv->add_option("--N", n, "matrix order parameter")->check(CLI::Range(2, 4096));
  iv->add_option("--lambda-prime", lambda_prime, "evaluation point in (0,2)")->required();
  iv->add_option("--json", json_out, "report path ('-' = stdout)");

  auto* be = app.add_subcommand("bench", "timing table (report only, never gates)");
  be->add_option("--preset", preset, "builtin symbol");
  be->add_option("--N", n, "matrix order parameter")->check(CLI::Range(2, 4096));
  be->add_option("--seed", seed, "seed for random test vectors");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sp->parsed())
      return run_spectrum(preset, file, n, dense_check, local, json_out, csv_out, dump_matrix,
                          threads);
    if (ph->parsed()) return run_phase(preset, file, n, grid, csv_out.empty() ? "-" : csv_out);
    if (pr->parsed()) return run_predictor(preset, file, m, json_out);
    if (fl->parsed()) return run_fraclap(alpha, n, kmin, kmax, preset, csv_out, json_out);
    if (fa->parsed()) {
      if (!bump) throw CliError(2, "fraclap-apply: only the builtin --bump profile is available");
      return run_fraclap_apply(alpha, n, csv_out.empty() ? "-" : csv_out);
    }
    if (iv->parsed()) return run_invert(preset, file, n, lambda_prime, json_out);
    if (be->parsed()) return run_bench(preset, n, seed);
    std::cout << app.help();
    return 0;
  } catch (const CliError& e) {
    json err{{"error", e.what()}, {"exit_code", e.code}};
    std::cerr << err.dump() << "\n";
    return e.code;
  } catch (const std::invalid_argument& e) {
    json err{{"error", e.what()}, {"exit_code", 2}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    // numerical failures (bracket scan, unwrap, poles) land here
    json err{{"error", e.what()}, {"exit_code", 3}};
    std::cerr << err.dump() << "\n";
    return 3;
  }
}
