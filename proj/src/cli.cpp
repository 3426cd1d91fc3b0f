#include "hp2sph/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "hp2sph/errors.hpp"
#include "hp2sph/io.hpp"
#include "hp2sph/pipeline.hpp"

namespace hp2sph::cli {

namespace {

int log_level() {
  static int level = [] {
    const char* env = std::getenv("HP2SPH_LOG");
    if (!env) return 0;
    std::string v(env);
    if (v == "debug") return 2;
    if (v == "info") return 1;
    return 0;
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "hp2sph: " << msg << '\n';
}

void log_stages(const AnalyzeInfo& info) {
  if (log_level() < 1) return;
  std::ostringstream os;
  os << "gamma=" << info.gamma << " cg_iters<=" << info.max_cg_iterations
     << " cg_resid<=" << info.max_cg_residual
     << " parity_defect=" << info.parity_defect;
  log_info(os.str());
  os.str("");
  os << "stages[s]: upsample=" << info.seconds_upsample
     << " poles+dfs=" << info.seconds_poles_dfs
     << " latitude=" << info.seconds_latitude
     << " convert=" << info.seconds_convert;
  log_info(os.str());
}

double wall_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

void set_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

int nside_checked(int n_side) {
  if (n_side < 1 || (n_side & (n_side - 1)) != 0)
    throw CLI::ValidationError("--nside", "must be a power of two");
  return n_side;
}

struct BenchStats {
  double total = 0.0;
  AnalyzeInfo info;
};

BenchStats run_bench_once(const std::string& method, const MapValues& map,
                          const Hp2SphPlan* plan, int iters) {
  BenchStats stats;
  const double t0 = wall_seconds();
  if (method == "hp2sph") {
    plan->analyze(map, &stats.info);
  } else if (method == "equal") {
    analyze_equal_weight(map, 3 * map.grid().n_side() - 1);
  } else {
    richardson_refine(map, 3 * map.grid().n_side() - 1, iters);
  }
  stats.total = wall_seconds() - t0;
  return stats;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Spherical harmonic analysis and power spectra for HEALPix maps"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Cap the worker thread count");

  // ---- grid ----
  auto* cmd_grid = app.add_subcommand("grid", "Emit the ring table of a grid");
  int grid_nside = 1;
  std::string grid_out;
  cmd_grid->add_option("--nside", grid_nside, "Resolution (power of two)")->required();
  cmd_grid->add_option("--out", grid_out, "Output CSV path")->required();

  // ---- sample ----
  auto* cmd_sample = app.add_subcommand("sample", "Sample a spline fixture onto a grid");
  int sample_nside = 1;
  std::string sample_spline, sample_harm, sample_out;
  cmd_sample->add_option("--nside", sample_nside, "Resolution (power of two)")->required();
  cmd_sample->add_option("--spline", sample_spline, "Spline spec JSON")->required();
  cmd_sample->add_option("--add-harmonics", sample_harm, "Harmonic list JSON");
  cmd_sample->add_option("--out", sample_out, "Output HPXM path")->required();

  // ---- analyze ----
  auto* cmd_analyze = app.add_subcommand("analyze", "Compute spherical harmonic coefficients");
  std::string an_in, an_out, an_method = "hp2sph";
  int an_iters = -1, an_lmax = -1;
  cmd_analyze->add_option("--in", an_in, "Input HPXM map")->required();
  cmd_analyze->add_option("--method", an_method, "hp2sph | equal | richardson")
      ->check(CLI::IsMember({"hp2sph", "equal", "richardson"}));
  cmd_analyze->add_option("--iters", an_iters, "Richardson iterations (default 3)");
  cmd_analyze->add_option("--lmax", an_lmax, "Band limit (default: 3*nside-1 for equal/richardson, 2*nside for hp2sph)");
  cmd_analyze->add_option("--out", an_out, "Output coefficient CSV")->required();

  // ---- synth ----
  auto* cmd_synth = app.add_subcommand("synth", "Synthesize a map from coefficients");
  std::string sy_in, sy_out;
  int sy_nside = 1;
  cmd_synth->add_option("--in", sy_in, "Input coefficient CSV")->required();
  cmd_synth->add_option("--nside", sy_nside, "Resolution (power of two)")->required();
  cmd_synth->add_option("--out", sy_out, "Output HPXM path")->required();

  // ---- spectrum ----
  auto* cmd_spec = app.add_subcommand("spectrum", "Angular power spectrum from coefficients");
  std::string sp_in, sp_out;
  bool sp_scaled = false;
  cmd_spec->add_option("--in", sp_in, "Input coefficient CSV")->required();
  cmd_spec->add_flag("--scaled", sp_scaled, "Emit l(l+1)C_l/2pi");
  cmd_spec->add_option("--out", sp_out, "Output CSV")->required();

  // ---- study ----
  auto* cmd_study = app.add_subcommand("study", "Convergence study against exact spline coefficients");
  std::string st_spline, st_out, st_methods = "hp2sph,equal,richardson:3";
  int st_tmin = 2, st_tmax = 6;
  bool st_full_band = false;
  cmd_study->add_option("--spline", st_spline, "Spline spec JSON")->required();
  cmd_study->add_option("--tmin", st_tmin, "Smallest t (n_side = 2^t)");
  cmd_study->add_option("--tmax", st_tmax, "Largest t");
  cmd_study->add_option("--methods", st_methods, "Comma-separated: hp2sph, equal, richardson[:k]");
  cmd_study->add_flag("--full-band", st_full_band, "Run baselines at 3*nside-1 instead of 2*nside");
  cmd_study->add_option("--out", st_out, "Output CSV")->required();

  // ---- bench ----
  auto* cmd_bench = app.add_subcommand("bench", "Wall time and stage breakdown");
  int be_nside = 32, be_repeat = 3, be_iters = 3;
  std::string be_method = "hp2sph";
  cmd_bench->add_option("--nside", be_nside, "Resolution (power of two)")->required();
  cmd_bench->add_option("--method", be_method, "hp2sph | equal | richardson")
      ->check(CLI::IsMember({"hp2sph", "equal", "richardson"}));
  cmd_bench->add_option("--repeat", be_repeat, "Timed repetitions (median reported)");
  cmd_bench->add_option("--iters", be_iters, "Richardson iterations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    set_threads(threads);

    if (*cmd_grid) {
      HealpixGrid grid(nside_checked(grid_nside));
      io::write_ring_table(grid_out, grid);
      log_info("wrote ring table for n_side=" + std::to_string(grid_nside));
      return 0;
    }

    if (*cmd_sample) {
      auto grid = std::make_shared<const HealpixGrid>(nside_checked(sample_nside));
      SplineSpec spec = io::read_spline_spec(sample_spline);
      MapValues map = potential_spline_eval(spec, grid);
      if (!sample_harm.empty())
        map = add_harmonics(map, io::read_harmonics(sample_harm));
      io::write_map(sample_out, map);
      return 0;
    }

    if (*cmd_analyze) {
      if (an_iters >= 0 && an_method != "richardson")
        throw std::invalid_argument("--iters is only valid with --method richardson");
      MapValues map = io::read_map(an_in);
      const int n_side = map.grid().n_side();
      SphCoeffTriangle coeffs;
      if (an_method == "hp2sph") {
        if (an_lmax > 2 * n_side)
          throw std::invalid_argument(
              "hp2sph band limit is 2*nside = " + std::to_string(2 * n_side));
        Hp2SphPlan plan(map.grid_ptr());
        AnalyzeInfo info;
        coeffs = plan.analyze(map, &info);
        log_stages(info);
        if (an_lmax >= 0 && an_lmax < coeffs.ell_max())
          coeffs = coeffs.truncated(an_lmax);
      } else {
        const int lmax = an_lmax >= 0 ? an_lmax : 3 * n_side - 1;
        const double t0 = wall_seconds();
        if (an_method == "equal") {
          coeffs = analyze_equal_weight(map, lmax);
        } else {
          coeffs = richardson_refine(map, lmax, an_iters >= 0 ? an_iters : 3);
        }
        log_info("analysis took " + std::to_string(wall_seconds() - t0) + " s");
      }
      io::write_coeffs(an_out, coeffs);
      return 0;
    }

    if (*cmd_synth) {
      SphCoeffTriangle coeffs = io::read_coeffs(sy_in);
      auto grid = std::make_shared<const HealpixGrid>(nside_checked(sy_nside));
      io::write_map(sy_out, synthesize_direct(coeffs, grid));
      return 0;
    }

    if (*cmd_spec) {
      SphCoeffTriangle coeffs = io::read_coeffs(sp_in);
      PowerSpectrum spectrum = power_spectrum(coeffs);
      io::write_spectrum(sp_out, sp_scaled ? scaled_spectrum(spectrum)
                                           : spectrum.cl);
      return 0;
    }

    if (*cmd_study) {
      SplineSpec spec = io::read_spline_spec(st_spline);
      std::vector<StudyMethod> methods;
      std::stringstream ss(st_methods);
      std::string tag;
      while (std::getline(ss, tag, ','))
        if (!tag.empty()) methods.push_back(parse_method(tag));
      if (methods.empty()) throw std::invalid_argument("no methods given");
      StudyOptions options;
      options.full_band = st_full_band;
      StudyResult result = convergence_study(spec, st_tmin, st_tmax, methods, options);
      io::write_study(st_out, result);
      for (const auto& [method, slope] : result.slopes)
        std::cout << "slope " << method << " " << io::format_double(slope) << '\n';
      return 0;
    }

    if (*cmd_bench) {
      auto grid = std::make_shared<const HealpixGrid>(nside_checked(be_nside));
      MapValues map = potential_spline_eval(paper_spline_fixture(), grid);
      std::unique_ptr<Hp2SphPlan> plan;
      double setup = 0.0;
      if (be_method == "hp2sph") {
        const double t0 = wall_seconds();
        plan = std::make_unique<Hp2SphPlan>(grid);
        setup = wall_seconds() - t0;
      }
      auto median_run = [&](int nthreads) {
        set_threads(nthreads);
        std::vector<BenchStats> runs;
        run_bench_once(be_method, map, plan.get(), be_iters);  // warmup
        for (int i = 0; i < be_repeat; ++i)
          runs.push_back(run_bench_once(be_method, map, plan.get(), be_iters));
        std::sort(runs.begin(), runs.end(),
                  [](const BenchStats& a, const BenchStats& b) {
                    return a.total < b.total;
                  });
        return runs[runs.size() / 2];
      };
#ifdef _OPENMP
      const int max_threads = threads > 0 ? threads : omp_get_max_threads();
#else
      const int max_threads = 1;
#endif
      BenchStats serial = median_run(1);
      BenchStats parallel = median_run(max_threads);
      std::cout << "method " << be_method << " nside " << be_nside << '\n';
      if (be_method == "hp2sph") std::cout << "setup_s " << setup << '\n';
      std::cout << "serial_s " << serial.total << '\n'
                << "parallel_s " << parallel.total << " (threads "
                << max_threads << ")\n";
      if (be_method == "hp2sph") {
        const AnalyzeInfo& i = parallel.info;
        std::cout << "stage_upsample_s " << i.seconds_upsample << '\n'
                  << "stage_poles_dfs_s " << i.seconds_poles_dfs << '\n'
                  << "stage_latitude_s " << i.seconds_latitude << '\n'
                  << "stage_convert_s " << i.seconds_convert << '\n'
                  << "gamma " << i.gamma << '\n'
                  << "cg_iters " << i.max_cg_iterations << '\n';
      }
      return 0;
    }
  } catch (const NonConvergence& e) {
    std::cerr << "hp2sph: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "hp2sph: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace hp2sph::cli
