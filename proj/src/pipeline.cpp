#include "hp2sph/pipeline.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>

#include "hp2sph/errors.hpp"

namespace hp2sph {

namespace {

constexpr double kPi = std::numbers::pi;

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

PowerSpectrum power_spectrum(const SphCoeffTriangle& coeffs) {
  PowerSpectrum out;
  out.ell_max = coeffs.ell_max();
  out.cl.resize(out.ell_max + 1);
  for (int l = 0; l <= out.ell_max; ++l) {
    double sum = 0.0;
    for (int m = -l; m <= l; ++m) sum += std::norm(coeffs.at(l, m));
    out.cl[l] = sum / (2.0 * l + 1.0);
  }
  return out;
}

std::vector<double> scaled_spectrum(const PowerSpectrum& spectrum) {
  std::vector<double> out(spectrum.cl.size());
  for (std::size_t l = 0; l < out.size(); ++l)
    out[l] = static_cast<double>(l) * (l + 1.0) * spectrum.cl[l] / (2.0 * kPi);
  return out;
}

void SplineSpec::validate() const {
  if (centers.empty())
    throw std::invalid_argument("SplineSpec: at least one center required");
  if (centers.size() != weights.size())
    throw std::invalid_argument("SplineSpec: weights/centers length mismatch");
  for (const Center& c : centers) {
    if (c.theta < 0.0 || c.theta > kPi)
      throw std::invalid_argument("SplineSpec: theta out of [0, pi]");
    if (c.lambda < 0.0 || c.lambda >= 2.0 * kPi)
      throw std::invalid_argument("SplineSpec: lambda out of [0, 2*pi)");
  }
}

SplineSpec paper_spline_fixture() {
  SplineSpec spec;
  spec.centers = {{0.891498158152027, 1.232217523107963},
                  {2.650004294134628, 2.059244524372349},
                  {5.753735997130328, 0.537798840821172}};
  spec.weights = {5.0, -3.0, 8.0};
  return spec;
}

MapValues potential_spline_eval(const SplineSpec& spec,
                                std::shared_ptr<const HealpixGrid> grid) {
  spec.validate();
  const std::int64_t n = grid->n_points();
  std::vector<double> values(n);
  std::vector<std::array<double, 3>> centers;
  for (const auto& c : spec.centers)
    centers.push_back({std::cos(c.lambda) * std::sin(c.theta),
                       std::sin(c.lambda) * std::sin(c.theta),
                       std::cos(c.theta)});
  const int n_rings = grid->n_rings();
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < n_rings; ++r) {
    const RingSpec& ring = grid->ring(r);
    const double st = std::sin(ring.theta), ct = std::cos(ring.theta);
    for (int k = 0; k < ring.count; ++k) {
      const double lam = ring.phi_offset + 2.0 * kPi * k / ring.count;
      const double x = std::cos(lam) * st, y = std::sin(lam) * st;
      double v = 0.0;
      for (std::size_t j = 0; j < centers.size(); ++j) {
        double dot = x * centers[j][0] + y * centers[j][1] + ct * centers[j][2];
        double d2 = std::max(0.0, 2.0 - 2.0 * dot);
        v += spec.weights[j] * d2 * std::sqrt(d2);
      }
      values[ring.first_index + k] = v;
    }
  }
  return MapValues(std::move(grid), std::move(values));
}

SphCoeffTriangle potential_spline_exact_alm(const SplineSpec& spec,
                                            int ell_max) {
  spec.validate();
  if (ell_max < 0)
    throw std::invalid_argument("potential_spline_exact_alm: ell_max >= 0");
  SphCoeffTriangle a(ell_max);
  for (int l = 0; l <= ell_max; ++l) {
    const double denom =
        (l + 2.5) * (l + 1.5) * (l + 0.5) * (l - 0.5) * (l - 1.5);
    const double factor = 18.0 * kPi / denom;
    for (int m = -l; m <= l; ++m) {
      cplx sum{0.0, 0.0};
      for (std::size_t j = 0; j < spec.centers.size(); ++j)
        sum += spec.weights[j] *
               std::conj(eval_ylm(l, m, spec.centers[j].lambda,
                                  spec.centers[j].theta));
      a.at(l, m) = factor * sum;
    }
  }
  return a;
}

MapValues add_harmonics(const MapValues& map,
                        const std::vector<std::pair<int, int>>& terms) {
  const HealpixGrid& grid = map.grid();
  std::vector<double> values = map.values();
  const int band = 3 * grid.n_side() - 1;
  for (const auto& [l, m] : terms) {
    if (std::abs(m) > l)
      throw std::invalid_argument("add_harmonics: |m| > ell");
    if (l > band)
      std::cerr << "hp2sph: warning: harmonic (" << l << "," << m
                << ") exceeds the grid's default band " << band
                << " (aliasing study)\n";
    const double amp = (m == 0) ? 1.0 : std::sqrt(2.0);
    const int n_rings = grid.n_rings();
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < n_rings; ++r) {
      const RingSpec& ring = grid.ring(r);
      const double plm = eval_plm_normalized(l, std::abs(m),
                                             std::cos(ring.theta));
      for (int k = 0; k < ring.count; ++k) {
        const double lam = ring.phi_offset + 2.0 * kPi * k / ring.count;
        values[ring.first_index + k] +=
            amp * plm * std::cos(std::abs(m) * lam);
      }
    }
  }
  return MapValues(map.grid_ptr(), std::move(values));
}

Hp2SphPlan::Hp2SphPlan(std::shared_ptr<const HealpixGrid> grid, int rank,
                       double cg_tol, int cg_max_iter)
    : grid_(std::move(grid)),
      p_(2 * grid_->n_side()),
      m_(4 * grid_->n_side() + 1),
      cg_tol_(cg_tol),
      cg_max_iter_(cg_max_iter) {
  // Doubled colatitude nodes mapped to [0, 1): pole, rings, pole, reflected rings.
  const int n_rings = grid_->n_rings();
  std::vector<double> x;
  x.reserve(2 * n_rings + 2);
  x.push_back(0.0);
  for (int r = 0; r < n_rings; ++r) x.push_back(grid_->ring(r).theta / (2.0 * kPi));
  x.push_back(0.5);
  for (int r = n_rings - 1; r >= 0; --r)
    x.push_back(1.0 - grid_->ring(r).theta / (2.0 * kPi));
  nodes_ = std::make_unique<NonuniformNodes>(std::move(x));
  nufft_ = std::make_unique<NufftPlan>(*nodes_, rank);
  gram_op_ = std::make_unique<ToeplitzOperator>(
      gram_toeplitz_column(*nodes_, m_, rank));

  const int s = m_ / 2;
  premod_.resize(nodes_->size());
  for (int t = 0; t < nodes_->size(); ++t)
    premod_[t] = std::polar(1.0, -2.0 * kPi * nodes_->x()[t] * s);

  rule_ = gauss_legendre(p_ + 1);
  const int nq = p_ + 1;
  cos_table_.resize(static_cast<std::size_t>(p_ + 2) * nq);
  sin_table_.resize(static_cast<std::size_t>(p_ + 2) * nq);
  for (int q = 0; q < nq; ++q) {
    const double theta = std::acos(rule_.nodes[q]);
    for (int j = 0; j <= p_ + 1; ++j) {
      cos_table_[static_cast<std::size_t>(j) * nq + q] = std::cos(j * theta);
      sin_table_[static_cast<std::size_t>(j) * nq + q] = std::sin(j * theta);
    }
  }
}

BivariateFourier Hp2SphPlan::bivariate_coefficients(const MapValues& map,
                                                    AnalyzeInfo* info) const {
  if (map.grid().n_side() != grid_->n_side())
    throw std::invalid_argument("Hp2SphPlan: map resolution does not match plan");
  AnalyzeInfo local;
  AnalyzeInfo& stats = info ? *info : local;
  stats.gamma = nodes_->gamma();

  double t0 = now_seconds();
  AlignedRingCoeffs aligned = upsample_map(map);
  stats.seconds_upsample = now_seconds() - t0;

  t0 = now_seconds();
  std::vector<cplx> north = fit_pole_values(aligned, *grid_, Pole::north);
  std::vector<cplx> south = fit_pole_values(aligned, *grid_, Pole::south);
  DoubledCoeffMatrix doubled = dfs_double(aligned, *grid_, north, south);
  stats.seconds_poles_dfs = now_seconds() - t0;

  // Latitude least squares, one wavenumber column at a time. Solved in the
  // NUDFT-II convention by conjugating the data; the centered frequency range
  // j = -p..p enters through the premodulation by exp(-2*pi*i*x_t*s).
  t0 = now_seconds();
  const int n = nodes_->size();
  const int width = 4 * grid_->n_side();
  BivariateFourier C(p_);
  const int s = m_ / 2;
  int worst_iters = 0;
  double worst_resid = 0.0;
  bool failed = false;
  NonConvergence failure("", 0, 0.0);
#pragma omp parallel for schedule(dynamic)
  for (int col = 0; col < width; ++col) {
    std::vector<cplx> f(n);
    for (int t = 0; t < n; ++t)
      f[t] = premod_[t] * std::conj(doubled.rows[t][col]);
    std::vector<cplx> rhs_full = nufft_->adjoint(f);
    std::vector<cplx> rhs(rhs_full.begin(), rhs_full.begin() + m_);
    try {
      LsqResult sol = cg_toeplitz_solve(*gram_op_, rhs, cg_tol_, cg_max_iter_,
                                        static_cast<double>(n));
      for (int j = -p_; j <= p_; ++j)
        C.at(j, col - width / 2) = std::conj(sol.coeffs[j + s]);
#pragma omp critical
      {
        worst_iters = std::max(worst_iters, sol.iterations);
        worst_resid = std::max(worst_resid, sol.relative_residual);
      }
    } catch (NonConvergence& err) {
#pragma omp critical
      if (!failed) {
        failed = true;
        err.wavenumber = col - width / 2;
        failure = err;
      }
    }
  }
  if (failed) {
    NonConvergence rethrown(
        std::string("hp2sph latitude solve did not converge at wavenumber ") +
            std::to_string(failure.wavenumber) + " (relative residual " +
            std::to_string(failure.residual) + ")",
        failure.iterations, failure.residual, failure.last_estimate,
        failure.best_iterate);
    rethrown.wavenumber = failure.wavenumber;
    throw rethrown;
  }
  stats.seconds_latitude = now_seconds() - t0;
  stats.max_cg_iterations = worst_iters;
  stats.max_cg_residual = worst_resid;
  return C;
}

SphCoeffTriangle Hp2SphPlan::analyze(const MapValues& map,
                                     AnalyzeInfo* info) const {
  AnalyzeInfo local;
  AnalyzeInfo& stats = info ? *info : local;
  BivariateFourier C = bivariate_coefficients(map, &stats);

  double t0 = now_seconds();
  OddExpanded X = expand_to_odd(C);
  stats.parity_defect = parity_defect(X);
  GCoefficients g = to_g_coefficients(X);
  SphCoeffTriangle a = g_to_alm_with_tables(g, p_, rule_, cos_table_, sin_table_);
  stats.seconds_convert = now_seconds() - t0;
  return a;
}

SphCoeffTriangle hp2sph_analyze(const MapValues& map, AnalyzeInfo* info) {
  Hp2SphPlan plan(map.grid_ptr());
  return plan.analyze(map, info);
}

std::string StudyMethod::label() const {
  switch (kind) {
    case Kind::hp2sph: return "hp2sph";
    case Kind::equal_weight: return "equal";
    case Kind::richardson: return "richardson" + std::to_string(iterations);
  }
  return "?";
}

StudyMethod parse_method(const std::string& nametag) {
  StudyMethod m;
  if (nametag == "hp2sph") {
    m.kind = StudyMethod::Kind::hp2sph;
  } else if (nametag == "equal") {
    m.kind = StudyMethod::Kind::equal_weight;
  } else if (nametag.rfind("richardson", 0) == 0) {
    m.kind = StudyMethod::Kind::richardson;
    std::string rest = nametag.substr(10);
    if (!rest.empty() && rest[0] == ':') rest = rest.substr(1);
    m.iterations = rest.empty() ? 3 : std::stoi(rest);
    if (m.iterations < 0)
      throw std::invalid_argument("richardson iterations must be >= 0");
  } else {
    throw std::invalid_argument("unknown method '" + nametag + "'");
  }
  return m;
}

StudyResult convergence_study(const SplineSpec& spec, int t_min, int t_max,
                              const std::vector<StudyMethod>& methods,
                              const StudyOptions& options) {
  if (t_min < 1 || t_max < t_min)
    throw std::invalid_argument("convergence_study: bad t range");
  StudyResult result;
  std::vector<std::vector<double>> errors(methods.size());

  for (int t = t_min; t <= t_max; ++t) {
    const int n_side = 1 << t;
    auto grid = std::make_shared<const HealpixGrid>(n_side);
    MapValues map = potential_spline_eval(spec, grid);
    const int p = 2 * n_side;
    SphCoeffTriangle exact = potential_spline_exact_alm(spec, p);
    const int baseline_band = options.full_band ? 3 * n_side - 1 : p;

    Hp2SphPlan plan(grid);
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      SphCoeffTriangle computed;
      switch (methods[mi].kind) {
        case StudyMethod::Kind::hp2sph:
          computed = plan.analyze(map);
          break;
        case StudyMethod::Kind::equal_weight:
          computed = analyze_equal_weight(map, baseline_band);
          break;
        case StudyMethod::Kind::richardson:
          computed = richardson_refine(map, baseline_band, methods[mi].iterations);
          break;
      }
      double err = 0.0;
      for (int l = 0; l <= p; ++l)
        for (int m = -l; m <= l; ++m)
          err = std::max(err, std::abs(computed.at(l, m) - exact.at(l, m)));
      errors[mi].push_back(err);
      result.rows.push_back({t, methods[mi].label(), err});
    }
  }

  // Least-squares slope of log10(error) against t.
  const int nt = t_max - t_min + 1;
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    double st = 0.0, se = 0.0, stt = 0.0, ste = 0.0;
    for (int i = 0; i < nt; ++i) {
      const double t = t_min + i;
      const double e = std::log10(std::max(errors[mi][i], 1e-300));
      st += t;
      se += e;
      stt += t * t;
      ste += t * e;
    }
    const double slope = (nt * ste - st * se) / (nt * stt - st * st);
    result.slopes.emplace_back(methods[mi].label(), slope);
  }
  return result;
}

}  // namespace hp2sph
