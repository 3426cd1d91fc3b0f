#ifndef HP2SPH_IO_HPP
#define HP2SPH_IO_HPP

#include <string>
#include <utility>
#include <vector>

#include "hp2sph/baseline.hpp"
#include "hp2sph/pipeline.hpp"

namespace hp2sph::io {

/// HPXM map container: 16-byte header ("HPXM", u32 version = 1, u32 n_side,
/// u8 ordering = 0 for RING, 3 reserved zero bytes) followed by
/// 12*n_side^2 little-endian doubles in RING order.
void write_map(const std::string& path, const MapValues& map);
MapValues read_map(const std::string& path);

/// Coefficient CSV: header "ell,m,re,im", rows sorted by ell then m
/// ascending; numbers in shortest round-trip formatting so that
/// parse -> serialize is bit-identical.
void write_coeffs(const std::string& path, const SphCoeffTriangle& coeffs);
SphCoeffTriangle read_coeffs(const std::string& path);

/// Spectrum CSV: header "ell,cl".
void write_spectrum(const std::string& path, const std::vector<double>& cl);

/// Ring table CSV: header "index,theta,count,phi0".
void write_ring_table(const std::string& path, const HealpixGrid& grid);

/// Study CSV: header "t,method,max_abs_error", one row per (t, method),
/// then "# slope,<method>,<value>" comment lines with the fitted slopes.
void write_study(const std::string& path, const StudyResult& result);

/// Spline spec JSON: {"weights": [...], "lambda": [...], "theta": [...]}.
SplineSpec read_spline_spec(const std::string& path);
void write_spline_spec(const std::string& path, const SplineSpec& spec);

/// Harmonic list JSON: {"terms": [[ell, m], ...]}.
std::vector<std::pair<int, int>> read_harmonics(const std::string& path);

std::string format_double(double v);  // shortest round-trip
double parse_double(const std::string& s);

}  // namespace hp2sph::io

#endif
