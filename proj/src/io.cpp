#include "hp2sph/io.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hp2sph::io {

namespace {

void put_u32_le(std::ostream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32_le(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f64_le(std::ostream& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xff);
  out.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64_le(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = {}) {
  std::ofstream out(path, mode);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

std::ifstream open_in(const std::string& path, std::ios::openmode mode = {}) {
  std::ifstream in(path, mode);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return in;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::runtime_error("bad numeric field '" + s + "'");
  return v;
}

void write_map(const std::string& path, const MapValues& map) {
  std::ofstream out = open_out(path, std::ios::binary);
  out.write("HPXM", 4);
  put_u32_le(out, 1);
  put_u32_le(out, static_cast<std::uint32_t>(map.grid().n_side()));
  unsigned char tail[4] = {0, 0, 0, 0};  // ordering = 0 (RING) + reserved
  out.write(reinterpret_cast<const char*>(tail), 4);
  for (double v : map.values()) put_f64_le(out, v);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

MapValues read_map(const std::string& path) {
  std::ifstream in = open_in(path, std::ios::binary);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "HPXM", 4) != 0)
    throw std::runtime_error("'" + path + "' is not an HPXM map");
  const std::uint32_t version = get_u32_le(in);
  if (version != 1)
    throw std::runtime_error("'" + path + "': unsupported HPXM version " +
                             std::to_string(version));
  const std::uint32_t n_side = get_u32_le(in);
  unsigned char tail[4];
  in.read(reinterpret_cast<char*>(tail), 4);
  if (!in || tail[0] != 0)
    throw std::runtime_error("'" + path + "': unsupported ordering (RING only)");
  auto grid = std::make_shared<const HealpixGrid>(static_cast<int>(n_side));
  std::vector<double> values(grid->n_points());
  for (double& v : values) v = get_f64_le(in);
  if (!in) throw std::runtime_error("'" + path + "': truncated payload");
  in.peek();
  if (!in.eof()) throw std::runtime_error("'" + path + "': trailing bytes");
  return MapValues(std::move(grid), std::move(values));
}

void write_coeffs(const std::string& path, const SphCoeffTriangle& coeffs) {
  std::ofstream out = open_out(path);
  out << "ell,m,re,im\n";
  for (int l = 0; l <= coeffs.ell_max(); ++l)
    for (int m = -l; m <= l; ++m)
      out << l << ',' << m << ',' << format_double(coeffs.at(l, m).real())
          << ',' << format_double(coeffs.at(l, m).imag()) << '\n';
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

SphCoeffTriangle read_coeffs(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line != "ell,m,re,im")
    throw std::runtime_error("'" + path + "': missing coefficient header");
  struct Row {
    int l, m;
    cplx value;
  };
  std::vector<Row> rows;
  int ell_max = -1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 4)
      throw std::runtime_error("'" + path + "': malformed row '" + line + "'");
    Row row;
    row.l = std::stoi(fields[0]);
    row.m = std::stoi(fields[1]);
    row.value = cplx{parse_double(fields[2]), parse_double(fields[3])};
    if (row.l < 0 || std::abs(row.m) > row.l)
      throw std::runtime_error("'" + path + "': invalid (ell, m) pair");
    ell_max = std::max(ell_max, row.l);
    rows.push_back(row);
  }
  if (ell_max < 0) throw std::runtime_error("'" + path + "': no coefficients");
  SphCoeffTriangle coeffs(ell_max);
  for (const Row& row : rows) coeffs.at(row.l, row.m) = row.value;
  return coeffs;
}

void write_spectrum(const std::string& path, const std::vector<double>& cl) {
  std::ofstream out = open_out(path);
  out << "ell,cl\n";
  for (std::size_t l = 0; l < cl.size(); ++l)
    out << l << ',' << format_double(cl[l]) << '\n';
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void write_ring_table(const std::string& path, const HealpixGrid& grid) {
  std::ofstream out = open_out(path);
  out << "index,theta,count,phi0\n";
  for (int r = 0; r < grid.n_rings(); ++r) {
    const RingSpec& ring = grid.ring(r);
    out << r << ',' << format_double(ring.theta) << ',' << ring.count << ','
        << format_double(ring.phi_offset) << '\n';
  }
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void write_study(const std::string& path, const StudyResult& result) {
  std::ofstream out = open_out(path);
  out << "t,method,max_abs_error\n";
  for (const StudyRow& row : result.rows)
    out << row.t << ',' << row.method << ',' << format_double(row.max_abs_error)
        << '\n';
  for (const auto& [method, slope] : result.slopes)
    out << "# slope," << method << ',' << format_double(slope) << '\n';
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

SplineSpec read_spline_spec(const std::string& path) {
  std::ifstream in = open_in(path);
  nlohmann::json j;
  in >> j;
  SplineSpec spec;
  const auto& w = j.at("weights");
  const auto& lam = j.at("lambda");
  const auto& th = j.at("theta");
  if (w.size() != lam.size() || w.size() != th.size())
    throw std::runtime_error("'" + path + "': weights/lambda/theta length mismatch");
  for (std::size_t i = 0; i < w.size(); ++i) {
    spec.weights.push_back(w[i].get<double>());
    spec.centers.push_back({lam[i].get<double>(), th[i].get<double>()});
  }
  spec.validate();
  return spec;
}

void write_spline_spec(const std::string& path, const SplineSpec& spec) {
  nlohmann::json j;
  for (std::size_t i = 0; i < spec.weights.size(); ++i) {
    j["weights"].push_back(spec.weights[i]);
    j["lambda"].push_back(spec.centers[i].lambda);
    j["theta"].push_back(spec.centers[i].theta);
  }
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
}

std::vector<std::pair<int, int>> read_harmonics(const std::string& path) {
  std::ifstream in = open_in(path);
  nlohmann::json j;
  in >> j;
  std::vector<std::pair<int, int>> terms;
  for (const auto& term : j.at("terms")) {
    if (!term.is_array() || term.size() != 2)
      throw std::runtime_error("'" + path + "': terms must be [ell, m] pairs");
    terms.emplace_back(term[0].get<int>(), term[1].get<int>());
  }
  return terms;
}

}  // namespace hp2sph::io
