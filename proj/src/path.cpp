// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The rosenblatt-lab Authors
#include "rlab/path.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "rlab/errors.hpp"

namespace rlab {

const char* method_name(Method m) {
  return m == Method::WaveletExpansion ? "wavelet" : "oracle";
}

void TruncationSpec::validate() const {
  std::ostringstream os;
  if (j_min > 0) os << "j_min must be <= 0; ";
  if (j_max < 0) os << "j_max must be >= 0; ";
  if (j_max > 24) os << "j_max must be <= 24; ";
  if (j_min < -200) os << "j_min must be >= -200; ";
  if (k_band < 4) os << "k_band must be >= 4; ";
  if (!(oracle_left_cut > 0.0) || !std::isfinite(oracle_left_cut)) os << "oracle_left_cut must be > 0; ";
  if (!(oracle_step > 0.0) || oracle_step > 0.25) os << "oracle_step must be in (0, 1/4]; ";
  if (oracle_step > 0.0) {
    int e = 0;
    const double m = std::frexp(oracle_step, &e);
    if (m != 0.5) os << "oracle_step must be a power of two; ";
    const double cells = oracle_left_cut / oracle_step;
    if (cells != std::floor(cells)) os << "oracle_left_cut must be a multiple of oracle_step; ";
  }
  if (!os.str().empty()) fail(ErrorKind::ConfigInvalid, "truncation: " + os.str());
}

double PathGrid::at(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) fail(ErrorKind::OutOfRange, "path time outside [0,1]");
  const double u = t * static_cast<double>(values.size() - 1);
  auto i = static_cast<std::size_t>(std::floor(u));
  if (i >= values.size() - 1) return values.back();
  const double f = u - static_cast<double>(i);
  return values[i] + f * (values[i + 1] - values[i]);
}

std::vector<double> uniform_times(int grid_level) {
  const std::size_t n = (std::size_t{1} << grid_level) + 1;
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = std::ldexp(static_cast<double>(i), -grid_level);
  return t;
}

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_path_csv(const PathGrid& p, std::ostream& os) {
  os << "t,value\n";
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    os << format_double(p.times[i]) << ',' << format_double(p.values[i]) << '\n';
  }
}

namespace {

template <class T>
void put_le(std::ostream& os, T v) {
  static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);
  unsigned char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
  }
  os.write(reinterpret_cast<const char*>(b), sizeof(T));
}

template <class T>
T get_le(std::istream& is) {
  unsigned char b[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(b), sizeof(T))) fail(ErrorKind::IoFailure, "truncated binary path");
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
  }
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

}  // namespace

void write_path_binary(const PathGrid& p, std::ostream& os) {
  put_le<std::uint64_t>(os, p.seed);
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(p.method));
  put_le<double>(os, p.h1);
  put_le<double>(os, p.h2);
  put_le<std::int32_t>(os, p.grid_level);
  for (double v : p.values) put_le<double>(os, v);
}

PathGrid read_path_binary(std::istream& is) {
  PathGrid p;
  p.seed = get_le<std::uint64_t>(is);
  p.method = static_cast<Method>(get_le<std::uint32_t>(is));
  p.h1 = get_le<double>(is);
  p.h2 = get_le<double>(is);
  p.grid_level = get_le<std::int32_t>(is);
  if (p.grid_level < 0 || p.grid_level > 26) fail(ErrorKind::IoFailure, "bad grid level in binary path");
  p.times = uniform_times(p.grid_level);
  p.values.resize(p.times.size());
  for (double& v : p.values) v = get_le<double>(is);
  return p;
}

PathGrid read_path_csv(std::istream& is) {
  PathGrid p;
  std::string line;
  if (!std::getline(is, line) || line.rfind("t,value", 0) != 0) fail(ErrorKind::IoFailure, "missing CSV header t,value");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) fail(ErrorKind::IoFailure, "malformed CSV row");
    p.times.push_back(std::stod(line.substr(0, comma)));
    p.values.push_back(std::stod(line.substr(comma + 1)));
  }
  const std::size_t n = p.values.size();
  if (n < 3 || !std::has_single_bit(n - 1)) fail(ErrorKind::IoFailure, "CSV path needs 2^G+1 rows");
  p.grid_level = std::countr_zero(n - 1);
  return p;
}

}  // namespace rlab
