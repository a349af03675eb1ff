#include "awt/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace awt {

std::string format_double17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

double parse_double_strict(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty numeric field");
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size())
    throw std::invalid_argument("bad numeric field: " + text);
  return v;
}

void write_path_sample_csv(const PathSample& sample, std::ostream& os) {
  const int d = sample.dims.d, T = sample.dims.T;
  for (int t = 0; t < T; ++t)
    for (int c = 0; c < d; ++c)
      os << (t == 0 && c == 0 ? "" : ",") << 't' << t << "_c" << c;
  os << '\n';
  for (std::int64_t i = 0; i < sample.n; ++i) {
    const PathView p = sample.path(i);
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k) os << ',';
      os << format_double17(p[k]);
    }
    os << '\n';
  }
}

void write_path_sample_csv_file(const PathSample& sample,
                                const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for write: " + path);
  write_path_sample_csv(sample, os);
}

PathSample read_path_sample_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line))
    throw std::invalid_argument("path sample CSV: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv_line(line);
  // Header is t{t}_c{c} in time-major order; infer d and T from the layout.
  int d = 0;
  while (d < static_cast<int>(header.size()) &&
         header[d] == "t0_c" + std::to_string(d))
    ++d;
  if (d == 0) throw std::invalid_argument("path sample CSV: bad header");
  if (header.size() % d != 0)
    throw std::invalid_argument("path sample CSV: ragged header");
  const int T = static_cast<int>(header.size()) / d;
  for (int t = 0; t < T; ++t)
    for (int c = 0; c < d; ++c)
      if (header[t * d + c] !=
          "t" + std::to_string(t) + "_c" + std::to_string(c))
        throw std::invalid_argument("path sample CSV: bad header field");
  const Dims dims(d, T);
  std::vector<double> data;
  std::int64_t n = 0;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (static_cast<int>(fields.size()) != dims.flat())
      throw std::invalid_argument("path sample CSV: bad row width");
    for (const auto& f : fields) data.push_back(parse_double_strict(f));
    ++n;
  }
  return make_path_sample(dims, n, 0, std::move(data));
}

PathSample read_path_sample_csv_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return read_path_sample_csv(is);
}

void write_discrete_measure_csv(const DiscreteMeasure& mu, std::ostream& os) {
  for (int c = 0; c < mu.d; ++c) os << (c ? "," : "") << 'x' << '_' << c;
  os << ",weight\n";
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const auto a = mu.atom(i);
    for (int c = 0; c < mu.d; ++c) os << format_double17(a[c]) << ',';
    os << format_double17(mu.weights[i]) << '\n';
  }
}

void write_discrete_measure_csv_file(const DiscreteMeasure& mu,
                                     const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for write: " + path);
  write_discrete_measure_csv(mu, os);
}

DiscreteMeasure read_discrete_measure_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line))
    throw std::invalid_argument("measure CSV: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv_line(line);
  if (header.size() < 2 || header.back() != "weight")
    throw std::invalid_argument("measure CSV: bad header");
  const int d = static_cast<int>(header.size()) - 1;
  std::vector<double> atoms, weights;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (static_cast<int>(fields.size()) != d + 1)
      throw std::invalid_argument("measure CSV: bad row width");
    for (int c = 0; c < d; ++c)
      atoms.push_back(parse_double_strict(fields[c]));
    weights.push_back(parse_double_strict(fields[d]));
  }
  if (weights.empty()) throw std::invalid_argument("measure CSV: no atoms");
  if (const auto rat = rationalize_weights(weights)) {
    return make_discrete_measure(d, std::move(atoms), rat->first, rat->second);
  }
  return make_discrete_measure_real(d, std::move(atoms), std::move(weights));
}

DiscreteMeasure read_discrete_measure_csv_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return read_discrete_measure_csv(is);
}

}  // namespace awt
