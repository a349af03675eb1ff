// CSV formats: path samples (header t0_c0,...,t{T-1}_c{d-1}, one row per
// path) and discrete measures (x_0..x_{d-1},weight). Doubles are written
// with 17 significant digits so round trips are bit-exact.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "awt/core.hpp"
#include "awt/measure.hpp"

namespace awt {

std::string format_double17(double v);

void write_path_sample_csv(const PathSample& sample, std::ostream& os);
void write_path_sample_csv_file(const PathSample& sample,
                                const std::string& path);
// The seed is not part of the format; the result carries seed = 0.
PathSample read_path_sample_csv(std::istream& is);
PathSample read_path_sample_csv_file(const std::string& path);

void write_discrete_measure_csv(const DiscreteMeasure& mu, std::ostream& os);
void write_discrete_measure_csv_file(const DiscreteMeasure& mu,
                                     const std::string& path);
// Weights are rationalized back to exact counts when possible.
DiscreteMeasure read_discrete_measure_csv(std::istream& is);
DiscreteMeasure read_discrete_measure_csv_file(const std::string& path);

std::vector<std::string> split_csv_line(const std::string& line);
double parse_double_strict(const std::string& text);

}  // namespace awt
