#pragma once

// Command-line front end. Every command writes exactly one CSV or JSON
// document whose header echoes the full configuration.

#include "bandpredict/error.hpp"
#include "bandpredict/spectral.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bandpredict::cli {

inline constexpr std::string_view kFormatVersion = "bandpredict-1";

enum ExitCode : int {
  kOk = 0,
  kParameterError = 2,   // parameter, domain, contract, usage
  kDataError = 3,        // sizing, degenerate band, insufficient data, alignment
  kCausalityError = 4,
  kIoError = 5,
  kSaturationError = 6,
  kConsistencyError = 7,
};

int exit_code(ErrorKind kind) noexcept;

// Radians, or a multiple/fraction of pi: "1.0472", "pi", "pi/3", "2pi/3", "0.8pi", "-pi/2".
double parse_angle(std::string_view text);
// Comma-separated list of numbers (angles allowed when as_angle is set).
std::vector<double> parse_list(std::string_view text, bool as_angle = false);

// %.17g
std::string format_number(double v);

// Tabular output: '#'-prefixed key=value header, then one or more sections,
// each introduced by a '# section: name' line and a column header.
struct Section {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Document {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<Section> sections;
};

void write_csv(std::ostream& os, const Document& doc);
void write_json(std::ostream& os, const Document& doc);

// Reads a (t, x_re, x_im) time series; '#' lines are skipped.
Signal read_series_csv(std::istream& is);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bandpredict::cli
