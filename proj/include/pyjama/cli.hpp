#pragma once

// Command orchestration: INI-style config ingestion, report files and SVG figures.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "pyjama/covering.hpp"

namespace pyjama::cli {

// key = value lines grouped under [section] headers; '#' and ';' start comments.
class Config {
 public:
  static Config parse(const std::string& text);
  static Config load(const std::filesystem::path& path);

  bool has_section(const std::string& section) const;
  bool has(const std::string& section, const std::string& key) const;

  // Typed getters; malformed values throw ParseError naming the line and field,
  // missing required keys throw ConfigError.
  std::string get_string(const std::string& section, const std::string& key) const;
  Rational get_rational(const std::string& section, const std::string& key) const;
  GaussianRational get_gaussian(const std::string& section, const std::string& key) const;
  std::vector<GaussianRational> get_gaussian_list(const std::string& section, const std::string& key) const;
  long get_long(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key) const;

  // Every key of `section` must be one of `allowed`.
  void expect_keys(const std::string& section, const std::vector<std::string>& allowed) const;

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };
  const Entry& entry(const std::string& section, const std::string& key) const;

  std::map<std::string, std::map<std::string, Entry>> sections_;
};

// Builds the covering config from [covering]: rotations (comma list) or N (theta_set),
// epsilon, D (defaults to the least common period of the rotations).
CoveringConfig covering_config(const Config& cfg);

struct SvgStyle {
  double canvas = 600.0;
  double dot_radius = 3.0;
  long max_window = 16;  // window side is min(norm D, max_window)
  long obstruction_m_max = 2;
};

// Deterministic figure: stripes in two grays, dashed period parallelogram and
// uncovered polygons, degenerate pieces and obstruction points in black.
std::string render_svg(const CoverReport& report, const SvgStyle& style = {});

// Points of (a+bi)/m D + D Z[i] for the report's obstruction tuples inside [0, side]^2.
std::vector<Point2> obstruction_dots(const CoverReport& report, long side);

// Report body for a cover run, starting with the "pyjama-report v1" header.
std::string cover_report_text(const CoverReport& report);

enum class Command {
  VerifyCovering,
  Obstructions,
  IrrationalCover,
  RationalityCheck,
  Orbit,
  Classify,
  Density,
  Approx,
  ClosureIndex,
};

Command parse_command(const std::string& name);
const char* command_name(Command c);

struct RunConfig {
  Command command = Command::VerifyCovering;
  std::filesystem::path input_path;
  std::filesystem::path output_dir = ".";
  unsigned long long seed = 1;
  long precision_k = 24;
  int refine = 0;
  bool svg = true;
};

struct RunResult {
  int exit_code = 2;
  std::string summary;  // one line, key=value pairs
  std::string report;
  std::string svg;      // empty when none
};

// Executes the command without touching the filesystem beyond reading the config.
RunResult execute(const RunConfig& rc, const Config& cfg);

// Loads the config, executes, and writes artifacts only when the exit code is 0 or 1.
// Errors are mapped to exit 2 with the message on `err`.
int run(const RunConfig& rc, std::ostream& out, std::ostream& err);

}  // namespace pyjama::cli
