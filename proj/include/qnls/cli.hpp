#pragma once

// Command-line orchestration: INI run configs, experiment dispatch, result
// files and the run index.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace qnls::cli {

/// Process exit statuses.
enum Exit : int { ok = 0, validation = 2, nonconvergence = 3, numerical = 4 };

/// `key=value` lines grouped in `[section]`s. Parsing keeps the order of
/// sections and keys, and echo() writes them back in the same canonical
/// layout, so a canonical file round-trips byte for byte.
class RunConfig {
 public:
  struct Entry {
    std::string key;
    std::string value;
  };
  struct Section {
    std::string name;
    std::vector<Entry> entries;
  };

  /// FormatError on malformed input.
  static RunConfig parse(const std::string& text);
  static RunConfig load(const std::filesystem::path& path);
  std::string echo() const;

  const std::vector<Section>& sections() const { return sections_; }
  bool has(const std::string& section, const std::string& key) const;
  std::optional<std::string> get(const std::string& section, const std::string& key) const;
  std::string text(const std::string& section, const std::string& key, const std::string& fallback) const;
  /// ValidationError when present but not a number.
  double number(const std::string& section, const std::string& key, double fallback) const;
  long integer(const std::string& section, const std::string& key, long fallback) const;
  bool flag(const std::string& section, const std::string& key, bool fallback) const;
  /// Comma- or space-separated numbers.
  std::vector<double> numbers(const std::string& section, const std::string& key,
                              const std::vector<double>& fallback) const;
  void set(const std::string& section, const std::string& key, const std::string& value);

 private:
  std::vector<Section> sections_;
};

struct Flags {
  std::string command;
  std::optional<std::filesystem::path> config;
  std::filesystem::path out = "qnls-out";
  std::optional<std::uint64_t> seed;
  bool exploratory = false;
  std::optional<int> threads;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{
      "groundstate", "mu-scan",   "scaling-check", "direction-check", "boost-check",      "evolve",
      "twave-test",  "galilean-check", "classify", "invariance",      "oscillate",        "thresholds",
      "charge-threshold", "check", "report"};
  return names;
}

/// Runs one experiment; writes summary.json (and traces, checkpoints) under
/// flags.out. Errors are reported on stderr and mapped to exit statuses.
int run(const RunConfig& config, const Flags& flags);

/// Index of the run directories below `dir`, sorted by timestamp, written to
/// dir/index.json and returned as text. Unreadable runs are skipped with a
/// warning on stderr.
std::string report_bundle(const std::filesystem::path& dir);

}  // namespace qnls::cli
