#pragma once

// Command-line front end. Kept in a library so the tests can drive it with argument vectors.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sievekit/report.hpp"

namespace sievekit::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Keys accepted in a config file and as --flags.
const std::vector<std::string>& known_keys();

/// Parses `key = value` lines; '#' starts a comment. Unknown keys throw UsageError.
std::map<std::string, std::string> parse_config(std::istream& in);

/// Resolved settings for one invocation: flags override the config file, which overrides defaults.
struct RunConfig {
  std::string command;
  std::map<std::string, std::string> overrides;
  std::string out;
  std::string format = "json";
  unsigned threads = 1;
  std::uint64_t seed = 20160847;

  bool has(const std::string& key) const { return overrides.contains(key); }
  std::string text(const std::string& key, const std::string& def) const;
  double real(const std::string& key, double def) const;
  std::uint64_t integer(const std::string& key, std::uint64_t def) const;
  bool flag(const std::string& key) const;
  std::vector<std::uint64_t> integers(const std::string& key, const std::vector<std::uint64_t>& def) const;
};

/// Markdown summary of a document produced by `verify` or `empirical`.
std::string markdown_summary(const Json& doc);

/// Runs the tool on argv-style arguments (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sievekit::cli
