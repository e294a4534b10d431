#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nonint/records.hpp"

namespace nonint::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIntegralFound = 1;
inline constexpr int kExitUsage = 2;
/// An identity or verification check failed (library defect, not a usage error).
inline constexpr int kExitCheckFailed = 3;

struct RunConfig {
    std::string subcommand;
    std::map<std::string, std::uint64_t> parameters;  // keyed by flag name without dashes
    std::map<std::string, Exponent> exponents;        // lemma2 threshold overrides
    std::uint64_t oracle_cutoff = kDefaultOracleCutoff;
    unsigned threads = 1;
    std::optional<std::filesystem::path> output_path;
    Format format = Format::jsonl;
};

/// Parses exactly one decimal integer (digits only, fits in 64 bits).
std::optional<std::uint64_t> parse_exact_uint(const std::string& text);
/// Parses "p/q" or a plain integer into an exponent with q >= 1.
std::optional<Exponent> parse_exponent(const std::string& text);

struct ParseOutcome {
    std::optional<RunConfig> config;
    int exit_code = kExitOk;  // meaningful when config is empty (help or error)
};

ParseOutcome parse_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

int main_entry(int argc, char** argv);

}  // namespace nonint::cli
