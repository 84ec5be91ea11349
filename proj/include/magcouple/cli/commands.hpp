#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace magcouple::cli {

// Stable process exit codes.
enum ExitCode : int {
    kOk = 0,
    kFailure = 1,  ///< model error not covered below (singular response, eigen failure)
    kConfigError = 2,
    kIoError = 3,
    kNotConverged = 4,
    kMalformedData = 5,
};

struct Options {
    std::string config;
    std::string out;   ///< empty: standard output where the command allows it
    std::string data;  ///< fit input
    std::optional<std::uint64_t> seed;
    bool heatmap = false;
    std::optional<double> freq_scale;
    std::vector<double> fields;  ///< kittel: explicit field list
};

int cmd_kittel(const Options& opts, std::ostream& out, std::ostream& err);
int cmd_map(const Options& opts, std::ostream& out, std::ostream& err);
int cmd_synth(const Options& opts, std::ostream& out, std::ostream& err);
int cmd_branches(const Options& opts, std::ostream& out, std::ostream& err);
int cmd_fit(const Options& opts, std::ostream& out, std::ostream& err);
int cmd_thickness(const Options& opts, std::ostream& out, std::ostream& err);

/// Parses argv, dispatches to a subcommand and maps errors to exit codes.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace magcouple::cli
