#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "magcouple/fit/problem.hpp"
#include "magcouple/oracle/oracle.hpp"
#include "magcouple/sweep/template.hpp"
#include "magcouple/sweep/thickness.hpp"

namespace magcouple {

inline constexpr int kConfigVersion = 1;

struct ModeEntry {
    std::string label;
    std::optional<double> omega;          ///< fixed-frequency mode
    std::optional<std::string> material;  ///< Kittel mode; key into the material table
    double alpha = 0.0;
    std::optional<double> beta;
    std::optional<double> lambda;         ///< converted with lambda_to_beta
};

struct CouplingEntry {
    std::string a;
    std::string b;
    double g = 0.0;
};

struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    std::size_t count = 0;

    std::vector<double> points() const;
};

struct ThicknessBlock {
    ThicknessModel model;
    Crosslink crosslink;
    std::vector<double> thicknesses;
    std::optional<std::array<std::string, 2>> thickness_pair;  ///< default: canonical resonator-YIG
    std::optional<std::array<std::string, 2>> linked_pair;     ///< default: canonical permalloy-resonator
};

struct FitParamEntry {
    std::string name;
    double lower = 0.0;
    double upper = 0.0;
    std::optional<double> initial;
};

struct FitBlock {
    std::string method = "map";  ///< "map" or "branches"
    std::vector<FitParamEntry> params;
    std::size_t n_ridges = 3;
    double min_separation = 0.05;
    bool refine = true;
    std::size_t max_iterations = 4000;  ///< per optimizer run
};

/// Parsed run configuration. Writing it back produces a canonical document,
/// so write -> parse -> write is byte-identical.
struct RunConfig {
    int version = kConfigVersion;
    std::map<std::string, KittelMaterial> materials;  ///< extends/overrides the built-in presets
    std::vector<ModeEntry> modes;
    std::vector<CouplingEntry> couplings;
    std::optional<GridSpec> field_grid;
    std::optional<GridSpec> freq_grid;
    std::optional<ThicknessBlock> thickness;
    std::optional<NoiseSpec> noise;
    std::optional<FitBlock> fit;
    double freq_scale = 1.0;  ///< display only; never applied to stored data
};

/// Throws Error{Config} naming the offending key.
RunConfig parse_config(std::string_view text);
/// Throws Error{Io} if unreadable, Error{Config} if invalid.
RunConfig load_config(const std::filesystem::path& path);
std::string write_config(const RunConfig& config);

/// Built-in "yig" and "permalloy" presets, overridden by config entries.
KittelMaterial resolve_material(const RunConfig& config, const std::string& name);
SystemTemplate build_template(const RunConfig& config);
std::size_t mode_index(const RunConfig& config, const std::string& label);
SweepCouplings sweep_couplings(const RunConfig& config);

}  // namespace magcouple
