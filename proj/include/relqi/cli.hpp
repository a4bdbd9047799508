#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "relqi/partition.hpp"

namespace relqi::cli {

/// Process exit codes.
enum ExitCode : int { kOk = 0, kUsage = 2, kNumerical = 3 };

struct FriisParams {
    double alpha = 0.0;
    double beta = 0.0;
    double pz = 1.0;
    double mass = 1.0;
};

struct BoostParams {
    Eigen::Vector3d axis = Eigen::Vector3d::UnitX();
    std::optional<double> rapidity;
};

enum class Format { text, csv, json };

struct RunConfig {
    std::string command;
    std::optional<std::string> state_path;
    std::optional<FriisParams> friis;
    std::optional<BoostParams> boost;
    std::vector<PartitionSpec> partitions;
    std::vector<double> rapidities;
    std::size_t samples = 1000;
    std::uint64_t seed = 0;
    double max_rapidity = 3.0;
    double tolerance = 1e-9;
    std::optional<std::string> out_path;
    Format format = Format::text;
};

/// Real number or a multiple/fraction of pi: "0.5", "pi", "pi/4", "3*pi/8", "-pi/2".
double parse_real(std::string_view text);

/// "alpha=..,beta=..[,pz=..][,mass=..]".
FriisParams parse_friis(std::string_view text);

/// "axis=x|y|z|<nx,ny,nz>[,rapidity=r]". Explicit axis vectors are normalized.
BoostParams parse_boost(std::string_view text);

/// "r1,r2,..." or "start:stop:count" (inclusive, evenly spaced).
std::vector<double> parse_grid(std::string_view text);

/// Runs one command line (args excludes the program name). Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace relqi::cli
