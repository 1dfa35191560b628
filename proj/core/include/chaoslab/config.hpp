#pragma once

// Experiment configuration files.
//
// Sectioned key = value text; '#' starts a comment, lists are comma separated:
//
//   [model]
//   kind = 1d                  # 2d | 1d
//   length = 6, 8, 10          # 1d: one series per length
//   range = all                # 1d: l_c per series: integer, all (L - 1) or half (L / 2)
//   [sweep]
//   units = J_over_Jc          # native | JL_over_delta | J_over_Jc
//   log_from = 0.01            # or: values = 0.1, 1, 10
//   log_to = 100
//   points = 9
//   [ensemble]
//   realizations = 10
//   base_seed = 7
//   [measures]
//   list = pn, C_1, S_half
//   scope.pn = central
//   [output]
//   directory = out
//
// Every problem is reported, each with its line number; unknown keys are errors.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chaoslab/ensemble.hpp"
#include "chaoslab/errors.hpp"

namespace chaoslab {

struct ConfigIssue {
    int line = 0;  // 0 when the problem is not tied to one line
    std::string message;
};

class ConfigError : public ArgumentError {
  public:
    explicit ConfigError(std::vector<ConfigIssue> issues);
    const std::vector<ConfigIssue>& issues() const noexcept { return issues_; }

  private:
    std::vector<ConfigIssue> issues_;
};

// Interaction range of a 1D series: a fixed l_c, or one that follows L.
struct RangeSpec {
    enum class Kind { value, all, half };
    Kind kind = Kind::all;
    int value = 0;

    int resolve(int length) const { return kind == Kind::all ? length - 1 : kind == Kind::half ? length / 2 : value; }
    std::string to_string() const;
    bool operator==(const RangeSpec&) const = default;
};

struct LogGrid {
    double from = 0.1;
    double to = 10.0;
    int points = 2;
    bool operator==(const LogGrid&) const = default;
};

struct ExperimentConfig {
    ModelKind kind = ModelKind::torus2d;
    // 2d model
    int lx = 3;
    int ly = 3;
    double delta0 = 1.0;
    double delta = 0.09;
    // 1d model
    std::vector<int> lengths{12};
    double gradient = 1.0;
    double rabi = 100.0;
    std::vector<RangeSpec> ranges{RangeSpec{}};
    std::optional<int> band;

    CouplingUnits units = CouplingUnits::native;
    std::vector<double> values;
    std::optional<LogGrid> log_grid;

    int realizations = 200;
    std::uint64_t base_seed = 0;
    unsigned threads = 1;

    std::vector<MeasureRequest> measures;
    BandRule band_rule = BandRule::count;
    Unfolding unfolding = Unfolding::staircase;
    int unfolding_degree = 9;
    double pds_bin_width = 0.1;
    double clambda_bin_width = 0.05;

    std::string directory = "results";
    std::string name = "run";
    std::vector<std::string> formats{"csv", "json"};
    bool dump_eigenvalues = false;

    std::vector<double> grid() const;
    bool operator==(const ExperimentConfig&) const = default;
};

inline constexpr int kDefaultRealizations2D = 200;
inline constexpr int kDefaultRealizations1D = 10;

// Throws ConfigError listing every syntax error, unknown key and violated constraint.
ExperimentConfig parse_config(const std::string& text);

// Canonical text form; parse_config(serialize(c)) == c.
std::string serialize(const ExperimentConfig& config);

// Constraint check on an in-memory config, same rules as parse_config.
std::vector<ConfigIssue> check(const ExperimentConfig& config);

// One plan per series: the 2d model has one, the 1d model one per (length, range).
std::vector<SweepPlan> to_plans(const ExperimentConfig& config);

}  // namespace chaoslab
