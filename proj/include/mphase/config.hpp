#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mphase/reaction.hpp"
#include "mphase/solver.hpp"

namespace mphase {

/// Per-cell field description: a constant or a named analytic profile.
/// Accepted spellings: a bare number, "constant c", "linear-ramp a b"
/// (along x), "linear-ramp-y a b".
struct Profile {
    enum class Kind { Constant, LinearRampX, LinearRampY };
    Kind kind = Kind::Constant;
    double a = 0.0;
    double b = 0.0;
};

Profile parse_profile(const std::string& text);
std::vector<double> materialize(const Profile& pr, const Grid& g);

struct PhaseConfig {
    Profile weight{Profile::Kind::Constant, 1.0, 0.0};
    Profile exponent{Profile::Kind::Constant, 2.0, 0.0};
};

struct ReactionConfig {
    double alpha = 1.0;
    Profile q1{Profile::Kind::Constant, 1.0, 0.0};
    Profile q2{Profile::Kind::Constant, 1.0, 0.0};
    Profile r{Profile::Kind::Constant, 1.0, 0.0};
    Profile kappa{Profile::Kind::Constant, 1.0, 0.0};
    std::optional<double> lambda0;
};

struct RunParams {
    std::optional<double> lambda;
    double tau = 0.5;
    int steps = 500;
    double steady_tol = 1e-5;
    double iter_tol = 1e-6;
    int max_outer = 500;
    std::uint64_t seed = 0;
};

/// Parsed `block { key = value ... }` configuration. Unknown blocks or keys
/// are errors; every field has a default so a minimal file works.
struct RunConfig {
    int nx = 32, ny = 32;
    std::optional<double> hx, hy; // default 1/nx, 1/ny (unit square)
    std::vector<PhaseConfig> phases{PhaseConfig{}}; // default: single phase w = 1, p = 2
    ReactionConfig reaction;
    SolverConfig solver;
    RunParams run;

    Grid make_grid() const;
    PhaseSpec make_phase_spec(const Grid& g) const;
    ReactionSource make_reaction(const Grid& g) const;
    /// ConfigError when the run block did not set lambda.
    double require_lambda() const;
};

RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& name = "<config>");

} // namespace mphase
