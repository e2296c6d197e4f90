#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "vesolve/models.hpp"
#include "vesolve/scheme.hpp"
#include "vesolve/verify.hpp"

namespace vesolve::cli {

enum class ModelKind { toy1d, damage1d, plasticity0d, delamination0d };

struct ModelConfig {
    ModelKind kind = ModelKind::toy1d;
    Toy1dSpec toy;
    Damage1dSpec damage;
    Plasticity0dSpec plasticity;
    Delamination0dSpec delamination;
};

enum class VerifyMode { automatic, ve, e };

struct VerifyConfig {
    VerifyMode mode = VerifyMode::automatic;
    ToleranceConfig tol;
};

struct OutputConfig {
    std::string trajectory = "trajectory.csv";
    std::string certificate = "certificate.txt";
};

struct RunConfig {
    ModelConfig model;
    SchemeConfig scheme;
    VerifyConfig verify;
    OutputConfig output;
    std::uint64_t seed = 1;
};

/// Raised for malformed documents, unknown keys and invariant violations.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

RunConfig parse_run_config(const std::string& path);
RunConfig parse_run_config_text(const std::string& text);

/// Model instance with the scheme correction attached.
RisProblem build_problem(const RunConfig& cfg);

/// VE verification unless the scheme is energetic or the mode says otherwise.
bool verify_as_ve(const RunConfig& cfg);

} // namespace vesolve::cli
