#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ribnet/cauchy.hpp"
#include "ribnet/diagnostics.hpp"
#include "ribnet/seeds.hpp"
#include "ribnet_cli/json_reader.hpp"

namespace ribnet::cli {

inline constexpr const char* kConfigSchema = "ribnet.config/1";
inline constexpr const char* kToleranceEnv = "RIBNET_TOLERANCE";

enum class SeedKind { kGrid, kFrames, kCircular };

struct SeedSpec {
  SeedKind kind = SeedKind::kFrames;
  int n = 3;
  std::vector<int> extents{5, 5, 5};
  std::vector<double> spacings;  // grid; empty means 1 per axis
  std::uint64_t rng_seed = 1;
  RandomFrameOptions frames;
  ParameterField field;
  bool cauchy_only = false;  // keep only vertices with at most two nonzero coordinates
};

struct Tolerances {
  VerifyOptions verify;
  CompletionOptions completion;
  std::string source = "default";
  std::optional<std::string> env_value;  // raw RIBNET_TOLERANCE when set
};

struct OutputSpec {
  std::string net;
  std::string report;
  std::string mesh_dir;
};

struct RunConfig {
  std::string command;
  SeedSpec seed;
  Tolerances tolerances;
  OutputSpec output;
};

// Defaults with the environment override applied. Throws InputError when
// the variable is not a positive number.
RunConfig default_config(const std::optional<std::string>& tolerance_env);

// Applies a schema-tagged config document on top of `base`.
void apply_config(const json& doc, RunConfig& base);

// A single tolerance for every check, as scaled_options.
void set_tolerance(Tolerances& t, double tol, std::string source);

std::string seed_kind_name(SeedKind kind);

}  // namespace ribnet::cli
