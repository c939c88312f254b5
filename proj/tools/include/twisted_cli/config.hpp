#pragma once

// Experiment configuration: a versioned JSON document resolved into library
// objects, with diagnostics that name the offending field.

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twisted/errors.hpp"
#include "twisted/fourier.hpp"
#include "twisted/model.hpp"
#include "twisted/moments.hpp"
#include "twisted/orbit.hpp"
#include "twisted/torus_arcs.hpp"

namespace twisted::cli {

inline constexpr int kSchemaVersion = 1;

class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& message)
      : Error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

struct Window {
  std::string label;
  ArcSet set;
};

struct ExperimentConfig {
  std::string kind;
  std::string id;
  std::uint64_t seed = 0;
  std::optional<SequenceSpec> sequence;
  std::optional<ApproxFunction> psi;
  std::optional<DimensionFunction> f;
  std::vector<RealRep> alphas;
  std::optional<MeasureSpec> measure;
  std::optional<BlockScheme> blocks;
  std::vector<Window> windows;
  std::vector<IndexRange> schedule;
  std::optional<IndexRange> range;
  std::optional<double> tolerance;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json echo;  ///< the document as given, seed override applied
};

const std::vector<std::string>& known_kinds();

/// Parses and validates a config document. `seed_override` replaces the
/// document's seed before any sampling happens.
ExperimentConfig parse_config(const nlohmann::json& doc, std::optional<std::uint64_t> seed_override = std::nullopt);

/// Reads a JSON file; an empty or unreadable file is a ConfigError at "$".
nlohmann::json load_config_file(const std::string& path);

}  // namespace twisted::cli
