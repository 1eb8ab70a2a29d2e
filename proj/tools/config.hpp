#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "casimir/quad.hpp"
#include "casimir/response.hpp"
#include "casimir/stack.hpp"

namespace casimir::cli {

/// Malformed or inconsistent configuration. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };

struct LayerConfig {
  ResponseModel eps = ResponseModel::vacuum();
  ResponseModel mu = ResponseModel::vacuum();
  double thickness = 1.0;

  Layer layer() const { return {eps, mu, thickness}; }
};

struct RunConfig {
  double reference_frequency = 1.0;  // rad/s, used only for --si
  std::vector<LayerConfig> layers;
  bool mirrors = false;
  QuadratureSpec quad;
  OutputFormat output = OutputFormat::csv;

  std::vector<Layer> stack_layers() const;
};

ResponseModel parse_model(const nlohmann::json& node, const std::string& where);
RunConfig parse_config(const nlohmann::json& root);
RunConfig parse_config_text(std::string_view text);

}  // namespace casimir::cli
