#include "config.hpp"

#include <cmath>
#include <initializer_list>

#include "casimir/errors.hpp"

namespace casimir::cli {

namespace {

using nlohmann::json;

void only_keys(const json& node, std::initializer_list<const char*> allowed,
               const std::string& where) {
  for (const auto& [key, value] : node.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

const json& require(const json& node, const char* key, const std::string& where) {
  if (!node.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
  return node.at(key);
}

double number(const json& node, const std::string& where) {
  if (!node.is_number()) throw ConfigError(where + ": expected a number");
  const double v = node.get<double>();
  if (!std::isfinite(v)) throw ConfigError(where + ": expected a finite number");
  return v;
}

double thickness(const json& node, const std::string& where) {
  if (node.is_string()) {
    if (node.get<std::string>() == "inf") return kInfiniteThickness;
    throw ConfigError(where + ": thickness must be a number or \"inf\"");
  }
  const double d = number(node, where);
  if (!(d > 0.0)) throw ConfigError(where + ": thickness must be positive");
  return d;
}

LorentzTerm parse_term(const json& node, const std::string& where) {
  if (!node.is_object()) throw ConfigError(where + ": expected an object");
  only_keys(node, {"omega_p", "omega_0", "gamma", "sign"}, where);
  LorentzTerm t;
  t.omega_p = number(require(node, "omega_p", where), where + ".omega_p");
  t.omega_0 = number(require(node, "omega_0", where), where + ".omega_0");
  t.gamma = number(require(node, "gamma", where), where + ".gamma");
  const json& sign = require(node, "sign", where);
  if (sign == "loss") {
    t.sign = TermSign::loss;
  } else if (sign == "gain") {
    t.sign = TermSign::gain;
  } else {
    throw ConfigError(where + ".sign: expected \"loss\" or \"gain\"");
  }
  return t;
}

}  // namespace

std::vector<Layer> RunConfig::stack_layers() const {
  std::vector<Layer> out;
  out.reserve(layers.size());
  for (const auto& l : layers) out.push_back(l.layer());
  return out;
}

ResponseModel parse_model(const json& node, const std::string& where) {
  if (!node.is_object()) throw ConfigError(where + ": expected a model object");
  const json& type = require(node, "type", where);
  if (type == "vacuum") {
    only_keys(node, {"type"}, where);
    return ResponseModel::vacuum();
  }
  if (type == "lorentz") {
    only_keys(node, {"type", "terms"}, where);
    const json& terms = require(node, "terms", where);
    if (!terms.is_array() || terms.empty()) {
      throw ConfigError(where + ".terms: expected a non-empty array");
    }
    std::vector<LorentzTerm> out;
    for (std::size_t k = 0; k < terms.size(); ++k) {
      out.push_back(parse_term(terms[k], where + ".terms[" + std::to_string(k) + "]"));
    }
    return ResponseModel::lorentz(std::move(out));
  }
  if (type == "tabulated") {
    only_keys(node, {"type", "points"}, where);
    const json& points = require(node, "points", where);
    if (!points.is_array() || points.empty()) {
      throw ConfigError(where + ".points: expected a non-empty array");
    }
    std::vector<TablePoint> table;
    for (std::size_t k = 0; k < points.size(); ++k) {
      const std::string at = where + ".points[" + std::to_string(k) + "]";
      const json& p = points[k];
      if (!p.is_array() || p.size() != 2) throw ConfigError(at + ": expected [omega, im_chi]");
      table.push_back({number(p[0], at), number(p[1], at)});
    }
    return ResponseModel::tabulated(std::move(table));
  }
  throw ConfigError(where + ".type: expected \"vacuum\", \"lorentz\" or \"tabulated\"");
}

RunConfig parse_config(const json& root) {
  if (!root.is_object()) throw ConfigError("config: expected a JSON object");
  only_keys(root, {"reference_frequency", "layers", "mirrors", "quadrature", "output"}, "config");
  RunConfig cfg;
  if (root.contains("reference_frequency")) {
    cfg.reference_frequency = number(root.at("reference_frequency"), "reference_frequency");
    if (!(cfg.reference_frequency > 0.0)) {
      throw ConfigError("reference_frequency: must be positive");
    }
  }
  if (root.contains("mirrors")) {
    if (!root.at("mirrors").is_boolean()) throw ConfigError("mirrors: expected true or false");
    cfg.mirrors = root.at("mirrors").get<bool>();
  }
  if (root.contains("output")) {
    const json& out = root.at("output");
    if (out == "csv") {
      cfg.output = OutputFormat::csv;
    } else if (out == "json") {
      cfg.output = OutputFormat::json;
    } else {
      throw ConfigError("output: expected \"csv\" or \"json\"");
    }
  }
  if (root.contains("quadrature")) {
    const json& q = root.at("quadrature");
    if (!q.is_object()) throw ConfigError("quadrature: expected an object");
    only_keys(q, {"rel_tol", "abs_tol", "max_depth", "truncation"}, "quadrature");
    if (q.contains("rel_tol")) cfg.quad.rel_tol = number(q.at("rel_tol"), "quadrature.rel_tol");
    if (q.contains("abs_tol")) cfg.quad.abs_tol = number(q.at("abs_tol"), "quadrature.abs_tol");
    if (q.contains("truncation")) {
      cfg.quad.truncation = number(q.at("truncation"), "quadrature.truncation");
    }
    if (q.contains("max_depth")) {
      if (!q.at("max_depth").is_number_integer()) {
        throw ConfigError("quadrature.max_depth: expected an integer");
      }
      cfg.quad.max_depth = q.at("max_depth").get<int>();
    }
    try {
      cfg.quad.validate();
    } catch (const Error& e) {
      throw ConfigError(std::string("quadrature: ") + e.what());
    }
  }

  const json& layers = require(root, "layers", "config");
  if (!layers.is_array() || layers.empty()) {
    throw ConfigError("layers: expected a non-empty array");
  }
  for (std::size_t j = 0; j < layers.size(); ++j) {
    const std::string where = "layers[" + std::to_string(j) + "]";
    const json& node = layers[j];
    if (!node.is_object()) throw ConfigError(where + ": expected an object");
    only_keys(node, {"thickness", "eps", "mu"}, where);
    LayerConfig layer;
    layer.thickness = thickness(require(node, "thickness", where), where + ".thickness");
    if (node.contains("eps")) layer.eps = parse_model(node.at("eps"), where + ".eps");
    if (node.contains("mu")) layer.mu = parse_model(node.at("mu"), where + ".mu");
    const bool outer = j == 0 || j + 1 == layers.size();
    if (layer.thickness == kInfiniteThickness && !outer) {
      throw ConfigError(where + ".thickness: only outer layers may be \"inf\"");
    }
    cfg.layers.push_back(std::move(layer));
  }
  if (cfg.mirrors) {
    for (const auto& l : cfg.layers) {
      if (l.thickness == kInfiniteThickness) {
        throw ConfigError("mirrors: a stack between mirrors needs finite layers");
      }
    }
  }
  return cfg;
}

RunConfig parse_config_text(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(root);
}

}  // namespace casimir::cli
