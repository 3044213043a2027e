#include "nkerr/scenario.hpp"

#include "nkerr/errors.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace nkerr {

namespace {

using nlohmann::json;

void only_keys(const json& node, std::initializer_list<const char*> allowed,
               const std::string& where) {
  if (!node.is_object()) throw SchemaError(where + ": expected an object");
  for (const auto& item : node.items()) {
    bool known = false;
    for (const char* key : allowed) known = known || item.key() == key;
    if (!known) throw SchemaError(where + ": unknown key \"" + item.key() + "\"");
  }
}

double number(const json& node, const char* key, const std::string& where, bool required,
              double fallback = 0.0) {
  if (!node.contains(key)) {
    if (required) throw SchemaError(where + ": missing \"" + key + "\"");
    return fallback;
  }
  const json& v = node.at(key);
  if (!v.is_number()) throw SchemaError(where + "." + key + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw SchemaError(where + "." + key + ": not finite");
  return x;
}

FieldMode parse_mode(const json& modes, const char* name, ModeLabel label) {
  const std::string where = std::string("modes.") + name;
  if (!modes.contains(name)) throw SchemaError("modes: missing mode \"" + std::string(name) + "\"");
  const json& node = modes.at(name);
  only_keys(node, {"g_re", "g_im", "delta", "n"}, where);

  FieldMode mode;
  mode.label = label;
  mode.coupling = cd(number(node, "g_re", where, true), number(node, "g_im", where, false));
  mode.detuning = number(node, "delta", where, true);
  if (!node.contains("n")) throw SchemaError(where + ": missing \"n\"");
  const json& n = node.at("n");
  if (!n.is_number_integer()) throw SchemaError(where + ".n: expected an integer");
  const auto photons = n.get<long long>();
  if (photons < 0 || photons > 1'000'000'000LL) {
    throw SchemaError(where + ".n: photon number out of range");
  }
  mode.photons = static_cast<int>(photons);
  return mode;
}

}  // namespace

SystemConfig parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  only_keys(doc, {"modes", "gamma"}, "scenario");
  if (!doc.contains("modes")) throw SchemaError("scenario: missing \"modes\"");
  const json& modes = doc.at("modes");
  only_keys(modes, {"a", "b", "c"}, "modes");

  SystemConfig config;
  config.a = parse_mode(modes, "a", ModeLabel::a);
  config.b = parse_mode(modes, "b", ModeLabel::b);
  config.c = parse_mode(modes, "c", ModeLabel::c);
  if (doc.contains("gamma")) {
    const json& gamma = doc.at("gamma");
    only_keys(gamma, {"g1", "g2", "g3"}, "gamma");
    config.gamma.g1 = number(gamma, "g1", "gamma", false);
    config.gamma.g2 = number(gamma, "g2", "gamma", false);
    config.gamma.g3 = number(gamma, "g3", "gamma", false);
    if (config.gamma.g1 < 0.0 || config.gamma.g2 < 0.0 || config.gamma.g3 < 0.0) {
      throw SchemaError("gamma: decay rates must be >= 0");
    }
  }
  return config;
}

SystemConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open scenario file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario(text.str());
}

std::string scenario_to_json(const SystemConfig& config) {
  auto mode = [](const FieldMode& m) {
    return json{{"g_re", m.coupling.real()},
                {"g_im", m.coupling.imag()},
                {"delta", m.detuning},
                {"n", m.photons}};
  };
  const json doc{{"modes", {{"a", mode(config.a)}, {"b", mode(config.b)}, {"c", mode(config.c)}}},
                 {"gamma", {{"g1", config.gamma.g1}, {"g2", config.gamma.g2}, {"g3", config.gamma.g3}}}};
  return doc.dump(2) + "\n";
}

}  // namespace nkerr
