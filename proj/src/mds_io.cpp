#include <fstream>
#include <sstream>

#include <json.hpp>

#include "scid/hybrid.hpp"

namespace scid::hybrid {

using nlohmann::json;

namespace {

std::vector<std::optional<RealInterval>> parse_guard(const Mds& m, const json& j, const std::string& where) {
  std::vector<std::optional<RealInterval>> out(m.vars.size());
  if (j.is_null()) return out;
  if (!j.is_object()) throw std::invalid_argument(where + ": guard must be an object");
  for (const auto& [var, iv] : j.items()) {
    const std::size_t d = m.var_index(var);
    if (iv.is_number()) {
      out[d] = RealInterval{iv.get<double>(), iv.get<double>()};
    } else if (iv.is_array() && iv.size() == 2) {
      out[d] = RealInterval{iv[0].get<double>(), iv[1].get<double>()};
    } else {
      throw std::invalid_argument(where + ": interval for '" + var + "' must be a number or [lo, hi]");
    }
  }
  return out;
}

std::vector<double> parse_state(const Mds& m, const json& j, const std::vector<double>& fallback) {
  std::vector<double> s = fallback;
  if (j.is_null()) return s;
  for (const auto& [var, v] : j.items()) s.at(m.var_index(var)) = v.get<double>();
  return s;
}

}  // namespace

Mds parse_mds(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("model: invalid JSON: ") + e.what());
  }
  try {
    Mds m;
    m.name = j.value("name", "mds");
    for (const auto& v : j.at("variables")) {
      if (v.is_string()) m.vars.push_back({v.get<std::string>(), ""});
      else m.vars.push_back({v.at("name").get<std::string>(), v.value("unit", "")});
    }
    for (const auto& jm : j.at("modes")) {
      Mode md;
      md.name = jm.at("name").get<std::string>();
      md.dwell = jm.value("dwell", true);
      const auto& rhs = jm.at("rhs");
      for (const auto& v : m.vars) {
        if (!rhs.contains(v.name))
          throw std::invalid_argument("mode '" + md.name + "' lacks a right-hand side for '" + v.name + "'");
        md.rhs.push_back(RealExpr::parse(rhs.at(v.name).get<std::string>()));
      }
      if (jm.contains("defs"))
        for (const auto& [k, v] : jm.at("defs").items()) md.defs.push_back({k, RealExpr::parse(v.get<std::string>())});
      m.modes.push_back(std::move(md));
    }
    m.spec = RealExpr::parse(j.at("spec").get<std::string>());
    const json init = j.value("initial", json::object());
    m.initial_mode = init.contains("mode") ? m.mode_index(init.at("mode").get<std::string>()) : 0;
    m.initial_state = parse_state(m, init.value("state", json()), std::vector<double>(m.vars.size(), 0.0));
    m.probe_state = parse_state(m, j.value("probe", json()), m.initial_state);
    for (const auto& jt : j.at("transitions")) {
      Transition t;
      t.name = jt.at("name").get<std::string>();
      t.from = m.mode_index(jt.at("from").get<std::string>());
      t.to = m.mode_index(jt.at("to").get<std::string>());
      t.initial = parse_guard(m, jt.value("guard", json()), "transition '" + t.name + "'");
      t.fixed = jt.value("fixed", false);
      t.required = jt.value("required", true);
      m.transitions.push_back(std::move(t));
    }
    m.finalize();
    return m;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("model: ") + e.what());
  }
}

Mds load_mds(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_mds(ss.str());
  } catch (const std::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

Mds resolve_mds(const std::string& spec) {
  if (spec == "transmission") return transmission();
  return load_mds(spec);
}

std::string mds_to_json(const Mds& m) {
  json j;
  j["name"] = m.name;
  j["variables"] = json::array();
  for (const auto& v : m.vars) j["variables"].push_back({{"name", v.name}, {"unit", v.unit}});
  j["modes"] = json::array();
  for (const auto& md : m.modes) {
    json jm{{"name", md.name}, {"dwell", md.dwell}};
    for (std::size_t i = 0; i < m.vars.size(); ++i) jm["rhs"][m.vars[i].name] = md.rhs[i].source();
    for (const auto& d : md.defs) jm["defs"][d.name] = d.expr.source();
    j["modes"].push_back(jm);
  }
  j["spec"] = m.spec.source();
  auto state = [&](const std::vector<double>& s) {
    json o = json::object();
    for (std::size_t i = 0; i < m.vars.size(); ++i) o[m.vars[i].name] = s[i];
    return o;
  };
  j["initial"] = {{"mode", m.modes[m.initial_mode].name}, {"state", state(m.initial_state)}};
  j["probe"] = state(m.probe_state);
  j["transitions"] = json::array();
  for (const auto& t : m.transitions) {
    json jt{{"name", t.name}, {"from", m.modes[t.from].name}, {"to", m.modes[t.to].name}};
    json g = json::object();
    for (std::size_t d = 0; d < t.initial.size(); ++d)
      if (t.initial[d]) g[m.vars[d].name] = json::array({t.initial[d]->lo, t.initial[d]->hi});
    jt["guard"] = g;
    if (t.fixed) jt["fixed"] = true;
    if (!t.required) jt["required"] = false;
    j["transitions"].push_back(jt);
  }
  return j.dump(2) + "\n";
}

}  // namespace scid::hybrid
