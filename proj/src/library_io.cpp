#include <fstream>
#include <sstream>

#include <json.hpp>

#include "scid/cfg.hpp"
#include "scid/synth.hpp"

namespace scid::synth {

ComponentLibrary parse_library(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    const auto names = j.at("components").get<std::vector<std::string>>();
    ComponentLibrary lib = make_library(names, j.value("inputs", std::size_t{1}), j.value("outputs", std::size_t{1}),
                                        j.value("width", 8u), j.value("outputs_from_lines", false));
    lib.distinct_operands = j.value("distinct_operands", false);
    return lib;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("library JSON: ") + e.what());
  }
}

ComponentLibrary load_library(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_library(ss.str());
}

Oracle oracle_from_program(const frontend::Program& p) {
  Oracle o;
  const auto& entry = p.entry();
  o.name = entry.name;
  o.inputs = entry.params.size();
  o.outputs = p.output_count();
  o.width = p.width;
  o.input_names = entry.params;
  o.fn = [p](std::span<const std::uint64_t> in) { return frontend::interpret(p, in); };
  o.symbolic = frontend::symbolic_outputs(frontend::build_dag(p));
  return o;
}

std::vector<std::string> builtin_oracle_names() {
  return {"identity", "xor", "and", "or", "add", "sub", "interchange", "multiply45"};
}

Oracle builtin_oracle(const std::string& name, unsigned width) {
  Oracle o;
  o.name = name;
  o.width = width;
  const std::uint64_t m = bv::mask(width);
  const bv::Term x = bv::var("x0", width);
  const bv::Term y = bv::var("x1", width);
  auto binary = [&](std::function<std::uint64_t(std::uint64_t, std::uint64_t)> f, bv::Term t) {
    o.inputs = 2;
    o.fn = [f, m](std::span<const std::uint64_t> in) { return Values{f(in[0] & m, in[1] & m) & m}; };
    o.symbolic = std::vector<bv::Term>{std::move(t)};
  };
  if (name == "identity") {
    o.inputs = 1;
    o.fn = [m](std::span<const std::uint64_t> in) { return Values{in[0] & m}; };
    o.symbolic = std::vector<bv::Term>{x};
  } else if (name == "xor") {
    binary([](auto a, auto b) { return a ^ b; }, x ^ y);
  } else if (name == "and") {
    binary([](auto a, auto b) { return a & b; }, x & y);
  } else if (name == "or") {
    binary([](auto a, auto b) { return a | b; }, x | y);
  } else if (name == "add") {
    binary([](auto a, auto b) { return a + b; }, x + y);
  } else if (name == "sub") {
    binary([](auto a, auto b) { return a - b; }, x - y);
  } else if (name == "interchange") {
    o.inputs = 2;
    o.outputs = 2;
    o.fn = [m](std::span<const std::uint64_t> in) { return Values{in[1] & m, in[0] & m}; };
    o.symbolic = std::vector<bv::Term>{y, x};
  } else if (name == "multiply45") {
    o.inputs = 1;
    o.fn = [m](std::span<const std::uint64_t> in) { return Values{(in[0] * 45) & m}; };
    o.symbolic = std::vector<bv::Term>{x * bv::constant(45, width)};
  } else {
    throw std::invalid_argument("unknown builtin oracle '" + name + "'");
  }
  for (std::size_t i = 0; i < o.inputs; ++i) o.input_names.push_back("x" + std::to_string(i));
  return o;
}

}  // namespace scid::synth
