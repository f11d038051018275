#include "homwalk/io.hpp"

#include <istream>
#include <ostream>

#include "json.hpp"

namespace homwalk::io {

using nlohmann::json;

std::string topology_name(Topology t) { return t == Topology::Line ? "line" : "torus"; }

Topology parse_topology(const std::string& name) {
  if (name == "line") return Topology::Line;
  if (name == "torus") return Topology::Torus;
  throw Error(ErrorCode::InvalidParameter, "unknown topology '" + name + "' (expected line or torus)");
}

std::string to_json(const HeightFunction& f) {
  const GraphSpec& g = f.graph();
  json j;
  j["topology"] = topology_name(g.topology());
  j["n"] = g.n();
  j["d"] = g.d();
  j["values"] = std::vector<int>(f.values().begin(), f.values().end());
  return j.dump();
}

HeightFunction from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidParameter, std::string("bad JSON: ") + e.what());
  }
  try {
    const Topology t = parse_topology(j.at("topology").get<std::string>());
    const int n = j.at("n").get<int>();
    const int d = j.at("d").get<int>();
    const GraphSpec g = t == Topology::Line ? GraphSpec::line(n, d) : GraphSpec::torus(n, d);
    return validate(j.at("values").get<std::vector<int>>(), g);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidParameter, std::string("bad height function object: ") + e.what());
  }
}

void write_jsonl(std::ostream& out, const HeightFunction& f) { out << to_json(f) << '\n'; }

std::vector<HeightFunction> read_jsonl(std::istream& in) {
  std::vector<HeightFunction> out;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(from_json(line));
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace homwalk::io
