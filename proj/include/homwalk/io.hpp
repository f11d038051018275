#pragma once

// JSON form of height functions: {"topology","n","d","values"}, one object
// per line in sample files.

#include <iosfwd>
#include <string>
#include <vector>

#include "homwalk/core.hpp"

namespace homwalk::io {

std::string to_json(const HeightFunction& f);
/// Parses and validates; throws InvalidParameter on malformed JSON or fields
/// and the usual validation errors on a bad function.
HeightFunction from_json(const std::string& text);

void write_jsonl(std::ostream& out, const HeightFunction& f);
/// Reads every non-blank line. Throws InvalidParameter with the line number
/// on the first bad line.
std::vector<HeightFunction> read_jsonl(std::istream& in);

std::string topology_name(Topology t);
/// "line" or "torus"; throws InvalidParameter otherwise.
Topology parse_topology(const std::string& name);

}  // namespace homwalk::io
