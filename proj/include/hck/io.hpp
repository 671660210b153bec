#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "hck/hypergraph.hpp"
#include "hck/pattern.hpp"

namespace hck {

// HG 1 n=<n> sizes=<s1,s2,...> weighted=<0|1>
// e <v1> <v2> ... [w=<int>]
// Throws ParseError.
Hypergraph parse_hypergraph(std::string_view text);
std::string serialize(const Hypergraph& g);

// PART 1 k=<k>
// p <vertex> <partition>
// Every vertex in [0, n) must be listed exactly once.
CircleLayout parse_partition(std::string_view text, std::size_t n);
std::string serialize(const CircleLayout& layout);

// PAT 1 k=<k>
// e <a> <b> ...
PatternGraph parse_pattern(std::string_view text);
std::string serialize(const PatternGraph& h);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view data);

}  // namespace hck
