#pragma once

#include <optional>
#include <string>
#include <variant>

#include "recolor/reductions.hpp"

namespace recolor {

inline constexpr int kFormatVersion = 1;

/// A repair instance on disk, with its reduction trace when it came from a
/// generator.
struct RepairFile {
    RepairInstance instance;
    std::optional<ReductionTrace> trace;
};

using InstanceFile = std::variant<RepairFile, PrExtInstance, IndSetInstance, Cnf3Batch>;

std::string kind_of(const InstanceFile& file);

/// Byte-stable serialization: fixed key order, edges sorted lexicographically.
std::string save_to_string(const InstanceFile& file);
void save(const InstanceFile& file, const std::string& path);

/// Parses and validates; ParseError carries path:line diagnostics,
/// ValidationError names the violated invariant.
InstanceFile load_from_string(const std::string& text, const std::string& origin = "<string>");
InstanceFile load(const std::string& path);

/// One move per line: "R v c" or "S u v".
std::string certificate_to_string(const Certificate& cert);
Certificate certificate_from_string(const std::string& text);

/// Graph structure only, for interop.
std::string to_dimacs(const ColoredGraph& g);

} // namespace recolor
