#pragma once

#include <cstdint>
#include <random>

#include "recolor/io.hpp"

namespace recolor {

/// Deterministic next integer in 0..bound-1 (plain modulo keeps the streams
/// identical across platforms).
std::uint64_t rng_below(std::mt19937_64& rng, std::uint64_t bound);

/// The triangle-with-pendants instance whose repair optima separate the two
/// metrics: three recolorings but only two swaps.
RepairFile separating_example();

RepairFile random_repair(std::mt19937_64& rng, int n, int r, int edge_percent, Variant variant,
                         int budget);

PrExtInstance random_prext(std::mt19937_64& rng, int n, int edge_percent, int precolor_percent);

/// Random tree with precolored leaves: bipartite, planar, every precolored
/// vertex of degree 1. Suitable input for the planar promise generators.
PrExtInstance random_planar_ready_prext(std::mt19937_64& rng, int n);

IndSetInstance random_indset(std::mt19937_64& rng, int n, int edge_percent, int k);

Cnf3Batch random_cnf3batch(std::mt19937_64& rng, int t, int vars, int clauses);

} // namespace recolor
