#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ach/flat.hpp"

namespace ach {

struct DepthOutcome {
    DepthMap depths;
    bool exceeded = false;
    /// Variable whose depth first passed the bound, when exceeded.
    std::string culprit;
};

/// Least fixpoint of the monotone depth updates: for x =? h(y),
/// depth(y) >= depth(x) + 1; for sums and free applications, each right-side
/// variable is at least as deep as the left. Returns as soon as any value
/// passes `bound`, which keeps the loop finite even when the dependency
/// graph is cyclic. `scan_seed`, when set, randomizes the per-pass equation
/// order (the fixpoint must not depend on it).
DepthOutcome propagate_depths(const std::vector<FlatEq>& eqs, DepthMap start, unsigned bound,
                              std::optional<std::uint64_t> scan_seed = std::nullopt);

/// Largest entry; 0 for an empty map.
unsigned max_val(const DepthMap& depths);

struct GraphEdge {
    std::string from, to;
    std::string label; // "h", "+", or a free symbol name
    auto operator<=>(const GraphEdge&) const = default;
};

struct VarGraph {
    std::set<std::string> vertices;
    std::vector<GraphEdge> edges;
};

/// Dependency graph over the variables of a flattened system: one edge per
/// right-side variable occurrence, labeled with the head symbol. VarVar
/// equations contribute vertices only, and so do constants.
VarGraph build_graph(const std::vector<FlatEq>& eqs);

} // namespace ach
