#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "canids/frame.hpp"

namespace canids {

// Directed multigraph of immediate PID successions within one window.
// edges[(a, b)] counts how often a frame with pid `a` was immediately
// followed by one with pid `b`; self-successions count like any other.
// The counts always sum to frames-in-window - 1.
struct MessageSequenceGraph {
    std::map<std::pair<std::string, std::string>, std::uint64_t> edges;
    std::set<std::string> nodes;
    std::size_t window_index = 0;
    std::optional<Label> label; // copied from the source window
};

// Build the succession graph of a window (needs >= 2 frames).
MessageSequenceGraph compute_msg(const FrameWindow& window);

// Align two graphs on the union of their edge keys (sorted lexicographically
// by (pid_prev, pid_next)) and return the two count vectors, zero-filled
// where a graph lacks an edge.
std::pair<std::vector<double>, std::vector<double>>
edge_vectors(const MessageSequenceGraph& a, const MessageSequenceGraph& b);

// Graphviz rendering, deterministic order.
std::string to_dot(const MessageSequenceGraph& g, const std::string& name = "msg");

} // namespace canids
