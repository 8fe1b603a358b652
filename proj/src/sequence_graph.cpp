#include "canids/sequence_graph.hpp"

#include <ostream>
#include <sstream>

#include "canids/errors.hpp"

namespace canids {

MessageSequenceGraph compute_msg(const FrameWindow& window) {
    if (window.frames.size() < 2)
        throw Error(Errc::WindowTooSmall, "a window needs at least 2 frames to form edges");
    MessageSequenceGraph graph;
    graph.window_index = window.index;
    graph.label = window.label;
    for (const auto& frame : window.frames)
        graph.nodes.insert(frame.pid);
    for (std::size_t i = 0; i + 1 < window.frames.size(); ++i) {
        auto key = std::make_pair(window.frames[i].pid, window.frames[i + 1].pid);
        ++graph.edges[key];
    }
    return graph;
}

std::pair<std::vector<double>, std::vector<double>>
edge_vectors(const MessageSequenceGraph& a, const MessageSequenceGraph& b) {
    // Union of edge keys, in the std::map's lexicographic order, so both
    // vectors index the same succession pair at the same position.
    std::vector<double> x, y;
    auto ia = a.edges.begin();
    auto ib = b.edges.begin();
    while (ia != a.edges.end() || ib != b.edges.end()) {
        if (ib == b.edges.end() || (ia != a.edges.end() && ia->first < ib->first)) {
            x.push_back(static_cast<double>(ia->second));
            y.push_back(0.0);
            ++ia;
        } else if (ia == a.edges.end() || ib->first < ia->first) {
            x.push_back(0.0);
            y.push_back(static_cast<double>(ib->second));
            ++ib;
        } else {
            x.push_back(static_cast<double>(ia->second));
            y.push_back(static_cast<double>(ib->second));
            ++ia;
            ++ib;
        }
    }
    return {std::move(x), std::move(y)};
}

std::string to_dot(const MessageSequenceGraph& graph, const std::string& name) {
    std::ostringstream out;
    out << "digraph " << (name.empty() ? "msg" : name) << " {\n";
    for (const auto& node : graph.nodes)
        out << "  \"" << node << "\";\n";
    for (const auto& [key, count] : graph.edges)
        out << "  \"" << key.first << "\" -> \"" << key.second
            << "\" [label=\"" << count << "\"];\n";
    out << "}\n";
    return out.str();
}

} // namespace canids
