#pragma once

#include <stdexcept>
#include <string>

namespace orchid {

// Input text could not be parsed into a hypergraph.
struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

// Generator parameters violate the model's preconditions.
struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A walk measure was requested for a node without neighbors at alpha < 1.
struct IsolatedNodeError : std::runtime_error {
    int node;
    explicit IsolatedNodeError(int node_)
        : std::runtime_error("node " + std::to_string(node_) +
                             " has no neighbors; walk measure undefined for alpha < 1"),
          node(node_) {}
};

// Transport endpoints live in different components.
struct InfiniteCostError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested quantity needs a finite diameter or an unsupported aggregator.
struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mismatched array shapes in the analysis suite.
struct ShapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Feature extraction produced no samples.
struct EmptyFeatureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Internal numerical failure (LP did not converge, cap violated, ...).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace orchid
