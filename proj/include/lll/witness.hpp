#pragma once

#include <string>
#include <vector>

#include "lll/mt.hpp"

namespace lll {

struct WitnessNode {
  int label = -1;
  int parent = -1;
  int depth = 0;
  std::vector<int> children;
};

// Rooted event-labeled tree; node 0 is the root.
struct WitnessTree {
  std::vector<WitnessNode> nodes;

  int size() const { return static_cast<int>(nodes.size()); }
  int root_label() const { return nodes.empty() ? -1 : nodes[0].label; }
  int max_depth() const;
};

// Backward construction from a resample log: walking s = t-1 .. 0, C(s) is
// attached below the deepest node whose label lies in G(C(s)) u {C(s)}, and
// skipped when no such node exists. Ties on depth go to the earliest-created
// node.
WitnessTree build_witness_tree(const ResampleLog& log, std::size_t t,
                               const DependencyGraph& graph);

// Proper: children of u carry distinct labels, each from G(label(u)) u {label(u)}.
// When root_candidates is given the root acts as an external monitor: its
// children must come from that set and never repeat the root label.
bool is_proper(const WitnessTree& tree, const DependencyGraph& graph,
               const std::vector<int>* root_candidates = nullptr);

// prod over all nodes of P(label(v)), accumulated in log space.
double tree_probability(const WitnessTree& tree, const EventSet& events);

struct GwOptions {
  int depth_cap = 64;
  bool truncate = false;  // truncate at the cap instead of throwing
};

// Galton-Watson sampler: every vertex independently spawns each candidate
// child B in G(label) u {label} with probability x(B).
WitnessTree galton_watson_sample(int root_label, const DependencyGraph& graph,
                                 const std::vector<double>& x, Rng& rng,
                                 const GwOptions& opts = {});

// Canonical serialization; equal strings iff equal unordered rooted trees.
std::string canonical_key(const WitnessTree& tree);

// True iff some step t of the log yields exactly this tree.
bool tree_occurs(const WitnessTree& tree, const ResampleLog& log, const DependencyGraph& graph);

}  // namespace lll
