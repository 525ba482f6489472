#include "lll/witness.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "lll/errors.hpp"

namespace lll {

int WitnessTree::max_depth() const {
  int d = 0;
  for (const auto& n : nodes) d = std::max(d, n.depth);
  return d;
}

namespace {

bool is_candidate(int label, int node_label, const DependencyGraph& graph) {
  if (label == node_label) return true;
  const auto& nbrs = graph.adjacency[node_label];
  return std::binary_search(nbrs.begin(), nbrs.end(), label);
}

}  // namespace

WitnessTree build_witness_tree(const ResampleLog& log, std::size_t t,
                               const DependencyGraph& graph) {
  if (t >= log.steps.size()) throw std::invalid_argument("step index past end of log");

  WitnessTree tree;
  tree.nodes.push_back(WitnessNode{log.steps[t], -1, 0, {}});

  for (std::size_t s = t; s-- > 0;) {
    int label = log.steps[s];
    int best = -1;
    for (int u = 0; u < tree.size(); ++u) {
      if (!is_candidate(label, tree.nodes[u].label, graph)) continue;
      if (best == -1 || tree.nodes[u].depth > tree.nodes[best].depth) best = u;
    }
    if (best == -1) continue;
    int idx = tree.size();
    tree.nodes.push_back(WitnessNode{label, best, tree.nodes[best].depth + 1, {}});
    tree.nodes[best].children.push_back(idx);
  }
  return tree;
}

bool is_proper(const WitnessTree& tree, const DependencyGraph& graph,
               const std::vector<int>* root_candidates) {
  for (int u = 0; u < tree.size(); ++u) {
    const auto& node = tree.nodes[u];
    std::set<int> seen;
    for (int c : node.children) {
      int label = tree.nodes[c].label;
      if (!seen.insert(label).second) return false;
      if (u == 0 && root_candidates) {
        if (label == node.label) return false;
        if (!std::binary_search(root_candidates->begin(), root_candidates->end(), label))
          return false;
      } else {
        if (!is_candidate(label, node.label, graph)) return false;
      }
    }
  }
  return true;
}

double tree_probability(const WitnessTree& tree, const EventSet& events) {
  double log_sum = 0.0;
  for (const auto& n : tree.nodes) log_sum += std::log(events.events[n.label].prob);
  return std::exp(log_sum);
}

WitnessTree galton_watson_sample(int root_label, const DependencyGraph& graph,
                                 const std::vector<double>& x, Rng& rng,
                                 const GwOptions& opts) {
  WitnessTree tree;
  tree.nodes.push_back(WitnessNode{root_label, -1, 0, {}});

  // breadth-first growth; candidate order is label-sorted so runs replay
  std::vector<int> frontier{0};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int u : frontier) {
      if (tree.nodes[u].depth >= opts.depth_cap) {
        if (opts.truncate) continue;
        throw DepthCapExceeded("galton-watson tree reached the depth cap");
      }
      int label = tree.nodes[u].label;
      auto try_child = [&](int cand) {
        double draw = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (draw < x[cand]) {
          int idx = tree.size();
          tree.nodes.push_back(WitnessNode{cand, u, tree.nodes[u].depth + 1, {}});
          tree.nodes[u].children.push_back(idx);
          next.push_back(idx);
        }
      };
      const auto& nbrs = graph.adjacency[label];
      std::size_t i = 0;
      for (; i < nbrs.size() && nbrs[i] < label; ++i) try_child(nbrs[i]);
      try_child(label);
      for (; i < nbrs.size(); ++i) try_child(nbrs[i]);
    }
    frontier = std::move(next);
  }
  return tree;
}

namespace {

std::string canonical_subtree(const WitnessTree& tree, int u) {
  std::vector<std::string> parts;
  for (int c : tree.nodes[u].children) parts.push_back(canonical_subtree(tree, c));
  std::sort(parts.begin(), parts.end());
  std::string out = "(" + std::to_string(tree.nodes[u].label);
  for (const auto& p : parts) out += p;
  out += ")";
  return out;
}

}  // namespace

std::string canonical_key(const WitnessTree& tree) {
  if (tree.nodes.empty()) return "";
  return canonical_subtree(tree, 0);
}

bool tree_occurs(const WitnessTree& tree, const ResampleLog& log, const DependencyGraph& graph) {
  std::string key = canonical_key(tree);
  int root = tree.root_label();
  for (std::size_t t = 0; t < log.steps.size(); ++t) {
    if (log.steps[t] != root) continue;
    if (canonical_key(build_witness_tree(log, t, graph)) == key) return true;
  }
  return false;
}

}  // namespace lll
