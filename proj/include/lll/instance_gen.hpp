#pragma once

#include <cstdint>
#include <vector>

#include "lll/maxsat.hpp"
#include "lll/model.hpp"
#include "lll/ugraph.hpp"

namespace lll {

struct GeneratedInstance {
  VariableSpace space;
  EventSet events;
  std::vector<double> x;
};

struct LllGenOptions {
  int n_vars = 6;
  int m_events = 8;
  int max_domain = 2;
  int max_footprint = 3;
  double margin = 0.25;        // events get prob <= (1 - margin) * LLL rhs
  bool near_tight_clique = false;  // one variable shared by many small-x events
  int pad_domain = 4;          // domain of private padding variables
  int max_total_vars = -1;     // reject attempts that need more variables
};

// Threshold events with exactly computable probabilities, built so that
// check_lll passes with slack and delta <= 1/2.
GeneratedInstance random_lll_instance(const LllGenOptions& opts, Rng& rng);

// Uniform random k-CNF; when max_degree >= 0, clauses that would push any
// clause past the degree cap are redrawn.
maxsat::CnfFormula random_kcnf(int k, int n_vars, int m, Rng& rng, int max_degree = -1);

// Uniform random graph with a hard per-vertex degree cap.
Graph random_graph_max_degree(int n, int m, int max_degree, Rng& rng);

}  // namespace lll
