#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "reallocation/core_model.hpp"

namespace reallocation {

struct Arc {
  std::string id;
  std::size_t source = 0;
  std::size_t sink = 0;
};

// Directed multigraph with one arc per product.
struct DemandGraph {
  std::vector<std::string> vertices;
  std::vector<Arc> arcs;

  std::size_t out_degree(std::size_t vert) const;
  std::size_t in_degree(std::size_t vert) const;
};

DemandGraph build_demand_graph(const Instance& inst);

// Edge from left copy `left` to right copy `right`. Non-filler edges carry the
// index of the arc they come from.
struct BipartiteEdge {
  std::string id;
  std::size_t left = 0;
  std::size_t right = 0;
  bool filler = false;
  std::size_t arc = 0;
};

// Left and right vertex i are the two copies of demand-graph vertex i.
struct BipartiteDoubling {
  std::vector<std::string> vertices;
  std::vector<BipartiteEdge> edges;
};

// Throws kUnbalanced when some vertex has different in- and out-degree and
// kDegreeExceedsDelta when some degree exceeds `degree_cap`.
BipartiteDoubling double_and_regularize(const DemandGraph& g, std::size_t degree_cap);

// Indices into BipartiteDoubling::edges.
using Matching = std::vector<std::size_t>;

// Splits a degree_cap-regular bipartite multigraph into degree_cap perfect matchings.
// Throws kNotRegular.
std::vector<Matching> decompose_into_matchings(const BipartiteDoubling& net, std::size_t degree_cap);

// Arc indices of the demand graph; for graphs built from an instance these are
// product indices.
struct CycleFamily {
  std::vector<std::size_t> arcs;
};

CycleFamily matching_to_cycle_family(const Matching& matching, const BipartiteDoubling& net);

// In-degree equals out-degree and is at most one at every vertex.
bool is_cycle_family(const DemandGraph& g, const std::vector<std::size_t>& arcs);

// Requires |P+(w)| = |P-(w)| everywhere (kUnbalanced). Returns max_w |P+(w)| families.
std::vector<CycleFamily> partition_into_cycle_families(const DemandGraph& g);
std::vector<CycleFamily> partition_into_cycle_families(const Instance& inst);

std::string to_dot(const DemandGraph& g);

}  // namespace reallocation
