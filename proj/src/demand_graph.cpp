#include "reallocation/demand_graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "reallocation/error.hpp"

namespace reallocation {

std::size_t DemandGraph::out_degree(std::size_t vert) const {
  return static_cast<std::size_t>(std::count_if(arcs.begin(), arcs.end(), [vert](const Arc& a) { return a.source == vert; }));
}

std::size_t DemandGraph::in_degree(std::size_t vert) const {
  return static_cast<std::size_t>(std::count_if(arcs.begin(), arcs.end(), [vert](const Arc& a) { return a.sink == vert; }));
}

DemandGraph build_demand_graph(const Instance& inst) {
  DemandGraph g;
  for (const Warehouse& house : inst.warehouses()) g.vertices.push_back(house.id);
  for (const Product& prod : inst.products()) g.arcs.push_back(Arc{prod.id, prod.source, prod.sink});
  return g;
}

BipartiteDoubling double_and_regularize(const DemandGraph& g, std::size_t degree_cap) {
  const std::size_t vcount = g.vertices.size();
  std::vector<std::size_t> out(vcount, 0), in(vcount, 0);
  for (const Arc& a : g.arcs) {
    ++out[a.source];
    ++in[a.sink];
  }
  for (std::size_t vert = 0; vert < vcount; ++vert) {
    if (out[vert] != in[vert]) throw Error(ErrorCode::kUnbalanced, "vertex '" + g.vertices[vert] + "' is unbalanced");
    if (out[vert] > degree_cap) {
      throw Error(ErrorCode::kDegreeExceedsDelta, "vertex '" + g.vertices[vert] + "' has degree above the cap");
    }
  }
  BipartiteDoubling net;
  net.vertices = g.vertices;
  for (std::size_t a = 0; a < g.arcs.size(); ++a) {
    net.edges.push_back(BipartiteEdge{g.arcs[a].id, g.arcs[a].source, g.arcs[a].sink, false, a});
  }
  for (std::size_t vert = 0; vert < vcount; ++vert) {
    for (std::size_t slot = 0; slot < degree_cap - out[vert]; ++slot) {
      net.edges.push_back(BipartiteEdge{"filler:" + g.vertices[vert] + ":" + std::to_string(slot), vert, vert, true, 0});
    }
  }
  return net;
}

namespace {

// Kuhn's augmenting-path matching restricted to edges still `alive`.
class PerfectMatcher {
 public:
  PerfectMatcher(const BipartiteDoubling& net, const std::vector<bool>& alive,
                 const std::vector<std::size_t>& left_order)
      : h_(net), left_order_(left_order) {
    const std::size_t vcount = net.vertices.size();
    adjacency_.resize(vcount);
    for (std::size_t eid = 0; eid < net.edges.size(); ++eid) {
      if (alive[eid]) adjacency_[net.edges[eid].left].push_back(eid);
    }
    match_of_right_.assign(vcount, kNone);
  }

  // Matching edge per left vertex; empty on failure.
  std::vector<std::size_t> solve() {
    for (std::size_t left_vertex : left_order_) {
      if (adjacency_[left_vertex].empty()) continue;
      visited_.assign(h_.vertices.size(), false);
      if (!augment(left_vertex)) return {};
    }
    std::vector<std::size_t> result;
    for (std::size_t vert = 0; vert < match_of_right_.size(); ++vert) {
      if (match_of_right_[vert] != kNone) result.push_back(match_of_right_[vert]);
    }
    return result;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  bool augment(std::size_t left_vertex) {
    for (std::size_t eid : adjacency_[left_vertex]) {
      const std::size_t vert = h_.edges[eid].right;
      if (visited_[vert]) continue;
      visited_[vert] = true;
      if (match_of_right_[vert] == kNone || augment(h_.edges[match_of_right_[vert]].left)) {
        match_of_right_[vert] = eid;
        return true;
      }
    }
    return false;
  }

  const BipartiteDoubling& h_;
  const std::vector<std::size_t>& left_order_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::size_t> match_of_right_;
  std::vector<bool> visited_;
};

}  // namespace

std::vector<Matching> decompose_into_matchings(const BipartiteDoubling& net, std::size_t degree_cap) {
  const std::size_t vcount = net.vertices.size();
  std::vector<std::size_t> left_degree(vcount, 0), right_degree(vcount, 0);
  for (const BipartiteEdge& eid : net.edges) {
    ++left_degree[eid.left];
    ++right_degree[eid.right];
  }
  for (std::size_t vert = 0; vert < vcount; ++vert) {
    if (left_degree[vert] != degree_cap || right_degree[vert] != degree_cap) {
      throw Error(ErrorCode::kNotRegular, "vertex '" + net.vertices[vert] + "' does not have degree delta");
    }
  }
  std::vector<std::size_t> left_order(vcount);
  std::iota(left_order.begin(), left_order.end(), 0);
  std::stable_sort(left_order.begin(), left_order.end(),
                   [&](std::size_t a, std::size_t b) { return net.vertices[a] < net.vertices[b]; });

  std::vector<bool> alive(net.edges.size(), true);
  std::vector<Matching> matchings;
  for (std::size_t round = 0; round < degree_cap; ++round) {
    Matching matching = PerfectMatcher(net, alive, left_order).solve();
    // A regular bipartite multigraph always has a perfect matching.
    if (matching.size() != vcount) throw Error(ErrorCode::kNotRegular, "no perfect matching found");
    std::sort(matching.begin(), matching.end());
    for (std::size_t eid : matching) alive[eid] = false;
    matchings.push_back(std::move(matching));
  }
  return matchings;
}

CycleFamily matching_to_cycle_family(const Matching& matching, const BipartiteDoubling& net) {
  CycleFamily family;
  for (std::size_t eid : matching) {
    if (!net.edges[eid].filler) family.arcs.push_back(net.edges[eid].arc);
  }
  std::sort(family.arcs.begin(), family.arcs.end());
  return family;
}

bool is_cycle_family(const DemandGraph& g, const std::vector<std::size_t>& arcs) {
  std::vector<int> out(g.vertices.size(), 0), in(g.vertices.size(), 0);
  std::vector<bool> used(g.arcs.size(), false);
  for (std::size_t a : arcs) {
    if (a >= g.arcs.size() || used[a]) return false;
    used[a] = true;
    ++out[g.arcs[a].source];
    ++in[g.arcs[a].sink];
  }
  for (std::size_t vert = 0; vert < g.vertices.size(); ++vert) {
    if (out[vert] != in[vert] || out[vert] > 1) return false;
  }
  return true;
}

std::vector<CycleFamily> partition_into_cycle_families(const DemandGraph& g) {
  std::size_t degree_cap = 0;
  for (std::size_t vert = 0; vert < g.vertices.size(); ++vert) degree_cap = std::max(degree_cap, g.out_degree(vert));
  const BipartiteDoubling net = double_and_regularize(g, degree_cap);
  std::vector<CycleFamily> families;
  for (const Matching& perfect : decompose_into_matchings(net, degree_cap)) {
    families.push_back(matching_to_cycle_family(perfect, net));
  }
  return families;
}

std::vector<CycleFamily> partition_into_cycle_families(const Instance& inst) {
  return partition_into_cycle_families(build_demand_graph(inst));
}

std::string to_dot(const DemandGraph& g) {
  std::ostringstream out;
  out << "digraph demand {\n";
  for (const std::string& vert : g.vertices) out << "  \"" << vert << "\";\n";
  for (const Arc& a : g.arcs) {
    out << "  \"" << g.vertices[a.source] << "\" -> \"" << g.vertices[a.sink] << "\" [label=\"" << a.id << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace reallocation
