#pragma once

#include <string>
#include <vector>

#include "fekete/rational.hpp"
#include "fekete/seq.hpp"

namespace fekete {

// Hard cap on graph construction, sized so the dense bit adjacency stays in
// the tens of megabytes.  The much smaller independence-solver cap is a
// separate, overridable parameter.
constexpr Index kGraphSizeCap = 20000;
constexpr Index kIndependenceCap = 200;

// Undirected graph without self-loops, adjacency kept as one bit row per
// vertex.
class Graph {
 public:
  Graph() = default;
  explicit Graph(Index vertex_count);

  Index size() const { return n_; }
  void add_edge(Index u, Index v);
  bool adjacent(Index u, Index v) const;
  Index degree(Index v) const;
  Index edge_count() const;

 private:
  void check_vertex(Index v) const;

  Index n_ = 0;
  Index words_ = 0;
  std::vector<unsigned long long> bits_;
};

Graph make_edgeless(Index n);
Graph make_complete(Index n);
Graph make_cycle(Index n);  // n >= 3

// Text format: first line the vertex count, then one "u v" edge per line,
// 0-based.  Blank lines are ignored.
Graph parse_graph(const std::string& text);

// Row-stochastic rational matrix: rows are channel inputs, columns outputs.
struct ChannelMatrix {
  std::vector<std::vector<Rational>> rows;
};

// Rectangular, entries >= 0, every row sums to exactly 1.
void validate_channel(const ChannelMatrix& w);

// Vertices are the inputs; two distinct inputs are adjacent when some output
// column is positive in both rows, i.e. when the receiver could confuse
// them.
Graph confusability_graph(const ChannelMatrix& w);

// Vertices are pairs (g, h) numbered g * |H| + h; distinct pairs are
// adjacent when both coordinates are equal-or-adjacent.
Graph strong_product(const Graph& g, const Graph& h);

// Exact maximum independent set size.  Branch and bound over vertices in
// descending-degree order, pruned with |chosen| + |candidates| <= best.
Index independence_number(const Graph& g, Index vertex_cap = kIndependenceCap);

// One row per strong power: alpha_n = alpha(G^n) exactly, plus a display
// rendering of alpha_n^(1/n) truncated to six decimal digits (the root never
// enters any computation).
struct CapacityBound {
  Index power = 0;
  Index alpha = 0;
  std::string root_decimal;
};

struct CapacityReport {
  std::vector<CapacityBound> bounds;
  bool supermultiplicative = false;  // alpha_{l+k} >= alpha_l * alpha_k
                                     // for every computed split
};

CapacityReport capacity_lower_bounds(const Graph& g, Index max_power,
                                     Index vertex_cap = kIndependenceCap);

}  // namespace fekete
