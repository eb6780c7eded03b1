#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace spinnet {

// Slot `slot` (0, 1, 2 in counterclockwise order) of vertex `vertex`.
struct HalfEdge {
  int vertex = 0;
  int slot = 0;
  friend bool operator==(const HalfEdge&, const HalfEdge&) = default;
};

// Cubic ribbon graph. Strands are indexed [0, num_edges) for vertex edges and
// [num_edges, num_strands) for free loops. The end 0 of an edge is the first
// half-edge of its `edge` line.
class RibbonGraph {
 public:
  RibbonGraph() = default;
  RibbonGraph(std::vector<std::string> vertex_ids, std::vector<std::string> edge_ids,
              std::vector<std::array<HalfEdge, 2>> edge_ends, std::vector<std::string> loop_ids);

  int num_vertices() const { return static_cast<int>(vertex_ids_.size()); }
  int num_edges() const { return static_cast<int>(edge_ends_.size()); }
  int num_free_loops() const { return static_cast<int>(loop_ids_.size()); }
  int num_strands() const { return num_edges() + num_free_loops(); }
  bool is_free_loop(int strand) const { return strand >= num_edges(); }

  HalfEdge end(int edge, int k) const { return edge_ends_[edge][k]; }
  int edge_at(int vertex, int slot) const { return slot_edge_[3 * vertex + slot]; }
  int end_at(int vertex, int slot) const { return slot_end_[3 * vertex + slot]; }

  const std::string& vertex_id(int v) const { return vertex_ids_[v]; }
  const std::string& strand_id(int s) const;
  std::optional<int> find_strand(std::string_view id) const;

  // Boundary components of the ribbon surface of the vertex part.
  int face_count() const;
  // Connected components of the vertex part.
  int component_count() const;
  // Genus summed over components (0 means every component is planar).
  int genus() const;
  // Dimension of the GF(2) cycle space, free loops included.
  int cycle_space_dimension() const;

  // Same graph with the cyclic order at `vertex` reversed.
  RibbonGraph with_flipped_vertex(int vertex) const;

  std::string to_text() const;

 private:
  std::vector<std::string> vertex_ids_;
  std::vector<std::string> edge_ids_;
  std::vector<std::array<HalfEdge, 2>> edge_ends_;
  std::vector<std::string> loop_ids_;
  std::vector<int> slot_edge_;
  std::vector<int> slot_end_;
};

RibbonGraph parse_graph(std::string_view text);
RibbonGraph load_graph(const std::filesystem::path& path);

struct Coloring {
  std::vector<long> colors;

  Coloring() = default;
  explicit Coloring(std::vector<long> c) : colors(std::move(c)) {}
  long operator[](std::size_t i) const { return colors[i]; }
  long& operator[](std::size_t i) { return colors[i]; }
  std::size_t size() const { return colors.size(); }
  long total() const;
  Coloring scaled(long n) const;
  friend bool operator==(const Coloring&, const Coloring&) = default;
};

Coloring parse_coloring(std::string_view text, const RibbonGraph& g);
Coloring load_coloring(const std::filesystem::path& path, const RibbonGraph& g);
std::string to_text(const Coloring& gamma, const RibbonGraph& g);

bool admissible_triple(long a, long b, long c);
bool admissible(const RibbonGraph& g, const Coloring& gamma);
// Colors at the three slots of a vertex, in cyclic order.
std::array<long, 3> vertex_colors(const RibbonGraph& g, const Coloring& gamma, int vertex);

// A 2-regular set of strands, sorted ascending.
struct Curve {
  std::vector<int> strands;
  bool contains(int strand) const;
  friend bool operator==(const Curve&, const Curve&) = default;
  friend auto operator<=>(const Curve&, const Curve&) = default;
};

struct CurveConfig {
  std::vector<long> multiplicity;  // indexed like the curve list it refers to
  long total() const;
  Coloring induced_coloring(const RibbonGraph& g, std::span<const Curve> curve_list) const;
};

inline constexpr std::size_t max_curves = std::size_t{1} << 20;

// All curves including the empty one, lexicographic on strand index lists.
std::vector<Curve> curves(const RibbonGraph& g);

void validate_curve(const RibbonGraph& g, const Curve& c);

// Interleaved chord pairs of a curve system drawn with the given band slot
// order: slot_order[strand] lists the copy indices traversing that strand.
long crossing_count(const RibbonGraph& g, std::span<const Curve> copies,
                    const std::vector<std::vector<int>>& slot_order);
// Slot order by increasing copy index.
std::vector<std::vector<int>> default_slot_order(const RibbonGraph& g,
                                                 std::span<const Curve> copies);
int crossing_parity(const RibbonGraph& g, std::span<const Curve> copies);
// Pairwise parities cp[i][j] for a list of distinct curves.
std::vector<std::vector<int>> crossing_matrix(const RibbonGraph& g, std::span<const Curve> curve_list);

// Replaces edge e1 and e2 (possibly equal) by subdivided copies and joins the
// two new vertices with an extra edge of color 0.
struct ColoredGraph {
  RibbonGraph graph;
  Coloring coloring;
};
ColoredGraph insert_zero_edge(const RibbonGraph& g, const Coloring& gamma, int e1, int e2);

}  // namespace spinnet
