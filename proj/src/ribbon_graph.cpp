#include "spinnet/ribbon_graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "spinnet/errors.hpp"

namespace spinnet {

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<int> parent_;
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

std::string strip_comment(std::string line) {
  if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
  return line;
}

}  // namespace

RibbonGraph::RibbonGraph(std::vector<std::string> vertex_ids, std::vector<std::string> edge_ids,
                         std::vector<std::array<HalfEdge, 2>> edge_ends,
                         std::vector<std::string> loop_ids)
    : vertex_ids_(std::move(vertex_ids)),
      edge_ids_(std::move(edge_ids)),
      edge_ends_(std::move(edge_ends)),
      loop_ids_(std::move(loop_ids)) {
  if (edge_ids_.size() != edge_ends_.size())
    throw ParseError("edge id count does not match edge count");
  const int V = num_vertices();
  slot_edge_.assign(3 * V, -1);
  slot_end_.assign(3 * V, -1);
  for (int e = 0; e < num_edges(); ++e) {
    for (int k = 0; k < 2; ++k) {
      const HalfEdge h = edge_ends_[e][k];
      if (h.vertex < 0 || h.vertex >= V || h.slot < 0 || h.slot > 2)
        throw ParseError("edge " + edge_ids_[e] + " refers to a missing vertex slot");
      const int idx = 3 * h.vertex + h.slot;
      if (slot_edge_[idx] != -1)
        throw ParseError("half-edge of vertex " + vertex_ids_[h.vertex] + " used twice");
      slot_edge_[idx] = e;
      slot_end_[idx] = k;
    }
  }
  for (int i = 0; i < 3 * V; ++i)
    if (slot_edge_[i] == -1)
      throw ParseError("dangling half-edge at vertex " + vertex_ids_[i / 3]);
}

const std::string& RibbonGraph::strand_id(int s) const {
  return s < num_edges() ? edge_ids_[s] : loop_ids_[s - num_edges()];
}

std::optional<int> RibbonGraph::find_strand(std::string_view id) const {
  for (int s = 0; s < num_strands(); ++s)
    if (strand_id(s) == id) return s;
  return std::nullopt;
}

int RibbonGraph::face_count() const {
  const int H = 3 * num_vertices();
  std::vector<char> seen(H, 0);
  int faces = 0;
  for (int start = 0; start < H; ++start) {
    if (seen[start]) continue;
    ++faces;
    for (int h = start; !seen[h];) {
      seen[h] = 1;
      const HalfEdge other = end(slot_edge_[h], 1 - slot_end_[h]);
      h = 3 * other.vertex + (other.slot + 1) % 3;
    }
  }
  return faces;
}

int RibbonGraph::component_count() const {
  UnionFind uf(num_vertices());
  int c = num_vertices();
  for (const auto& ends : edge_ends_)
    if (uf.unite(ends[0].vertex, ends[1].vertex)) --c;
  return c;
}

int RibbonGraph::genus() const {
  return (2 * component_count() - num_vertices() + num_edges() - face_count()) / 2;
}

int RibbonGraph::cycle_space_dimension() const {
  return num_edges() - num_vertices() + component_count() + num_free_loops();
}

RibbonGraph RibbonGraph::with_flipped_vertex(int vertex) const {
  auto ends = edge_ends_;
  for (auto& pair : ends)
    for (auto& h : pair)
      if (h.vertex == vertex && h.slot != 0) h.slot = 3 - h.slot;
  return RibbonGraph(vertex_ids_, edge_ids_, std::move(ends), loop_ids_);
}

std::string RibbonGraph::to_text() const {
  std::ostringstream os;
  auto he = [](int v, int s) { return "h" + std::to_string(3 * v + s); };
  for (int v = 0; v < num_vertices(); ++v)
    os << "vertex " << vertex_ids_[v] << ": " << he(v, 0) << ' ' << he(v, 1) << ' ' << he(v, 2)
       << '\n';
  for (int e = 0; e < num_edges(); ++e)
    os << "edge " << edge_ids_[e] << ": " << he(edge_ends_[e][0].vertex, edge_ends_[e][0].slot)
       << ' ' << he(edge_ends_[e][1].vertex, edge_ends_[e][1].slot) << '\n';
  for (const auto& l : loop_ids_) os << "freeloop " << l << '\n';
  return os.str();
}

RibbonGraph parse_graph(std::string_view text) {
  std::vector<std::string> vertex_ids, edge_ids, loop_ids;
  std::vector<std::array<HalfEdge, 2>> edge_ends;
  std::map<std::string, HalfEdge> half_edges;
  std::set<std::string> strand_names, vertex_names;
  std::vector<std::pair<int, std::array<std::string, 2>>> pending_edges;

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw ParseError("line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = strip_comment(raw);
    if (auto pos = line.find(':'); pos != std::string::npos) line[pos] = ' ';
    const auto tok = tokenize(line);
    if (tok.empty()) continue;
    if (tok[0] == "vertex") {
      if (tok.size() < 2) fail("vertex without id");
      if (tok.size() != 5)
        fail("vertex arity: vertex " + tok[1] + " lists " + std::to_string(tok.size() - 2) +
             " half-edges, expected 3");
      if (!vertex_names.insert(tok[1]).second) fail("duplicate vertex id " + tok[1]);
      const int v = static_cast<int>(vertex_ids.size());
      vertex_ids.push_back(tok[1]);
      for (int s = 0; s < 3; ++s)
        if (!half_edges.emplace(tok[2 + s], HalfEdge{v, s}).second)
          fail("duplicate half-edge id " + tok[2 + s]);
    } else if (tok[0] == "edge") {
      if (tok.size() != 4) fail("edge needs an id and exactly 2 half-edges");
      if (!strand_names.insert(tok[1]).second) fail("duplicate edge id " + tok[1]);
      if (tok[2] == tok[3]) fail("edge " + tok[1] + " repeats half-edge " + tok[2]);
      edge_ids.push_back(tok[1]);
      pending_edges.push_back({line_no, {tok[2], tok[3]}});
    } else if (tok[0] == "freeloop") {
      if (tok.size() != 2) fail("freeloop needs exactly one id");
      if (!strand_names.insert(tok[1]).second) fail("duplicate id " + tok[1]);
      loop_ids.push_back(tok[1]);
    } else {
      fail("unknown record '" + tok[0] + "'");
    }
  }
  std::set<std::string> used;
  for (const auto& [ln, names] : pending_edges) {
    line_no = ln;
    std::array<HalfEdge, 2> ends;
    for (int k = 0; k < 2; ++k) {
      auto it = half_edges.find(names[k]);
      if (it == half_edges.end()) fail("dangling half-edge " + names[k] + " (no vertex lists it)");
      if (!used.insert(names[k]).second) fail("half-edge " + names[k] + " used by two edges");
      ends[k] = it->second;
    }
    edge_ends.push_back(ends);
  }
  for (const auto& [name, h] : half_edges)
    if (!used.count(name))
      throw ParseError("dangling half-edge " + name + " at vertex " + vertex_ids[h.vertex] +
                       " (no edge uses it)");
  return RibbonGraph(std::move(vertex_ids), std::move(edge_ids), std::move(edge_ends),
                     std::move(loop_ids));
}

RibbonGraph load_graph(const std::filesystem::path& path) { return parse_graph(read_file(path)); }

long Coloring::total() const { return std::accumulate(colors.begin(), colors.end(), 0L); }

Coloring Coloring::scaled(long n) const {
  Coloring r = *this;
  for (auto& c : r.colors) c *= n;
  return r;
}

Coloring parse_coloring(std::string_view text, const RibbonGraph& g) {
  std::vector<long> colors(g.num_strands(), -1);
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto tok = tokenize(strip_comment(raw));
    if (tok.empty()) continue;
    const std::string where = "coloring line " + std::to_string(line_no) + ": ";
    if (tok.size() != 2) throw ParseError(where + "expected '<edge id> <color>'");
    const auto s = g.find_strand(tok[0]);
    if (!s) throw ParseError(where + "unknown edge " + tok[0]);
    long c = 0;
    try {
      std::size_t used = 0;
      c = std::stol(tok[1], &used);
      if (used != tok[1].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError(where + "bad color " + tok[1]);
    }
    if (c < 0) throw ParseError(where + "negative color");
    if (colors[*s] != -1) throw ParseError(where + "edge " + tok[0] + " colored twice");
    colors[*s] = c;
  }
  for (int s = 0; s < g.num_strands(); ++s)
    if (colors[s] == -1) throw ParseError("coloring misses edge " + g.strand_id(s));
  return Coloring(std::move(colors));
}

Coloring load_coloring(const std::filesystem::path& path, const RibbonGraph& g) {
  return parse_coloring(read_file(path), g);
}

std::string to_text(const Coloring& gamma, const RibbonGraph& g) {
  std::ostringstream os;
  for (int s = 0; s < g.num_strands(); ++s) os << g.strand_id(s) << ' ' << gamma[s] << '\n';
  return os.str();
}

bool admissible_triple(long a, long b, long c) {
  if (a < 0 || b < 0 || c < 0) return false;
  if ((a + b + c) % 2 != 0) return false;
  return a <= b + c && b <= a + c && c <= a + b;
}

std::array<long, 3> vertex_colors(const RibbonGraph& g, const Coloring& gamma, int vertex) {
  return {gamma[g.edge_at(vertex, 0)], gamma[g.edge_at(vertex, 1)], gamma[g.edge_at(vertex, 2)]};
}

bool admissible(const RibbonGraph& g, const Coloring& gamma) {
  for (int s = 0; s < g.num_strands(); ++s)
    if (gamma[s] < 0) return false;
  for (int v = 0; v < g.num_vertices(); ++v) {
    const auto [a, b, c] = vertex_colors(g, gamma, v);
    if (!admissible_triple(a, b, c)) return false;
  }
  return true;
}

bool Curve::contains(int strand) const {
  return std::binary_search(strands.begin(), strands.end(), strand);
}

long CurveConfig::total() const {
  return std::accumulate(multiplicity.begin(), multiplicity.end(), 0L);
}

Coloring CurveConfig::induced_coloring(const RibbonGraph& g,
                                       std::span<const Curve> curve_list) const {
  std::vector<long> colors(g.num_strands(), 0);
  for (std::size_t i = 0; i < curve_list.size(); ++i)
    for (int s : curve_list[i].strands) colors[s] += multiplicity[i];
  return Coloring(std::move(colors));
}

std::vector<Curve> curves(const RibbonGraph& g) {
  const int E = g.num_edges();
  const int V = g.num_vertices();
  std::vector<int> last_edge(V, -1);
  for (int e = 0; e < E; ++e)
    for (int k = 0; k < 2; ++k) last_edge[g.end(e, k).vertex] = e;

  std::vector<std::vector<int>> vertex_sets;
  std::vector<int> degree(V, 0);
  std::vector<int> chosen;
  const std::size_t loop_factor = std::size_t{1} << std::min(g.num_free_loops(), 21);

  auto closes_ok = [&](int e) {
    for (int k = 0; k < 2; ++k) {
      const int v = g.end(e, k).vertex;
      if (degree[v] > 2) return false;
      if (last_edge[v] == e && degree[v] == 1) return false;
    }
    return true;
  };
  auto recurse = [&](auto&& self, int e) -> void {
    if (e == E) {
      if ((vertex_sets.size() + 1) * loop_factor > max_curves)
        throw CapacityError("more than 2^20 curves");
      vertex_sets.push_back(chosen);
      return;
    }
    if (closes_ok(e)) self(self, e + 1);
    chosen.push_back(e);
    ++degree[g.end(e, 0).vertex];
    ++degree[g.end(e, 1).vertex];
    if (closes_ok(e)) self(self, e + 1);
    --degree[g.end(e, 0).vertex];
    --degree[g.end(e, 1).vertex];
    chosen.pop_back();
  };
  recurse(recurse, 0);

  std::vector<Curve> out;
  const int L = g.num_free_loops();
  for (const auto& base : vertex_sets) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << L); ++mask) {
      Curve c{base};
      for (int l = 0; l < L; ++l)
        if (mask >> l & 1) c.strands.push_back(E + l);
      out.push_back(std::move(c));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void validate_curve(const RibbonGraph& g, const Curve& c) {
  std::vector<int> degree(g.num_vertices(), 0);
  for (std::size_t i = 0; i < c.strands.size(); ++i) {
    const int s = c.strands[i];
    if (s < 0 || s >= g.num_strands()) throw ParseError("invalid curve: unknown strand index");
    if (i > 0 && c.strands[i - 1] >= s)
      throw ParseError("invalid curve: strands must be sorted and distinct");
    if (g.is_free_loop(s)) continue;
    ++degree[g.end(s, 0).vertex];
    ++degree[g.end(s, 1).vertex];
  }
  for (int v = 0; v < g.num_vertices(); ++v)
    if (degree[v] != 0 && degree[v] != 2)
      throw ParseError("invalid curve: vertex " + g.vertex_id(v) + " has degree " +
                       std::to_string(degree[v]));
}

std::vector<std::vector<int>> default_slot_order(const RibbonGraph& g,
                                                 std::span<const Curve> copies) {
  std::vector<std::vector<int>> order(g.num_strands());
  for (std::size_t i = 0; i < copies.size(); ++i)
    for (int s : copies[i].strands) order[s].push_back(static_cast<int>(i));
  return order;
}

long crossing_count(const RibbonGraph& g, std::span<const Curve> copies,
                    const std::vector<std::vector<int>>& slot_order) {
  for (const auto& c : copies) validate_curve(g, c);
  const int E = g.num_edges();
  // slot_of[s][copy] = position of the copy in band s
  std::vector<std::vector<int>> slot_of(E);
  for (int s = 0; s < E; ++s) {
    slot_of[s].assign(copies.size(), -1);
    for (std::size_t j = 0; j < slot_order[s].size(); ++j) slot_of[s][slot_order[s][j]] = j;
  }
  for (std::size_t i = 0; i < copies.size(); ++i)
    for (int s : copies[i].strands)
      if (s < E && slot_of[s][i] < 0)
        throw ParseError("slot order omits a copy traversing " + g.strand_id(s));

  long count = 0;
  const long stride = static_cast<long>(copies.size()) + 1;
  std::vector<std::array<long, 2>> chords;
  for (int v = 0; v < g.num_vertices(); ++v) {
    chords.clear();
    for (std::size_t i = 0; i < copies.size(); ++i) {
      std::array<long, 2> chord{};
      int found = 0;
      for (int slot = 0; slot < 3; ++slot) {
        const int e = g.edge_at(v, slot);
        if (!copies[i].contains(e)) continue;
        const long n = static_cast<long>(slot_order[e].size());
        const long j = slot_of[e][i];
        const long pos = g.end_at(v, slot) == 0 ? j : n - 1 - j;
        chord[found++] = slot * stride + pos;
      }
      if (found == 2) chords.push_back({std::min(chord[0], chord[1]), std::max(chord[0], chord[1])});
    }
    for (std::size_t x = 0; x < chords.size(); ++x)
      for (std::size_t y = x + 1; y < chords.size(); ++y) {
        const auto& p = chords[x];
        const auto& q = chords[y];
        if ((p[0] < q[0] && q[0] < p[1] && p[1] < q[1]) ||
            (q[0] < p[0] && p[0] < q[1] && q[1] < p[1]))
          ++count;
      }
  }
  return count;
}

int crossing_parity(const RibbonGraph& g, std::span<const Curve> copies) {
  return static_cast<int>(crossing_count(g, copies, default_slot_order(g, copies)) % 2);
}

std::vector<std::vector<int>> crossing_matrix(const RibbonGraph& g,
                                              std::span<const Curve> curve_list) {
  const std::size_t n = curve_list.size();
  std::vector<std::vector<int>> cp(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::array<Curve, 2> pair{curve_list[i], curve_list[j]};
      cp[i][j] = cp[j][i] = crossing_parity(g, pair);
    }
  return cp;
}

ColoredGraph insert_zero_edge(const RibbonGraph& g, const Coloring& gamma, int e1, int e2) {
  const int V = g.num_vertices();
  const int E = g.num_edges();
  if (e1 < 0 || e1 >= E || e2 < 0 || e2 >= E) throw ParseError("insert_zero_edge: bad edge");
  std::vector<std::string> vids;
  for (int v = 0; v < V; ++v) vids.push_back(g.vertex_id(v));
  const int X = V;
  const int Y = V + 1;
  vids.push_back("x~" + std::to_string(V));
  vids.push_back("y~" + std::to_string(V));

  std::vector<std::string> eids;
  std::vector<std::array<HalfEdge, 2>> ends;
  std::vector<long> colors;
  std::vector<std::string> extra_ids;
  std::vector<std::array<HalfEdge, 2>> extra_ends;
  std::vector<long> extra_colors;
  for (int e = 0; e < E; ++e) {
    eids.push_back(g.strand_id(e));
    colors.push_back(gamma[e]);
    const HalfEdge a = g.end(e, 0);
    const HalfEdge b = g.end(e, 1);
    if (e == e1 && e == e2) {
      ends.push_back({a, HalfEdge{X, 0}});
      extra_ids.push_back(g.strand_id(e) + "~1");
      extra_ends.push_back({HalfEdge{X, 2}, HalfEdge{Y, 0}});
      extra_colors.push_back(gamma[e]);
      extra_ids.push_back(g.strand_id(e) + "~2");
      extra_ends.push_back({HalfEdge{Y, 2}, b});
      extra_colors.push_back(gamma[e]);
    } else if (e == e1 || e == e2) {
      const int W = e == e1 ? X : Y;
      ends.push_back({a, HalfEdge{W, 0}});
      extra_ids.push_back(g.strand_id(e) + "~1");
      extra_ends.push_back({HalfEdge{W, 2}, b});
      extra_colors.push_back(gamma[e]);
    } else {
      ends.push_back({a, b});
    }
  }
  extra_ids.push_back("z~" + std::to_string(E));
  extra_ends.push_back({HalfEdge{X, 1}, HalfEdge{Y, 1}});
  extra_colors.push_back(0);
  for (std::size_t i = 0; i < extra_ids.size(); ++i) {
    eids.push_back(extra_ids[i]);
    ends.push_back(extra_ends[i]);
    colors.push_back(extra_colors[i]);
  }
  std::vector<std::string> lids;
  for (int l = 0; l < g.num_free_loops(); ++l) {
    lids.push_back(g.strand_id(E + l));
    colors.push_back(gamma[E + l]);
  }
  return {RibbonGraph(std::move(vids), std::move(eids), std::move(ends), std::move(lids)),
          Coloring(std::move(colors))};
}

}  // namespace spinnet
