#include "spinnet/exact_eval.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <thread>

#include "spinnet/errors.hpp"

namespace spinnet {

namespace {

constexpr const char* tetrahedron_text = R"(vertex 1: 1a 1b 1e
vertex 2: 2c 2f 2a
vertex 3: 3e 3d 3c
vertex 4: 4b 4f 4d
edge a: 1a 2a
edge b: 1b 4b
edge c: 2c 3c
edge d: 3d 4d
edge e: 1e 3e
edge f: 2f 4f
)";

constexpr const char* theta_text = R"(vertex u: ut ub um
vertex v: vt vm vb
edge t: ut vt
edge m: um vm
edge b: ub vb
)";

void check_size(const RibbonGraph& g, const Coloring& gamma) {
  if (static_cast<int>(gamma.size()) != g.num_strands())
    throw ParseError("coloring size does not match the graph");
}

BigInt unknot_value(long n) { return BigInt(n % 2 == 0 ? n + 1 : -(n + 1)); }

long parity_of(const std::vector<int>& perm) {
  std::vector<char> seen(perm.size(), 0);
  long transpositions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    long len = 0;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = 1;
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2;
}

// Prime exponents of a product of factorials.
class FactorialProduct {
 public:
  void add(unsigned long k, int times = 1) {
    if (k > limit_) grow(k);
    for (unsigned long p : primes_) {
      if (p > k) break;
      unsigned long e = 0;
      for (unsigned long q = k / p; q > 0; q /= p) e += q;
      exps_[p] += static_cast<long>(e) * times;
    }
  }
  // sqrt(product) = root * sqrt(free)
  SquareFreeSplit sqrt_split() const {
    BigInt root = 1, free = 1;
    for (const auto& [p, e] : exps_) {
      if (e < 0) throw std::domain_error("negative prime exponent");
      BigInt pw;
      mpz_ui_pow_ui(pw.backend().data(), p, static_cast<unsigned long>(e / 2));
      root *= pw;
      if (e % 2) free *= p;
    }
    return {root, free};
  }

 private:
  void grow(unsigned long k) {
    limit_ = std::max(k, 2 * limit_);
    std::vector<char> sieve(limit_ + 1, 1);
    primes_.clear();
    for (unsigned long i = 2; i <= limit_; ++i) {
      if (!sieve[i]) continue;
      primes_.push_back(i);
      for (unsigned long j = i * i; j <= limit_; j += i) sieve[j] = 0;
    }
  }

  unsigned long limit_ = 0;
  std::vector<unsigned long> primes_;
  std::map<unsigned long, long> exps_;
};

// Which closed form applies to a graph, and the vertex flips that take it to
// the planar reference.
struct Shape {
  enum class Kind { loops_only, theta, tetrahedron, other } kind = Kind::other;
  std::vector<int> strand_of_label;  // theta: 3 strands; tetrahedron: strands of (a..f)
  std::vector<int> flips;
};

Shape recognize(const RibbonGraph& g) {
  Shape shape;
  const int V = g.num_vertices();
  const int E = g.num_edges();
  if (V == 0) {
    shape.kind = Shape::Kind::loops_only;
    return shape;
  }
  auto edge_between = [&](int x, int y) -> std::optional<int> {
    std::optional<int> found;
    for (int e = 0; e < E; ++e) {
      const int u = g.end(e, 0).vertex;
      const int w = g.end(e, 1).vertex;
      if ((u == x && w == y) || (u == y && w == x)) {
        if (found) return std::nullopt;
        found = e;
      }
    }
    return found;
  };
  auto planar_flips = [&]() -> std::optional<std::vector<int>> {
    for (int mask = 0; mask < (1 << V); ++mask) {
      RibbonGraph h = g;
      std::vector<int> flips;
      for (int v = 0; v < V; ++v)
        if (mask >> v & 1) {
          h = h.with_flipped_vertex(v);
          flips.push_back(v);
        }
      if (h.genus() == 0) return flips;
    }
    return std::nullopt;
  };
  if (V == 2 && E == 3) {
    for (int e = 0; e < 3; ++e)
      if (g.end(e, 0).vertex == g.end(e, 1).vertex) return shape;
    auto flips = planar_flips();
    if (!flips) return shape;
    shape.kind = Shape::Kind::theta;
    shape.strand_of_label = {0, 1, 2};
    shape.flips = *flips;
    return shape;
  }
  if (V == 4 && E == 6) {
    const std::array<std::pair<int, int>, 6> pairs{{{0, 1}, {0, 3}, {1, 2}, {2, 3}, {0, 2}, {1, 3}}};
    for (const auto& [x, y] : pairs) {
      auto e = edge_between(x, y);
      if (!e) return shape;
      shape.strand_of_label.push_back(*e);
    }
    auto flips = planar_flips();
    if (!flips) return {};
    shape.kind = Shape::Kind::tetrahedron;
    shape.flips = *flips;
    return shape;
  }
  return shape;
}

BigInt loops_factor(const RibbonGraph& g, const Coloring& gamma) {
  BigInt r = 1;
  for (int s = g.num_edges(); s < g.num_strands(); ++s) r *= unknot_value(gamma[s]);
  return r;
}

BigInt standard_by_shape(const Shape& shape, const RibbonGraph& g, const Coloring& gamma,
                         const ChromaticEvaluator* chromatic) {
  if (!admissible(g, gamma)) return 0;
  BigInt value;
  switch (shape.kind) {
    case Shape::Kind::loops_only:
      value = 1;
      break;
    case Shape::Kind::theta:
      value = closed_form_theta(gamma[shape.strand_of_label[0]], gamma[shape.strand_of_label[1]],
                                gamma[shape.strand_of_label[2]]);
      break;
    case Shape::Kind::tetrahedron: {
      TetColoring t{};
      for (int i = 0; i < 6; ++i) t[i] = gamma[shape.strand_of_label[i]];
      value = closed_form_sixj(t);
      break;
    }
    case Shape::Kind::other:
      return chromatic ? chromatic->evaluate(gamma) : ChromaticEvaluator(g).evaluate(gamma);
  }
  for (int v : shape.flips) {
    const auto [a, b, c] = vertex_colors(g, gamma, v);
    value *= flip_sign(a, b, c);
  }
  return value * loops_factor(g, gamma);
}

}  // namespace

std::string_view norm_name(Norm n) {
  switch (n) {
    case Norm::P: return "P";
    case Norm::standard: return "standard";
    case Norm::B: return "B";
    case Norm::U: return "U";
  }
  return "?";
}

Norm parse_norm(std::string_view text) {
  if (text == "P") return Norm::P;
  if (text == "standard" || text == "std") return Norm::standard;
  if (text == "B") return Norm::B;
  if (text == "U") return Norm::U;
  throw ParseError("unknown normalization '" + std::string(text) + "'");
}

const Rational& ExactValue::as_rational() const {
  if (!value.is_rational()) throw std::domain_error("value is not rational: " + value.str());
  return value.coef;
}

ExactValue penrose_state_sum(const RibbonGraph& g, const Coloring& gamma, std::uint64_t budget) {
  check_size(g, gamma);
  if (!admissible(g, gamma)) return ExactValue::rational(Norm::P, 0);
  const int E = g.num_edges();
  BigInt states = 1;
  for (int e = 0; e < E; ++e) {
    states *= factorial(gamma[e]);
    if (states > budget)
      throw CapacityError("state sum needs more than " + std::to_string(budget) +
                          " states; use chromatic_eval");
  }
  std::vector<int> base(2 * E + 1, 0);
  for (int e = 0; e < E; ++e) {
    base[2 * e + 1] = base[2 * e] + static_cast<int>(gamma[e]);
    base[2 * e + 2] = base[2 * e + 1] + static_cast<int>(gamma[e]);
  }
  const int nodes = base[2 * E];
  auto node = [&](int v, int slot, long pos) {
    return base[2 * g.edge_at(v, slot) + g.end_at(v, slot)] + static_cast<int>(pos);
  };
  std::vector<int> vpartner(nodes, -1), bpartner(nodes, -1);
  for (int v = 0; v < g.num_vertices(); ++v) {
    const auto c = vertex_colors(g, gamma, v);
    for (int s = 0; s < 3; ++s) {
      const int nx = (s + 1) % 3;
      const long arcs = (c[s] + c[nx] - c[(s + 2) % 3]) / 2;
      for (long t = 0; t < arcs; ++t) {
        const int x = node(v, s, c[s] - 1 - t);
        const int y = node(v, nx, t);
        vpartner[x] = y;
        vpartner[y] = x;
      }
    }
  }
  std::vector<std::vector<int>> perm(E);
  std::vector<long> sign(E, 0);
  auto wire = [&](int e) {
    const long n = gamma[e];
    for (long j = 0; j < n; ++j) {
      const int x = base[2 * e] + static_cast<int>(j);
      const int y = base[2 * e + 1] + static_cast<int>(n - 1 - perm[e][j]);
      bpartner[x] = y;
      bpartner[y] = x;
    }
  };
  for (int e = 0; e < E; ++e) {
    perm[e].resize(gamma[e]);
    std::iota(perm[e].begin(), perm[e].end(), 0);
    wire(e);
  }
  std::vector<long> hist(nodes / 2 + 2, 0);
  std::vector<std::uint32_t> stamp(nodes, 0);
  std::uint32_t current = 0;
  for (;;) {
    ++current;
    int loops = 0;
    for (int start = 0; start < nodes; ++start) {
      if (stamp[start] == current) continue;
      ++loops;
      int x = start;
      do {
        stamp[x] = current;
        const int y = vpartner[x];
        stamp[y] = current;
        x = bpartner[y];
      } while (x != start);
    }
    long total_sign = 0;
    for (int e = 0; e < E; ++e) total_sign ^= sign[e];
    hist[loops] += total_sign ? -1 : 1;
    int e = 0;
    for (; e < E; ++e) {
      const bool more = std::next_permutation(perm[e].begin(), perm[e].end());
      sign[e] = parity_of(perm[e]);
      wire(e);
      if (more) break;
    }
    if (e == E) break;
  }
  BigInt value = 0;
  BigInt power = 1;
  for (std::size_t l = 0; l < hist.size(); ++l) {
    if (hist[l] != 0) value += power * hist[l];
    power *= -2;
  }
  value *= loops_factor(g, gamma);
  return ExactValue::rational(Norm::P, Rational(value));
}

ChromaticEvaluator::ChromaticEvaluator(const RibbonGraph& g) : g_(g) {
  for (auto& c : curves(g))
    if (!c.strands.empty()) curves_.push_back(std::move(c));
  cp_ = crossing_matrix(g, curves_);
}

std::map<long, BigInt> ChromaticEvaluator::by_size(const Coloring& gamma,
                                                   std::uint64_t budget) const {
  check_size(g_, gamma);
  std::map<long, BigInt> result;
  if (!admissible(g_, gamma)) return result;
  std::vector<int> active;
  for (int i = 0; i < static_cast<int>(curves_.size()); ++i) {
    const auto& s = curves_[i].strands;
    if (std::all_of(s.begin(), s.end(), [&](int x) { return gamma[x] > 0; })) active.push_back(i);
  }
  const int A = static_cast<int>(active.size());
  const int S = g_.num_strands();
  std::vector<int> last_cover(S, -1);
  for (int i = 0; i < A; ++i)
    for (int s : curves_[active[i]].strands) last_cover[s] = i;
  for (int s = 0; s < S; ++s)
    if (gamma[s] > 0 && last_cover[s] < 0) return result;

  std::vector<long> rem = gamma.colors;
  std::vector<int> acc(A, 0);
  std::vector<std::vector<int>> cp(A, std::vector<int>(A, 0));
  for (int i = 0; i < A; ++i)
    for (int j = 0; j < A; ++j) cp[i][j] = cp_[active[i]][active[j]];
  std::uint64_t visited = 0;

  auto dfs = [&](auto&& self, int i, long total, int iota, const BigInt& multi) -> void {
    if (++visited > budget)
      throw CapacityError("chromatic evaluation exceeds " + std::to_string(budget) +
                          " configurations");
    if (i == A) {
      if (std::all_of(rem.begin(), rem.end(), [](long r) { return r == 0; })) {
        auto& slot = result[total];
        if (iota) {
          slot -= multi;
        } else {
          slot += multi;
        }
      }
      return;
    }
    const auto& strands = curves_[active[i]].strands;
    long ub = std::numeric_limits<long>::max();
    long forced = -1;
    for (int s : strands) {
      ub = std::min(ub, rem[s]);
      if (last_cover[s] == i) {
        if (forced == -1) {
          forced = rem[s];
        } else if (forced != rem[s]) {
          return;
        }
      }
    }
    long lo = 0, hi = ub;
    if (forced >= 0) {
      if (forced > ub) return;
      lo = hi = forced;
    }
    for (long x = lo; x <= hi; ++x) {
      for (int s : strands) rem[s] -= x;
      const int new_iota = iota ^ static_cast<int>(x & acc[i] & 1);
      if (x & 1)
        for (int k = i + 1; k < A; ++k) acc[k] ^= cp[i][k];
      self(self, i + 1, total + x, new_iota,
           x == 0 ? multi : BigInt(multi * binomial(BigInt(total + x), x)));
      if (x & 1)
        for (int k = i + 1; k < A; ++k) acc[k] ^= cp[i][k];
      for (int s : strands) rem[s] += x;
    }
  };
  dfs(dfs, 0, 0, 0, BigInt(1));
  return result;
}

BigInt ChromaticEvaluator::evaluate(const Coloring& gamma, const BigInt& N,
                                    std::uint64_t budget) const {
  BigInt value = 0;
  for (const auto& [t, sum] : by_size(gamma, budget))
    value += binomial(N, static_cast<unsigned long>(t)) * sum;
  return value;
}

ExactValue chromatic_eval(const RibbonGraph& g, const Coloring& gamma, const BigInt& N,
                          std::uint64_t budget) {
  return ExactValue::rational(Norm::standard,
                              Rational(ChromaticEvaluator(g).evaluate(gamma, N, budget)));
}

BigInt closed_form_theta(long a, long b, long c) {
  if (!admissible_triple(a, b, c)) return 0;
  const long s = (a + b + c) / 2;
  const std::array<long, 3> parts{s - a, s - b, s - c};
  BigInt v = multinomial(parts) * (s + 1);
  return s % 2 ? BigInt(-v) : v;
}

BigInt closed_form_sixj(const TetColoring& g) {
  const auto [a, b, c, d, e, f] = g;
  if (!admissible_triple(a, b, e) || !admissible_triple(a, c, f) || !admissible_triple(c, d, e) ||
      !admissible_triple(b, d, f))
    return 0;
  const std::array<long, 3> S{(a + d + b + c) / 2, (a + d + e + f) / 2, (b + c + e + f) / 2};
  const std::array<long, 4> T{(a + b + e) / 2, (a + c + f) / 2, (c + d + e) / 2, (b + d + f) / 2};
  const long lo = *std::max_element(T.begin(), T.end());
  const long hi = *std::min_element(S.begin(), S.end());
  if (lo > hi) return 0;
  BigInt term = factorial(lo + 1);
  for (long s : S) term /= factorial(s - lo);
  for (long t : T) term /= factorial(lo - t);
  if (lo % 2) term = -term;
  BigInt sum = term;
  for (long k = lo; k < hi; ++k) {
    term *= -(k + 2);
    for (long s : S) term *= (s - k);
    BigInt den = 1;
    for (long t : T) den *= (k + 1 - t);
    mpz_divexact(term.backend().data(), term.backend().data(), den.backend().data());
    sum += term;
  }
  return sum;
}

int flip_sign(long a, long b, long c) {
  const long e = (a * (a - 1) + b * (b - 1) + c * (c - 1)) / 2;
  return e % 2 ? -1 : 1;
}

ExactValue family_eval(const Family& family, long color) {
  if (family.kind == Family::Kind::drum && family.sides < 1)
    throw ParseError("drum needs at least one side");
  if (color % 2 != 0) return ExactValue::rational(Norm::standard, 0);
  const long n = color;
  const long N = n / 2;
  const int power = family.kind == Family::Kind::drum ? family.sides : 3;
  // S(n,k) and theta(n,k) in standard normalization; checked against
  // chromatic evaluation of drum(3) and K33 at colors 2, 4 and 6.
  Rational sum = 0;
  for (long j = 0; j <= 2 * N; ++j) {
    const long k = 2 * j;
    const Rational S(closed_form_sixj({k, n, n, n, n, n}));
    const Rational theta(closed_form_theta(n, n, k));
    Rational term = 2 * j + 1;
    const Rational ratio = S / theta;
    for (int i = 0; i < power; ++i) term *= ratio;
    if (family.kind == Family::Kind::k33 && j % 2) term = -term;
    sum += term;
  }
  return ExactValue::rational(Norm::standard, sum);
}

BigInt vertex_factorial(const RibbonGraph& g, const Coloring& gamma) {
  check_size(g, gamma);
  BigInt r = 1;
  for (int v = 0; v < g.num_vertices(); ++v) {
    const auto [a, b, c] = vertex_colors(g, gamma, v);
    if (!admissible_triple(a, b, c)) throw DegenerateError("I! undefined: inadmissible vertex");
    r *= factorial((b + c - a) / 2) * factorial((a + c - b) / 2) * factorial((a + b - c) / 2);
  }
  return r;
}

BigInt edge_factorial(const RibbonGraph& g, const Coloring& gamma) {
  check_size(g, gamma);
  BigInt r = 1;
  for (int e = 0; e < g.num_edges(); ++e) r *= factorial(gamma[e]);
  return r;
}

Surd theta_product(const RibbonGraph& g, const Coloring& gamma) {
  check_size(g, gamma);
  FactorialProduct prod;
  for (int v = 0; v < g.num_vertices(); ++v) {
    const auto [a, b, c] = vertex_colors(g, gamma, v);
    if (!admissible_triple(a, b, c))
      throw DegenerateError("undefined-U: zero theta at vertex " + g.vertex_id(v));
    const long T = (a + b + c) / 2;
    prod.add(T + 1);
    prod.add(T - a);
    prod.add(T - b);
    prod.add(T - c);
  }
  const auto split = prod.sqrt_split();
  return Surd{Rational(split.root), split.free};
}

ExactValue convert_normalization(const ExactValue& v, const RibbonGraph& g, const Coloring& gamma,
                                 Norm target) {
  if (v.norm == target) return v;
  const bool inadmissible = !admissible(g, gamma);
  if (inadmissible) {
    if (v.value.coef != 0) throw DegenerateError("nonzero value for an inadmissible coloring");
    if (target == Norm::U) throw DegenerateError("undefined-U: inadmissible coloring");
    return ExactValue::rational(target, 0);
  }
  Rational p;
  switch (v.norm) {
    case Norm::P: p = v.as_rational(); break;
    case Norm::standard: p = v.as_rational() * Rational(vertex_factorial(g, gamma)); break;
    case Norm::B: p = v.as_rational() * Rational(edge_factorial(g, gamma)); break;
    case Norm::U: {
      const Surd theta = theta_product(g, gamma);
      if (v.value.coef != 0 && v.value.radicand != theta.radicand)
        throw DegenerateError("U value is not compatible with Theta(gamma)");
      p = v.value.coef * theta.coef * Rational(theta.radicand);
      break;
    }
  }
  switch (target) {
    case Norm::P: return ExactValue::rational(Norm::P, p);
    case Norm::standard:
      return ExactValue::rational(Norm::standard, p / Rational(vertex_factorial(g, gamma)));
    case Norm::B: return ExactValue::rational(Norm::B, p / Rational(edge_factorial(g, gamma)));
    case Norm::U: {
      const Surd theta = theta_product(g, gamma);
      // p / (r sqrt f) = p / (r f) * sqrt f
      return {Norm::U, Surd::make(p / (theta.coef * Rational(theta.radicand)), theta.radicand)};
    }
  }
  return v;
}

BigInt standard_value(const RibbonGraph& g, const Coloring& gamma) {
  check_size(g, gamma);
  return standard_by_shape(recognize(g), g, gamma, nullptr);
}

std::vector<ExactValue> scaled_sequence(const RibbonGraph& g, const Coloring& gamma, long n_max,
                                        Norm tag, unsigned jobs) {
  check_size(g, gamma);
  if (!admissible(g, gamma)) throw ParseError("scaled_sequence needs an admissible coloring");
  if (n_max < 0) return {};
  const Shape shape = recognize(g);
  std::optional<ChromaticEvaluator> chromatic;
  if (shape.kind == Shape::Kind::other) chromatic.emplace(g);
  std::vector<ExactValue> out(n_max + 1);
  auto work = [&](long n) {
    const Coloring scaled = gamma.scaled(n);
    const BigInt s = standard_by_shape(shape, g, scaled, chromatic ? &*chromatic : nullptr);
    out[n] = convert_normalization(ExactValue::rational(Norm::standard, Rational(s)), g, scaled, tag);
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n_max + 1)));
  if (jobs == 1) {
    for (long n = 0; n <= n_max; ++n) work(n);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(jobs);
  for (unsigned w = 0; w < jobs; ++w)
    pool.emplace_back([&, w] {
      try {
        for (long n = w; n <= n_max; n += jobs) work(n);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

const RibbonGraph& tetrahedron_graph() {
  static const RibbonGraph g = parse_graph(tetrahedron_text);
  return g;
}

const RibbonGraph& theta_graph() {
  static const RibbonGraph g = parse_graph(theta_text);
  return g;
}

Coloring tet_coloring(const TetColoring& gamma) {
  return Coloring(std::vector<long>(gamma.begin(), gamma.end()));
}

Surd sixj_unitary(const TetColoring& gamma) {
  const Coloring c = tet_coloring(gamma);
  const ExactValue s = ExactValue::rational(Norm::standard, Rational(closed_form_sixj(gamma)));
  return convert_normalization(s, tetrahedron_graph(), c, Norm::U).value;
}

}  // namespace spinnet
