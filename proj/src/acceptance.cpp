#include "spinnet/acceptance.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <iomanip>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "spinnet/asymptotics.hpp"
#include "spinnet/errors.hpp"
#include "spinnet/gen_fun.hpp"
#include "spinnet/recurrence.hpp"
#include "spinnet/tet_geometry.hpp"

namespace spinnet {

namespace {

QuadNum qn(const char* p, const char* q, long m) {
  return QuadNum(parse_rational(p), parse_rational(q), BigInt(m));
}

std::filesystem::path graph_path(const std::string& name) {
  return std::filesystem::path(SPINNET_DATA_DIR) / "graphs" / (name + ".graph");
}

// Runs f(i) for i in [0, n) on up to `jobs` threads; rethrows the first failure.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& f) {
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      try {
        for (std::size_t i = next++; i < n; i = next++) f(i);
      } catch (...) {
        const std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
        next = n;
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<Coloring> admissible_colorings(const RibbonGraph& g, long max_color) {
  std::vector<Coloring> out;
  Coloring c(std::vector<long>(g.num_strands(), 0));
  for (;;) {
    if (admissible(g, c)) out.push_back(c);
    int i = 0;
    while (i < g.num_strands() && c[i] == max_color) c[i++] = 0;
    if (i == g.num_strands()) break;
    ++c[i];
  }
  return out;
}

Coloring random_admissible(const RibbonGraph& g, long max_color, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> pick(0, max_color);
  for (;;) {
    Coloring c(std::vector<long>(g.num_strands()));
    for (auto& x : c.colors) x = pick(rng);
    if (admissible(g, c) && c.total() > 0) return c;
  }
}

TetLabels random_labels(std::mt19937_64& rng, long max_label, bool strict) {
  std::uniform_int_distribution<long> pick(1, max_label);
  for (;;) {
    TetColoring c;
    for (auto& x : c) x = pick(rng);
    const TetLabels t = to_labels(c);
    if (admissible(t) && (!strict || nondegenerate(t))) return t;
  }
}

std::string fmt(const Real& x, int digits = 6) { return format_real(x, digits); }

// Terms 0..139 of the three reference sequences, computed once.
class SequenceCache {
 public:
  explicit SequenceCache(unsigned jobs) : jobs_(jobs) {}
  const std::vector<Rational>& get(int i) {
    const std::lock_guard lock(mu_);
    auto& slot = seqs_[i];
    if (slot.empty())
      slot = sixj_rational_sequence(reference_sixj()[i].coloring, 139, static_cast<int>(jobs_));
    return slot;
  }

 private:
  unsigned jobs_;
  std::mutex mu_;
  std::map<int, std::vector<Rational>> seqs_;
};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << what << "; ";
    }
  }
};

Outcome criterion1(const AcceptanceOptions& opt) {
  Outcome o;
  std::atomic<long> checked{0}, bad{0};
  for (const auto& [g, bound] : {std::pair{&theta_graph(), 4L}, std::pair{&tetrahedron_graph(), 3L}}) {
    const auto cols = admissible_colorings(*g, bound);
    parallel_for(cols.size(), opt.jobs, [&](std::size_t i) {
      const Rational lhs = penrose_state_sum(*g, cols[i]).as_rational();
      const Rational rhs = Rational(vertex_factorial(*g, cols[i])) * chromatic_eval(*g, cols[i]).as_rational();
      ++checked;
      if (lhs != rhs) ++bad;
    });
  }
  o.require(bad == 0, std::to_string(bad) + " mismatches");
  o.detail << checked << " colorings";
  return o;
}

Outcome criterion2(const AcceptanceOptions& opt) {
  Outcome o;
  const ChromaticEvaluator tet(tetrahedron_graph());
  const auto cols = admissible_colorings(tetrahedron_graph(), 6);
  std::atomic<long> bad{0};
  parallel_for(cols.size(), opt.jobs, [&](std::size_t i) {
    const auto& c = cols[i];
    if (closed_form_sixj({c[0], c[1], c[2], c[3], c[4], c[5]}) != tet.evaluate(c)) ++bad;
  });
  const ChromaticEvaluator theta(theta_graph());
  const auto tcols = admissible_colorings(theta_graph(), 10);
  for (const auto& c : tcols)
    if (closed_form_theta(c[0], c[1], c[2]) != theta.evaluate(c)) ++bad;
  o.require(bad == 0, std::to_string(bad) + " mismatches");
  o.detail << cols.size() << " tetrahedra, " << tcols.size() << " thetas";
  return o;
}

Outcome criterion3(const AcceptanceOptions& opt) {
  Outcome o;
  const RibbonGraph k33 = load_graph(graph_path("k33"));
  for (const auto& [name, g, degree] :
       {std::tuple{"theta", &theta_graph(), 12}, std::tuple{"tet", &tetrahedron_graph(), 8},
        std::tuple{"k33", &k33, 6}}) {
    const TruncatedSeries s = spin_series_expand(*g, degree);
    const ChromaticEvaluator chrom(*g);
    std::vector<Exponent> exps;
    Exponent e(g->num_strands(), 0);
    std::function<void(int, int)> fill = [&](int i, int left) {
      if (i == g->num_strands()) {
        exps.push_back(e);
        return;
      }
      for (int k = 0; k <= left; ++k) {
        e[i] = k;
        fill(i + 1, left - k);
      }
      e[i] = 0;
    };
    fill(0, degree);
    std::atomic<long> bad{0};
    parallel_for(exps.size(), opt.jobs, [&](std::size_t i) {
      const Coloring c(std::vector<long>(exps[i].begin(), exps[i].end()));
      const Rational expected = admissible(*g, c) ? Rational(chrom.evaluate(c)) : Rational(0);
      if (s.coefficient(exps[i]) != expected) ++bad;
    });
    o.require(bad == 0, std::string(name) + ": " + std::to_string(bad) + " mismatches");
    o.detail << name << " " << exps.size() << " exponents, ";
  }
  for (const auto* g : {&theta_graph(), &tetrahedron_graph()}) {
    const auto f = fourier_coefficients(*g);
    o.require(f.size() == 1 && f.count(0) == 1 && f.at(0) == 1, "planar Fourier coefficients");
  }
  o.detail << "planar Fourier = {empty: 1}";
  return o;
}

Outcome criterion4(const AcceptanceOptions&) {
  Outcome o;
  const std::array<Rational, 3> expected{32, 0, -2592};
  for (int i = 0; i < 3; ++i) {
    const Rational det = cayley_menger(to_labels(reference_sixj()[i].coloring)).det;
    o.require(det == expected[i], reference_sixj()[i].name + " det " + to_string(det));
    o.detail << reference_sixj()[i].name << " det " << to_string(det) << ", ";
  }
  std::mt19937_64 rng(20240404);
  long bad = 0;
  for (int k = 0; k < 1000; ++k) {
    const TetLabels t = random_labels(rng, 14, false);
    if (variational_coefficients(t).D != -cayley_menger(t).det / 4) ++bad;
  }
  o.require(bad == 0, std::to_string(bad) + " random sextuples with D != -det/4");
  o.detail << "D = -det/4 on 1000 random sextuples";
  return o;
}

Outcome criterion5(const AcceptanceOptions& opt) {
  Outcome o;
  const PrecisionGuard guard(opt.precision);
  const auto& ref = reference_sixj();
  const auto& gold = golden_branches();

  const SixjReport eu = sixj_expansion(to_labels(ref[0].coloring), opt.precision);
  for (const auto& b : eu.expansion.branches) {
    const bool hit = b.growth_exact && std::any_of(gold.begin(), gold.end(), [&](const GoldenBranch& g) {
                       return g.sequence == "a" && g.growth == *b.growth_exact;
                     });
    o.require(hit, "Euclidean branch " + b.label + " growth");
  }
  o.detail << "Euclidean exact, ";

  const SixjReport pl = sixj_expansion(to_labels(ref[1].coloring), opt.precision);
  for (const auto& b : pl.expansion.branches)
    o.require(b.growth_exact && *b.growth_exact == QuadNum(-1), "Plane branch " + b.label + " growth");
  o.detail << "Plane -1, ";

  const SixjReport mk = sixj_expansion(to_labels(ref[2].coloring), opt.precision);
  if (mk.contributing < 0) {
    o.require(false, "no single contributing Minkowskian branch");
  } else {
    const Complex lam = mk.expansion.branches[mk.contributing].growth;
    const Real gap = abs(lam - Complex(Real("0.794127")));
    o.require(gap < Real("1e-6"), "Minkowskian growth " + fmt(lam.re, 10));
    o.detail << "Minkowskian " << fmt(lam.re, 8) << ", ";
  }

  std::mt19937_64 rng(77);
  Real worst(0);
  long skipped = 0;
  for (int k = 0; k < 200;) {
    const TetLabels t = random_labels(rng, 16, true);
    try {
      const SixjReport r = sixj_expansion(t, opt.precision);
      worst = std::max(worst, r.route_gap);
      ++k;
    } catch (const DegenerateError&) {
      ++skipped;
    }
  }
  o.require(worst < Real("1e-10"), "route gap " + fmt(worst, 3));
  o.detail << "max route gap " << fmt(worst, 3) << " over 200 tetrahedra";
  if (skipped) o.detail << " (" << skipped << " draws with a root on a factorial zero redrawn)";
  return o;
}

Outcome criterion6(const AcceptanceOptions&, SequenceCache& cache) {
  Outcome o;
  const auto& gold = golden_branches();
  long matched = 0;
  const char* names = "abc";
  for (int i = 0; i < 3; ++i) {
    const std::string seq_name(1, names[i]);
    const auto& seq = cache.get(i);
    const PolyRecurrence rec = guess_recurrence(seq, 2, 40);
    const auto sols = formal_solutions(rec, 6);
    for (const auto& g : gold) {
      if (g.sequence != seq_name) continue;
      const auto it = std::find_if(sols.begin(), sols.end(), [&](const FormalSolution& s) {
        return s.growth == g.growth && s.alpha == g.alpha;
      });
      if (it == sols.end()) {
        o.require(false, seq_name + ": branch " + g.growth.str() + " missing");
        continue;
      }
      for (std::size_t l = 1; l < g.mu.size(); ++l) {
        const bool ok = l < it->mu.size() && it->mu[l] == g.mu[l];
        o.require(ok, seq_name + ": mu_" + std::to_string(l) + " differs");
        matched += ok;
      }
    }
    o.detail << seq_name << " order " << rec.order() << " degree " << rec.degree() << ", ";
  }
  o.detail << matched << " of 36 coefficients exact";
  return o;
}

Outcome criterion7(const AcceptanceOptions&, SequenceCache& cache) {
  Outcome o;
  const auto& gold = golden_branches();
  const char* names = "abc";
  for (int i = 0; i < 3; ++i) {
    const std::string seq_name(1, names[i]);
    const auto& seq = cache.get(i);
    try {
      const PolyRecurrence rec = guess_recurrence(std::span(seq).first(40), 2, 40);
      const bool valid = rec.annihilates(std::span(seq).first(80));
      o.require(valid, seq_name + ": recurrence fails on terms 40..79");
      const auto sols = formal_solutions(rec, 0);
      bool roots = !sols.empty();
      for (const auto& g : gold)
        if (g.sequence == seq_name)
          roots = roots && std::any_of(sols.begin(), sols.end(),
                                       [&](const FormalSolution& s) { return s.growth == g.growth; });
      o.require(roots, seq_name + ": characteristic roots differ");
      o.detail << seq_name << " degree " << rec.degree() << (valid && roots ? " ok" : " bad") << ", ";
    } catch (const NotFoundError&) {
      o.require(false, seq_name + ": no order-2 recurrence fits 40 terms (needs " +
                           std::to_string(i == 1 ? terms_needed(2, 24) : terms_needed(2, 27)) + ")");
    }
  }
  return o;
}

Outcome criterion8(const AcceptanceOptions& opt) {
  Outcome o;
  const PrecisionGuard guard(opt.precision);
  const auto& ref = reference_sixj();
  const SixjReport eu = sixj_expansion(to_labels(ref[0].coloring), opt.precision);
  for (const auto& [n, bound] : {std::pair{100L, Real("0.05")}, std::pair{200L, Real("0.025")}}) {
    const auto rows = predict_and_compare(eu, n, n, opt.precision, static_cast<int>(opt.jobs));
    o.require(rows[0].rel_error <= bound, "Euclidean n=" + std::to_string(n));
    o.detail << "Euclidean n=" << n << " rel " << fmt(rows[0].rel_error, 3) << ", ";
  }
  const SixjReport mk = sixj_expansion(to_labels(ref[2].coloring), opt.precision);
  const auto& b = mk.expansion.branches.at(std::max(0, mk.contributing));
  const long n = 100;
  const auto row = predict_and_compare(mk, n, n, opt.precision, 1).at(0);
  const Real scaled = abs(row.value) / pow(abs(b.growth), n) * pow(Real(n), Real(3) / 2);
  const Real rel = abs(scaled - abs(b.stokes)) / abs(b.stokes);
  o.require(rel <= Real("0.05"), "Minkowskian scaled value");
  o.detail << "Minkowskian |a_n|/|L|^n n^1.5 = " << fmt(scaled) << " vs |S| = " << fmt(abs(b.stokes))
           << " (rel " << fmt(rel, 3) << ")";
  return o;
}

Outcome criterion9(const AcceptanceOptions& opt) {
  Outcome o;
  const PrecisionGuard guard(opt.precision);
  const RibbonGraph circle = load_graph(graph_path("circle"));
  const int jobs = static_cast<int>(opt.jobs);
  for (const auto& [name, g, target] :
       {std::tuple{"tet", &tetrahedron_graph(), 729}, std::tuple{"theta", &theta_graph(), 27},
        std::tuple{"circle", &circle, 1}}) {
    const RadiusEstimate r = spectral_radius_estimate(*g, 300, Norm::standard, jobs);
    const Real rel = abs(r.estimate - target) / target;
    o.require(rel <= Real("0.02"), std::string(name) + " estimate " + fmt(r.estimate));
    o.detail << name << " " << fmt(r.estimate) << ", ";
  }
  return o;
}

Outcome criterion10(const AcceptanceOptions& opt) {
  Outcome o;
  std::mt19937_64 rng(1010);
  const RibbonGraph k33 = load_graph(graph_path("k33"));
  const std::array<const RibbonGraph*, 3> graphs{&theta_graph(), &tetrahedron_graph(), &k33};
  const std::array<long, 3> bounds{6, 4, 2};
  struct Case {
    int graph;
    Coloring c;
    int vertex;
  };
  std::vector<Case> cases;
  for (int k = 0; k < 200; ++k) {
    const int gi = static_cast<int>(rng() % graphs.size());
    Coloring c = random_admissible(*graphs[gi], bounds[gi], rng);
    const int v = static_cast<int>(rng() % graphs[gi]->num_vertices());
    cases.push_back({gi, std::move(c), v});
  }
  std::atomic<long> bad_flip{0};
  parallel_for(cases.size(), opt.jobs, [&](std::size_t i) {
    const auto& [gi, c, v] = cases[i];
    const RibbonGraph& g = *graphs[gi];
    const auto vc = vertex_colors(g, c, v);
    const BigInt before = chromatic_eval(g, c).as_rational().convert_to<BigInt>();
    const BigInt after = chromatic_eval(g.with_flipped_vertex(v), c).as_rational().convert_to<BigInt>();
    if (after != flip_sign(vc[0], vc[1], vc[2]) * before) ++bad_flip;
  });
  o.require(bad_flip == 0, std::to_string(bad_flip) + " flip mismatches");

  std::atomic<long> bad_sub{0};
  std::vector<Case> subs;
  for (int k = 0; k < 40; ++k) {
    const int gi = static_cast<int>(rng() % 2);
    Coloring c = random_admissible(*graphs[gi], bounds[gi] - 2, rng);
    subs.push_back({gi, std::move(c), static_cast<int>(rng() % graphs[gi]->num_edges())});
  }
  parallel_for(subs.size(), opt.jobs, [&](std::size_t i) {
    const auto& [gi, c, e] = subs[i];
    const RibbonGraph& g = *graphs[gi];
    const int e2 = i % 2 ? e : static_cast<int>((e + 1) % g.num_edges());
    const ColoredGraph h = insert_zero_edge(g, c, e, e2);
    if (chromatic_eval(h.graph, h.coloring) != chromatic_eval(g, c)) ++bad_sub;
  });
  o.require(bad_sub == 0, std::to_string(bad_sub) + " subdivision mismatches");
  o.detail << "200 flips, 40 zero-edge insertions";
  return o;
}

Outcome criterion11(const AcceptanceOptions&) {
  Outcome o;
  const RibbonGraph drum1 = load_graph(graph_path("drum1"));
  const RibbonGraph drum3 = load_graph(graph_path("drum3"));
  const RibbonGraph k33 = load_graph(graph_path("k33"));
  const auto uniform = [](const RibbonGraph& g, long c) {
    return Coloring(std::vector<long>(g.num_strands(), c));
  };
  for (long c : {2L, 4L, 6L}) {
    o.require(family_eval({Family::Kind::drum, 1}, c).as_rational() == 0, "drum(1) formula at " + std::to_string(c));
    o.require(chromatic_eval(drum1, uniform(drum1, c)).as_rational() == 0, "drum(1) chromatic at " + std::to_string(c));
  }
  const ChromaticEvaluator ck(k33);
  for (long c : {2L, 6L}) {
    o.require(family_eval({Family::Kind::k33, 3}, c).as_rational() == 0, "K33 formula at " + std::to_string(c));
    o.require(ck.evaluate(uniform(k33, c)) == 0, "K33 chromatic at " + std::to_string(c));
  }
  const Rational d3 = family_eval({Family::Kind::drum, 3}, 4).as_rational();
  o.require(d3 == chromatic_eval(drum3, uniform(drum3, 4)).as_rational(), "drum(3) at 4");
  const Rational k4 = family_eval({Family::Kind::k33, 3}, 4).as_rational();
  o.require(k4 == Rational(ck.evaluate(uniform(k33, 4))), "K33 at 4");
  o.detail << "drum(3)@4 = " << to_string(d3) << ", K33@4 = " << to_string(k4);
  return o;
}

}  // namespace

const std::array<ReferenceSixj, 3>& reference_sixj() {
  static const std::array<ReferenceSixj, 3> refs{{{"Euclidean", {2, 2, 2, 2, 2, 2}},
                                                  {"Plane", {3, 4, 4, 3, 5, 5}},
                                                  {"Minkowskian", {4, 4, 4, 4, 6, 6}}}};
  return refs;
}

const std::vector<GoldenBranch>& golden_branches() {
  static const std::vector<GoldenBranch> gold = [] {
    std::vector<GoldenBranch> out;
    GoldenBranch a{"a", qn("329/729", "-460/729", -2), Rational(-3, 2),
                   {QuadNum(1), qn("-432/576", "31/576", -2), qn("109847/331776", "-22320/331776", -2),
                    qn("-18649008/573308928", "4914305/573308928", -2),
                    qn("14721750481/660451885056", "45578388960/660451885056", -2),
                    qn("-83614134803760/380420285792256", "7532932167923/380420285792256", -2),
                    qn("-31784729861796581/657366253849018368", "-212040612888146640/657366253849018368", -2)}};
    GoldenBranch c{"c", qn("696321931873/678223072849", "-111529584108/678223072849", 2), Rational(-3, 2),
                   {QuadNum(1), qn("336/4032", "-1369/4032", 2), qn("1769489/1806336", "-831792/1806336", 2),
                    qn("67925105712/21849440256", "-66827896993/21849440256", 2),
                    qn("5075437500833257/176193886224384", "-2589265090380768/176193886224384", 2),
                    qn("100978405759997442992/552544027199668224", "-98904713360431641651/552544027199668224", 2),
                    qn("685103512739058526758457/247539724185451364352",
                       "-349782631602887151717776/247539724185451364352", 2)}};
    const auto conjugate = [](GoldenBranch g) {
      g.growth = g.growth.conj();
      for (auto& m : g.mu) m = m.conj();
      return g;
    };
    out.push_back(a);
    out.push_back(conjugate(a));
    out.push_back({"b", QuadNum(-1), Rational(-4, 3),
                   {QuadNum(1), parse_rational("-1/3"), parse_rational("3713/46656"),
                    parse_rational("-25427/2239488"), parse_rational("9063361/17414258688"),
                    parse_rational("-109895165/104485552128"), parse_rational("1927530983327/2437438960041984")}});
    out.push_back({"b", QuadNum(-1), Rational(-5, 3),
                   {QuadNum(1), parse_rational("-37/96"), parse_rational("3883/46656"),
                    parse_rational("-13129/4478976"), parse_rational("-5700973/8707129344"),
                    parse_rational("-14855978561/3343537668096"),
                    parse_rational("2862335448661/2437438960041984")}});
    out.push_back(c);
    out.push_back(conjugate(c));
    return out;
  }();
  return gold;
}

std::vector<CriterionResult> run_acceptance(std::ostream& out, const AcceptanceOptions& opt) {
  SequenceCache cache(opt.jobs);
  const std::vector<std::function<Outcome()>> criteria{
      [&] { return criterion1(opt); },         [&] { return criterion2(opt); },
      [&] { return criterion3(opt); },         [&] { return criterion4(opt); },
      [&] { return criterion5(opt); },         [&] { return criterion6(opt, cache); },
      [&] { return criterion7(opt, cache); },  [&] { return criterion8(opt); },
      [&] { return criterion9(opt); },         [&] { return criterion10(opt); },
      [&] { return criterion11(opt); }};
  std::vector<CriterionResult> results;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    r.id = static_cast<int>(i + 1);
    try {
      Outcome o = criteria[i]();
      r.pass = o.pass;
      r.detail = o.detail.str();
      while (!r.detail.empty() && (r.detail.back() == ' ' || r.detail.back() == ',' || r.detail.back() == ';'))
        r.detail.pop_back();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.id == 1 && r.seconds > 120) {
      r.pass = false;
      r.detail += "; over the 120 s budget";
    }
    if (r.id == 8 && r.seconds > 300) {
      r.pass = false;
      r.detail += "; over the 300 s budget";
    }
    out << "criterion " << r.id << ": " << (r.pass ? "PASS" : "FAIL") << ' ' << r.detail << " ("
        << std::fixed << std::setprecision(2) << r.seconds << " s)" << std::defaultfloat << '\n'
        << std::flush;
    results.push_back(std::move(r));
  }
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.pass; });
}

}  // namespace spinnet
