#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spinnet/acceptance.hpp"
#include "spinnet/asymptotics.hpp"
#include "spinnet/errors.hpp"
#include "spinnet/gen_fun.hpp"
#include "spinnet/recurrence.hpp"
#include "spinnet/report.hpp"

namespace fs = std::filesystem;
using namespace spinnet;

namespace {

struct Globals {
  unsigned precision = default_precision_digits;
  int depth = 6;
  long nmax = -1;
  std::string format = "csv";
  unsigned jobs = 1;

  bool json() const { return format == "json"; }
  long nmax_or(long fallback) const { return nmax < 0 ? fallback : nmax; }
};

struct GraphInput {
  std::string graph;
  std::string coloring_file;
  std::string colors;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw ParseError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RibbonGraph resolve_graph(const std::string& name) {
  if (fs::exists(name)) return load_graph(name);
  const fs::path bundled = fs::path(SPINNET_DATA_DIR) / "graphs" / (name + ".graph");
  if (fs::exists(bundled)) return load_graph(bundled);
  throw ParseError("unknown graph '" + name + "'");
}

Coloring resolve_coloring(const GraphInput& in, const RibbonGraph& g) {
  if (!in.coloring_file.empty()) return load_coloring(in.coloring_file, g);
  if (in.colors.empty()) throw ParseError("give --coloring FILE or --colors LIST");
  std::vector<long> c;
  std::string item;
  std::istringstream ss(in.colors);
  while (std::getline(ss, item, ',')) {
    try {
      c.push_back(std::stol(item));
    } catch (const std::exception&) {
      throw ParseError("bad color '" + item + "'");
    }
  }
  if (static_cast<int>(c.size()) != g.num_strands())
    throw ParseError("expected " + std::to_string(g.num_strands()) + " colors, got " +
                     std::to_string(c.size()));
  return Coloring(std::move(c));
}

void add_graph_args(CLI::App* cmd, GraphInput& in, bool coloring) {
  cmd->add_option("graph", in.graph, "graph file or bundled name (tetrahedron, theta, k33, ...)")->required();
  if (coloring) {
    cmd->add_option("--coloring", in.coloring_file, "coloring file (\"<edge id> <color>\" lines)");
    cmd->add_option("--colors", in.colors, "comma-separated colors in strand order");
  }
}

std::vector<Rational> read_sequence(const std::string& path) {
  std::vector<Rational> out;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line.erase(0, line.find_first_not_of(" \t\r"));
    line.erase(line.find_last_not_of(" \t\r") + 1);
    if (!line.empty()) out.push_back(parse_rational(line));
  }
  return out;
}

void emit(const Globals& g, const Json& j, const std::string& csv) {
  if (g.json())
    std::cout << j.dump(2) << '\n';
  else
    std::cout << csv;
}

std::string asympt_csv(const SixjReport& r, unsigned digits) {
  std::ostringstream os;
  os << "label,growth_re,growth_im,growth_exact,alpha,stokes_re,stokes_im,contributes\n";
  for (const auto& b : r.expansion.branches)
    os << b.label << ',' << format_real(b.growth.re, digits) << ',' << format_real(b.growth.im, digits)
       << ',' << (b.growth_exact ? b.growth_exact->str() : "") << ',' << to_string(b.alpha) << ','
       << format_real(b.stokes.re, digits) << ',' << format_real(b.stokes.im, digits) << ','
       << (b.contributes ? 1 : 0) << '\n';
  return os.str();
}

int run(int argc, char** argv) {
  CLI::App app{"Spin network evaluation, generating series and 6j asymptotics"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--precision", g.precision, "working precision in decimal digits")
      ->check(CLI::Range(16u, 4000u));
  app.add_option("--depth", g.depth, "number of 1/n corrections")->check(CLI::Range(0, 40));
  app.add_option("--nmax", g.nmax, "largest index n")->check(CLI::NonNegativeNumber);
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::Range(1u, 1024u));

  GraphInput eval_in;
  auto* eval = app.add_subcommand("eval", "evaluate a colored graph in all four normalizations");
  add_graph_args(eval, eval_in, true);

  GraphInput seq_in;
  std::string seq_norm = "standard";
  auto* sequence = app.add_subcommand("sequence", "evaluations at n*gamma for n = 0..nmax");
  add_graph_args(sequence, seq_in, true);
  sequence->add_option("--norm", seq_norm, "P, standard, B or U");

  GraphInput gf_in;
  int gf_degree = 6;
  bool gf_diagonal = false;
  auto* genfun = app.add_subcommand("genfun", "spin generating series dumps");
  add_graph_args(genfun, gf_in, true);
  genfun->add_option("--degree", gf_degree, "total degree bound of the series")->check(CLI::Range(0, 64));
  genfun->add_flag("--diagonal", gf_diagonal, "coefficients of z^(n gamma) for n = 0..nmax");

  std::string labels;
  auto* classify = app.add_subcommand("classify", "Cayley-Menger geometry of a tetrahedron");
  classify->add_option("labels", labels, "a,b,c,d,e,f")->required();

  auto* asympt = app.add_subcommand("asympt", "Nilsson expansion of <tet, n gamma>^U");
  asympt->add_option("labels", labels, "a,b,c,d,e,f")->required();

  long n_from = 1;
  auto* predict = app.add_subcommand("predict", "exact values against the leading-order prediction");
  predict->add_option("labels", labels, "a,b,c,d,e,f")->required();
  predict->add_option("--from", n_from, "first n")->check(CLI::NonNegativeNumber);

  std::string seq_file;
  int max_order = 2, max_degree = 40;
  auto* guess = app.add_subcommand("guess-rec", "guess a linear recurrence with polynomial coefficients");
  guess->add_option("labels", labels, "a,b,c,d,e,f (the unitary 6j sequence)");
  guess->add_option("--sequence", seq_file, "file with one rational term per line");
  guess->add_option("--max-order", max_order)->check(CLI::Range(1, 8));
  guess->add_option("--max-degree", max_degree)->check(CLI::Range(0, 200));

  std::string rec_file;
  auto* formal = app.add_subcommand("formal-series", "formal solutions of a recurrence and Stokes fit");
  formal->add_option("labels", labels, "a,b,c,d,e,f (the unitary 6j sequence)");
  formal->add_option("--sequence", seq_file, "file with one rational term per line");
  formal->add_option("--recurrence", rec_file, "recurrence JSON from guess-rec");
  formal->add_option("--max-order", max_order)->check(CLI::Range(1, 8));
  formal->add_option("--max-degree", max_degree)->check(CLI::Range(0, 200));

  GraphInput rad_in;
  std::string rad_norm = "standard";
  auto* radius = app.add_subcommand("radius", "spectral radius estimate from the all-2 diagonal");
  add_graph_args(radius, rad_in, false);
  radius->add_option("--norm", rad_norm, "P, standard, B or U");

  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const unsigned digits = std::min(g.precision, 40u);
  const PrecisionGuard guard(g.precision);

  auto load_sequence = [&](long default_terms) {
    if (!seq_file.empty()) return read_sequence(seq_file);
    if (labels.empty()) throw ParseError("give tetrahedron labels or --sequence FILE");
    const TetLabels t = parse_labels(labels);
    TetColoring c;
    for (int i = 0; i < 6; ++i) {
      if (!is_integer(t.v[i])) throw ParseError("labels must be integers");
      c[i] = numerator_of(t.v[i]).convert_to<long>();
    }
    if (!admissible(t)) throw ParseError("labels " + labels + " are not admissible");
    return sixj_rational_sequence(c, g.nmax_or(default_terms - 1), static_cast<int>(g.jobs));
  };

  if (*eval) {
    const RibbonGraph graph = resolve_graph(eval_in.graph);
    const EvalResult r = evaluate_all(graph, resolve_coloring(eval_in, graph));
    emit(g, to_json(r), eval_csv(r));
  } else if (*sequence) {
    const RibbonGraph graph = resolve_graph(seq_in.graph);
    const auto seq = scaled_sequence(graph, resolve_coloring(seq_in, graph), g.nmax_or(20),
                                     parse_norm(seq_norm), g.jobs);
    emit(g, sequence_json(seq), sequence_csv(seq));
  } else if (*genfun) {
    const RibbonGraph graph = resolve_graph(gf_in.graph);
    if (gf_diagonal) {
      const auto d = diagonal_series(graph, resolve_coloring(gf_in, graph), g.nmax_or(10));
      Json j = Json::array();
      std::ostringstream csv;
      csv << "n,coefficient\n";
      for (std::size_t n = 0; n < d.size(); ++n) {
        j.push_back(to_string(d[n]));
        csv << n << ',' << to_string(d[n]) << '\n';
      }
      emit(g, j, csv.str());
    } else {
      const TruncatedSeries s = spin_series_expand(graph, gf_degree);
      Json terms = Json::array();
      for (const auto& [e, c] : s.terms) terms.push_back(Json{{"exponent", e}, {"coefficient", to_string(c)}});
      emit(g, Json{{"degree", s.degree}, {"terms", terms}}, series_csv(s, graph));
    }
  } else if (*classify) {
    const TetLabels t = parse_labels(labels);
    emit(g, classify_json(t, g.precision), classify_csv(t, g.precision));
  } else if (*asympt) {
    const SixjReport r = sixj_expansion(parse_labels(labels), g.precision);
    emit(g, to_json(r, digits), asympt_csv(r, digits));
  } else if (*predict) {
    const SixjReport r = sixj_expansion(parse_labels(labels), g.precision);
    const auto rows = predict_and_compare(r, n_from, g.nmax_or(100), g.precision, static_cast<int>(g.jobs));
    emit(g, to_json(rows, digits), prediction_csv(rows, digits));
  } else if (*guess) {
    const auto seq = load_sequence(terms_needed(max_order, max_degree));
    const PolyRecurrence rec = guess_recurrence(seq, max_order, max_degree);
    emit(g, to_json(rec), rec.str() + '\n');
  } else if (*formal) {
    std::vector<Rational> seq;
    PolyRecurrence rec;
    if (!rec_file.empty()) {
      rec = recurrence_from_json(Json::parse(read_file(rec_file)));
      if (!labels.empty() || !seq_file.empty()) seq = load_sequence(201);
    } else {
      seq = load_sequence(201);
      rec = guess_recurrence(seq, max_order, max_degree);
    }
    const auto sols = formal_solutions(rec, g.depth);
    Json j{{"recurrence", to_json(rec)}, {"solutions", to_json(sols)}};
    std::string csv = solutions_csv(sols);
    if (!seq.empty()) {
      const long hi = rec.first_index + static_cast<long>(seq.size()) - 1;
      const long lo = std::max(rec.first_index + 1, hi - hi / 3);
      const auto stokes = fit_stokes(seq, rec.first_index, sols, lo, hi, g.depth, g.precision);
      Json st = Json::array();
      std::ostringstream os;
      os << "branch,stokes_re,stokes_im\n";
      for (std::size_t b = 0; b < stokes.size(); ++b) {
        st.push_back(to_json(stokes[b], digits));
        os << b << ',' << format_real(stokes[b].re, digits) << ',' << format_real(stokes[b].im, digits) << '\n';
      }
      j["stokes_fit"] = Json{{"n_lo", lo}, {"n_hi", hi}, {"stokes", st}};
      csv += os.str();
    }
    emit(g, j, csv);
  } else if (*radius) {
    const RadiusEstimate r =
        spectral_radius_estimate(resolve_graph(rad_in.graph), g.nmax_or(300), parse_norm(rad_norm),
                                 static_cast<int>(g.jobs));
    std::ostringstream csv;
    csv << "estimate,naive,richardson,points,sign_changes,oscillating\n"
        << format_real(r.estimate, digits) << ',' << format_real(r.naive, digits) << ','
        << format_real(r.richardson, digits) << ',' << r.points << ',' << r.sign_changes << ','
        << (r.oscillating ? 1 : 0) << '\n';
    emit(g, to_json(r, digits), csv.str());
  } else if (*selftest) {
    AcceptanceOptions opt;
    opt.jobs = g.jobs;
    opt.precision = g.precision;
    return all_passed(run_acceptance(std::cout, opt)) ? 0 : 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "error[" << category_name(e.category()) << "]: " << e.what() << '\n';
    return exit_code(e.category());
  } catch (const Json::exception& e) {
    std::cerr << "error[parse]: " << e.what() << '\n';
    return exit_code(ErrorCategory::parse);
  }
}
