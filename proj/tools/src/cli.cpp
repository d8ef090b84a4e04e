#include "fracperc_cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>

#include "fracperc/errors.hpp"
#include "fracperc/lattice.hpp"
#include "fracperc/phase.hpp"
#include "fracperc/pressure.hpp"
#include "fracperc/serialize.hpp"
#include "fracperc/simulator.hpp"
#include "fracperc/slice.hpp"
#include "fracperc/svg.hpp"
#include "fracperc/type_system.hpp"

namespace fracperc::cli {

namespace {

struct Global {
  std::string out;
  std::string format;
  unsigned threads = 1;
  std::uint64_t seed = 42;
};

struct Source {
  std::string name;  // builtin name or file path
  std::string ifs_file;
  std::string dir;
  std::int64_t scale = 0;
};

struct Loaded {
  LineIFS line;
  std::string label;
  std::string representation = "minimal";
  std::vector<std::string> notes;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

IfsDocument load_document(const Source& src, std::string& label) {
  std::string key = !src.ifs_file.empty() ? src.ifs_file : src.name;
  if (key.empty()) throw InputError("no IFS given: pass a builtin name (menger, sierpinski) or --ifs FILE");
  if (!src.ifs_file.empty() && !src.name.empty()) throw InputError("pass either a source name or --ifs, not both");
  label = key;
  if (src.ifs_file.empty()) {
    if (key == "menger") return menger();
    if (key == "sierpinski") return sierpinski();
  }
  return ifs_from_text(read_file(key));
}

/// The line system to analyze: projected if needed, in minimal form, optionally scaled.
Loaded load_line(const Source& src, std::ostream& err) {
  std::string label;
  IfsDocument doc = load_document(src, label);
  std::optional<LineIFS> line;
  if (auto* lat = std::get_if<LatticeIFS>(&doc)) {
    if (src.dir.empty()) throw InputError("a lattice IFS needs --dir");
    Direction d = Direction::parse(src.dir);
    if (d.size() != static_cast<std::size_t>(lat->dimension()))
      throw InputError("direction has " + std::to_string(d.size()) + " components, lattice dimension is " +
                       std::to_string(lat->dimension()));
    line = project(*lat, d);
    label += " dir " + d.to_string();
  } else {
    if (!src.dir.empty()) throw InputError("--dir only applies to lattice IFS input");
    line = std::get<LineIFS>(doc);
  }
  Loaded out{minimal_form(*line), label, "minimal", {}};
  if (line->rescale_factor() != 1) {
    std::string note = "translations conjugated by factor " + std::to_string(line->rescale_factor()) +
                       " to make L-1 divide the largest translation";
    out.notes.push_back(note);
    err << "warning: " << note << "\n";
  }
  if (src.scale != 0) {
    if (src.scale < 1) throw InputError("--scale must be >= 1");
    out.line = scale(out.line, src.scale);
    out.representation = "scaled-by-" + std::to_string(src.scale);
  }
  return out;
}

void add_source_options(CLI::App* cmd, Source& src) {
  cmd->add_option("source", src.name, "builtin (menger, sierpinski) or IFS JSON file");
  cmd->add_option("--ifs", src.ifs_file, "IFS JSON file");
  cmd->add_option("--dir", src.dir, "projection direction, e.g. 1,1,1");
  cmd->add_option("--scale", src.scale, "analyze the minimal form scaled by this integer factor");
}

void emit(const Global& g, std::ostream& out, const std::string& text) {
  if (g.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(g.out, std::ios::binary);
  if (!file) throw InputError("cannot write " + g.out);
  file << text;
}

void write_side_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write " + path);
  file << text;
}

std::string resolve_format(const Global& g, const std::string& fallback) {
  std::string f = g.format.empty() ? fallback : g.format;
  if (f != "json" && f != "csv") throw InputError("--format must be json or csv");
  return f;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

double elapsed(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---- analyze -------------------------------------------------------------

struct AnalyzeArgs {
  Source src;
  std::string svg;
  std::string csv;
  std::string tolerance = "1/1000000000";
  std::size_t witness_budget = 1000000;
  int lyapunov_n = 0;
  std::uint64_t lyapunov_samples = 2000;
};

int cmd_analyze(const Global& g, const AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
  Loaded in = load_line(a.src, err);
  TypeSystem ts = compute_type_system(in.line);
  validate_type_system(ts);
  PhaseOptions opt;
  opt.representation = in.representation;
  opt.tolerance = parse_rational(a.tolerance);
  if (sgn(opt.tolerance) <= 0) throw InputError("--tolerance must be > 0");
  opt.witness_budget = a.witness_budget;
  PhaseReport report = phase_report(ts, opt);
  for (const auto& n : in.notes) report.notes.push_back(n);
  if (a.lyapunov_n > 0) {
    auto est = lyapunov(ts, a.lyapunov_n, a.lyapunov_samples, g.seed, g.threads);
    report.zero_measure = zero_measure_threshold_estimate(ts, est);
  }
  Json doc = {{"command", "analyze"}, {"source", in.label}, {"type_system", to_json(ts)}, {"report", to_json(report)}};
  if (!a.svg.empty()) write_side_file(a.svg, render_band_chart(doc["report"]));
  if (!a.csv.empty()) write_side_file(a.csv, thresholds_csv(report));
  emit(g, out, resolve_format(g, "json") == "json" ? dump(doc) : thresholds_csv(report));
  return Ok;
}

// ---- project -------------------------------------------------------------

int cmd_project(const Global& g, const Source& src, std::ostream& out, std::ostream& err) {
  std::string label;
  IfsDocument doc = load_document(src, label);
  auto* lat = std::get_if<LatticeIFS>(&doc);
  if (!lat) throw InputError("project needs a lattice IFS");
  if (src.dir.empty()) throw InputError("project needs --dir");
  Projection proj = project_with_provenance(*lat, Direction::parse(src.dir));
  LineIFS line = proj.line;
  if (line.rescale_factor() != 1)
    err << "warning: translations conjugated by factor " << line.rescale_factor() << "\n";
  if (src.scale != 0) {
    if (src.scale < 1) throw InputError("--scale must be >= 1");
    line = scale(minimal_form(line), src.scale);
  }
  if (resolve_format(g, "json") == "json") {
    emit(g, out, dump(to_json(line)));
  } else {
    std::ostringstream os;
    os << "offset,multiplicity\n";
    for (const auto& t : line.translations()) os << t.offset << ',' << t.multiplicity << '\n';
    emit(g, out, os.str());
  }
  return Ok;
}

// ---- simulate ------------------------------------------------------------

struct SimulateArgs {
  Source src;
  double p = 0.5;
  int depth = 6;
  std::uint64_t replicas = 100;
  bool interface = false;
  std::uint64_t node_cap = 4000000;
};

int cmd_simulate(const Global& g, const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  if (a.interface) {
    InterfaceResult r = interface_process(a.p, a.depth, a.replicas, g.seed, 100000, g.threads);
    if (resolve_format(g, "json") == "json") {
      emit(g, out, dump(to_json(r)));
    } else {
      std::ostringstream os;
      os << "p,depth,replicas,extinct,frequency,std_error,fixed_point,finite_depth\n"
         << format_double(r.p) << ',' << r.depth << ',' << r.replicas << ',' << r.extinct << ','
         << format_double(r.frequency) << ',' << format_double(r.std_error) << ',' << format_double(r.fixed_point)
         << ',' << format_double(r.finite_depth) << '\n';
      emit(g, out, os.str());
    }
    return Ok;
  }
  std::string label;
  IfsDocument doc = load_document(a.src, label);
  std::optional<LineIFS> line;
  if (auto* lat = std::get_if<LatticeIFS>(&doc)) {
    if (a.src.dir.empty()) throw InputError("a lattice IFS needs --dir");
    line = project(*lat, Direction::parse(a.src.dir));
  } else {
    line = std::get<LineIFS>(doc);
  }
  SurvivalOptions opt;
  opt.max_level_nodes = a.node_cap;
  auto rows = simulate_replicas(*line, a.p, a.depth, a.replicas, g.seed, g.threads, opt);
  if (resolve_format(g, "csv") == "csv") {
    emit(g, out, replicas_csv(rows));
  } else {
    Json arr = Json::array();
    for (const auto& r : rows)
      arr.push_back({{"replica", r.replica},
                     {"retained_count", r.retained_count},
                     {"proj_measure", r.proj_measure},
                     {"longest_run", r.longest_run},
                     {"full_cover", r.full_cover},
                     {"extinct_level", r.extinct_level ? Json(*r.extinct_level) : Json()}});
    emit(g, out,
         dump({{"command", "simulate"}, {"source", label}, {"ifs", to_json(*line)}, {"p", a.p}, {"depth", a.depth},
               {"seed", g.seed}, {"replicas", arr}}));
  }
  (void)err;
  return Ok;
}

// ---- pressure ------------------------------------------------------------

struct PressureArgs {
  Source src;
  std::string t = "0,1,2";
  int n = 4;
  std::string mode = "auto";
  std::uint64_t budget = 1000000;
  std::uint64_t samples = 20000;
  int lyapunov_n = 0;
  std::uint64_t lyapunov_samples = 2000;
};

std::vector<double> parse_t_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw InputError("bad t value: " + item);
    } catch (const std::logic_error&) {
      throw InputError("bad t value: " + item);
    }
  }
  if (out.empty()) throw InputError("--t needs at least one value");
  return out;
}

int cmd_pressure(const Global& g, const PressureArgs& a, std::ostream& out, std::ostream& err) {
  Loaded in = load_line(a.src, err);
  TypeSystem ts = compute_type_system(in.line);
  PressureOptions opt;
  if (a.mode == "auto") opt.mode = PressureMode::Auto;
  else if (a.mode == "exact") opt.mode = PressureMode::Exact;
  else if (a.mode == "mc") opt.mode = PressureMode::MonteCarlo;
  else throw InputError("--mode must be auto, exact or mc");
  opt.budget = a.budget;
  opt.samples = a.samples;
  opt.seed = g.seed;
  opt.threads = g.threads;
  std::vector<PressureEstimate> rows;
  for (double t : parse_t_list(a.t)) rows.push_back(pressure(ts, t, a.n, opt));
  std::optional<LyapunovEstimate> lyap;
  if (a.lyapunov_n > 0) lyap = lyapunov(ts, a.lyapunov_n, a.lyapunov_samples, g.seed, g.threads);

  if (resolve_format(g, lyap ? "json" : "csv") == "csv") {
    emit(g, out, pressure_csv(rows));
  } else {
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    Json doc = {{"command", "pressure"}, {"source", in.label}, {"representation", in.representation}, {"pressure", arr}};
    if (lyap) {
      doc["lyapunov"] = to_json(*lyap);
      doc["zero_measure_estimate"] = to_json(zero_measure_threshold_estimate(ts, *lyap));
    }
    emit(g, out, dump(doc));
  }
  return Ok;
}

// ---- verify-slice --------------------------------------------------------

int cmd_verify_slice(const Global& g, const std::string& step, std::ostream& out, std::ostream& err) {
  Rational s = parse_rational(step);
  auto start = std::chrono::steady_clock::now();
  VerificationReport r = verify_grid(s, g.threads);
  err << "verify-slice: " << r.points << " grid points in " << elapsed(start) << " s\n";
  Json doc = to_json(r);
  if (resolve_format(g, "json") == "json") {
    emit(g, out, dump(doc));
  } else {
    emit(g, out,
         "step,points,minimum,argmin_a,argmin_b,argmin_c,certified\n" + to_string(r.step) + "," +
             std::to_string(r.points) + "," + to_string(r.minimum) + "," + to_string(r.argmin.a) + "," +
             to_string(r.argmin.b) + "," + to_string(r.argmin.c) + "," + (r.certified ? "true" : "false") + "\n");
  }
  return Ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phase analysis of coin-tossing self-similar sets and their projections", "fracperc"};
  app.fallthrough();
  app.require_subcommand(1);
  Global g;
  app.add_option("--out", g.out, "write the result to this file");
  app.add_option("--format", g.format, "json or csv");
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "random seed");

  AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand("analyze", "type system and phase thresholds of a projected IFS");
  add_source_options(analyze, analyze_args.src);
  analyze->add_option("--svg", analyze_args.svg, "also write a band chart SVG");
  analyze->add_option("--csv", analyze_args.csv, "also write the threshold table as CSV");
  analyze->add_option("--tolerance", analyze_args.tolerance, "spectral enclosure width");
  analyze->add_option("--witness-budget", analyze_args.witness_budget, "max zero patterns visited");
  analyze->add_option("--lyapunov-n", analyze_args.lyapunov_n, "word length for the zero-measure estimate (0 = off)");
  analyze->add_option("--lyapunov-samples", analyze_args.lyapunov_samples, "sample words for the estimate");

  Source project_src;
  auto* project_cmd = app.add_subcommand("project", "project a lattice IFS to the line");
  add_source_options(project_cmd, project_src);

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "seeded realizations of the coin-tossing construction");
  add_source_options(simulate, sim_args.src);
  simulate->add_option("--p", sim_args.p, "retention probability")->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--depth", sim_args.depth, "construction depth")->check(CLI::NonNegativeNumber);
  simulate->add_option("--replicas", sim_args.replicas, "number of replicas")->check(CLI::PositiveNumber);
  simulate->add_flag("--interface", sim_args.interface, "simulate the face-interface branching process instead");
  simulate->add_option("--node-cap", sim_args.node_cap, "max retained words per level");

  PressureArgs pressure_args;
  auto* pressure_cmd = app.add_subcommand("pressure", "pressure function and Lyapunov exponent");
  add_source_options(pressure_cmd, pressure_args.src);
  pressure_cmd->add_option("--t", pressure_args.t, "comma-separated t values");
  pressure_cmd->add_option("--n", pressure_args.n, "word length")->check(CLI::PositiveNumber);
  pressure_cmd->add_option("--mode", pressure_args.mode, "auto, exact or mc");
  pressure_cmd->add_option("--budget", pressure_args.budget, "max words for exact enumeration");
  pressure_cmd->add_option("--samples", pressure_args.samples, "Monte Carlo words");
  pressure_cmd->add_option("--lyapunov-n", pressure_args.lyapunov_n, "also estimate the Lyapunov exponent at this n");
  pressure_cmd->add_option("--lyapunov-samples", pressure_args.lyapunov_samples, "Lyapunov sample words");

  std::string step = "1/500";
  auto* verify = app.add_subcommand("verify-slice", "grid certificate for the plane-slice inequality");
  verify->add_option("--step", step, "grid step as p/q");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? Ok : InputFailure;
  }

  try {
    if (*analyze) return cmd_analyze(g, analyze_args, out, err);
    if (*project_cmd) return cmd_project(g, project_src, out, err);
    if (*simulate) return cmd_simulate(g, sim_args, out, err);
    if (*pressure_cmd) return cmd_pressure(g, pressure_args, out, err);
    if (*verify) return cmd_verify_slice(g, step, out, err);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return InputFailure;
  } catch (const AmbiguityError& e) {
    err << "ambiguous basic types: " << e.what() << "\n";
    return Ambiguity;
  } catch (const InvariantError& e) {
    err << "internal invariant failed: " << e.what() << "\n";
    return Invariant;
  }
  return InputFailure;
}

}  // namespace fracperc::cli
