// Copyright 2026 The hone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hone/bench.hpp"
#include "hone/embed.hpp"
#include "hone/eval.hpp"
#include "hone/graph.hpp"
#include "hone/linop.hpp"
#include "hone/motif_count.hpp"
#include "hone/motif_matrix.hpp"

namespace hone {

namespace {

struct CommonFlags {
  std::string input;
  std::string out = "-";
  bool one_indexed = false;
  bool skip_header = false;
  unsigned workers = 1;
  std::uint64_t seed = 0;
  int verbosity = 0;
};

struct PipelineFlags {
  std::string kind = "w";
  std::uint64_t delta = 1;
  int dl = 16;
  int d = 128;
  std::string k = "2";
  std::string orbits = "all";
  std::string diffusion = "none";
  std::string local_method = "rsvd";
  std::string global_method = "ccd";
  int ccd_sweeps = 50;
  double ccd_reg = 1e-4;
};

class Log {
 public:
  Log(std::ostream& err, const int& verbosity) : err_(err), verbosity_(verbosity) {}
  void info(const std::string& msg) const {
    if (verbosity_ >= 1) err_ << "hone: " << msg << '\n';
  }
  void warn(const std::string& msg) const { err_ << "hone: warning: " << msg << '\n'; }

 private:
  std::ostream& err_;
  const int& verbosity_;
};

void add_common_flags(CLI::App* sub, CommonFlags& f, bool needs_input = true) {
  if (needs_input) {
    sub->add_option("-i,--input", f.input, "Edge list file")->required();
    sub->add_flag("--one-indexed", f.one_indexed, "Node ids start at 1");
    sub->add_flag("--skip-header", f.skip_header,
                  "Skip the first non-comment line (MatrixMarket size line)");
  }
  sub->add_option("-o,--out", f.out, "Output file, - for stdout");
  sub->add_option("--workers", f.workers, "Worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--seed", f.seed, "Random seed (HONE_SEED overrides)");
  sub->add_flag("-v,--verbose", f.verbosity, "Log progress to stderr");
  sub->add_option("--config", "key=value config file; command-line flags take precedence");
}

void add_pipeline_flags(CLI::App* sub, PipelineFlags& f, bool auto_k) {
  sub->add_option("--kind", f.kind, "Motif matrix: w, p, l, lnorm, lrw")
      ->check(CLI::IsMember({"w", "p", "l", "lnorm", "lrw"}));
  sub->add_option("--delta", f.delta, "Motif weight threshold")->check(CLI::PositiveNumber);
  sub->add_option("--dl", f.dl, "Local embedding rank")->check(CLI::PositiveNumber);
  sub->add_option("--d", f.d, "Global embedding dimension")->check(CLI::PositiveNumber);
  sub->add_option("--k", f.k, auto_k ? "Steps: auto or 1..4" : "Steps K >= 1");
  sub->add_option("--orbits", f.orbits, "all, or comma-separated orbit ids 1..13");
  sub->add_option("--diffusion", f.diffusion, "none, linear, transition or theta:<value>");
  sub->add_option("--local-method", f.local_method, "rsvd or ccd")
      ->check(CLI::IsMember({"rsvd", "ccd"}));
  sub->add_option("--global-method", f.global_method, "ccd or rsvd")
      ->check(CLI::IsMember({"rsvd", "ccd"}));
  sub->add_option("--ccd-sweeps", f.ccd_sweeps, "CCD sweep limit")->check(CLI::PositiveNumber);
  sub->add_option("--ccd-reg", f.ccd_reg, "CCD L2 weight")->check(CLI::NonNegativeNumber);
}

int parse_int(const std::string& s, const std::string& what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("invalid " + what + ": " + s);
  return v;
}

std::vector<Orbit> parse_orbits(const std::string& spec) {
  if (spec == "all") {
    const auto all = all_orbits();
    return {all.begin(), all.end()};
  }
  std::vector<Orbit> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const int id = parse_int(tok, "orbit id");
    if (id < 1 || id > kNumOrbits) throw std::invalid_argument("orbit id out of range: " + tok);
    out.push_back(orbit_from_id(id));
  }
  if (out.empty()) throw std::invalid_argument("empty orbit list");
  return out;
}

std::optional<DiffusionConfig> parse_diffusion(const std::string& spec, MotifMatrixKind kind) {
  if (spec == "none") return std::nullopt;
  DiffusionConfig d;
  d.kind = kind;
  if (spec == "linear") {
    d.variant = DiffusionVariant::kLinearPsi;
  } else if (spec == "transition") {
    d.variant = DiffusionVariant::kTransitionWalk;
  } else if (spec.rfind("theta:", 0) == 0) {
    d.variant = DiffusionVariant::kNormalizedLaplacianTheta;
    const std::string value = spec.substr(6);
    try {
      std::size_t used = 0;
      d.theta = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw std::invalid_argument("invalid theta: " + value);
    }
    if (!(d.theta > 0.0 && d.theta <= 1.0)) throw std::invalid_argument("theta must lie in (0, 1]");
  } else {
    throw std::invalid_argument("unknown diffusion: " + spec);
  }
  return d;
}

FactorizeMethod parse_method(const std::string& s) {
  return s == "ccd" ? FactorizeMethod::kCcd : FactorizeMethod::kRandomizedSvd;
}

PipelineConfig make_pipeline(const PipelineFlags& f, const CommonFlags& c, bool allow_auto) {
  PipelineConfig cfg;
  cfg.kind = parse_kind(f.kind);
  cfg.delta = f.delta;
  cfg.local_rank = f.dl;
  cfg.global_rank = f.d;
  if (!(allow_auto && f.k == "auto")) {
    cfg.K = parse_int(f.k, "K");
    if (cfg.K < 1) throw std::invalid_argument("K must be >= 1");
  }
  cfg.orbits = parse_orbits(f.orbits);
  cfg.diffusion = parse_diffusion(f.diffusion, cfg.kind);
  cfg.local_method = parse_method(f.local_method);
  cfg.global_method = parse_method(f.global_method);
  cfg.local_ccd.max_sweeps = f.ccd_sweeps;
  cfg.global_ccd.max_sweeps = f.ccd_sweeps;
  cfg.local_ccd.reg = f.ccd_reg;
  cfg.global_ccd.reg = f.ccd_reg;
  cfg.seed = c.seed;
  cfg.workers = c.workers;
  return cfg;
}

// Applies HONE_SEED on top of --seed, recording it as the option's value so
// the echoed config carries the seed actually used.
void apply_seed_env(CLI::App* sub, CommonFlags& c) {
  const char* env = std::getenv("HONE_SEED");
  if (env == nullptr || *env == '\0') return;
  const std::string value(env);
  std::uint64_t seed = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), seed);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw std::invalid_argument("invalid HONE_SEED: " + value);
  c.seed = seed;
  CLI::Option* opt = sub->get_option("--seed");
  opt->clear();
  opt->add_result(value);
}

// "key=value" for every option of `sub` except help and config, in
// declaration order; feeding these lines back via --config reproduces the run.
std::vector<std::string> resolved_config(const CLI::App* sub) {
  std::vector<std::string> lines;
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name == "config" || name == "verbose" || opt->get_lnames().empty())
      continue;
    std::string value;
    if (opt->count() > 0) {
      const auto res = opt->reduced_results();
      for (std::size_t i = 0; i < res.size(); ++i) value += (i ? "," : "") + res[i];
    } else {
      value = opt->get_default_str();
      if (value.empty() && opt->get_expected_min() == 0) value = "false";
      if (value.empty()) continue;  // unset optional value
    }
    lines.push_back(name + "=" + value);
  }
  return lines;
}

// Splices the key=value lines of `--config FILE` in right after the
// subcommand so that explicit flags, parsed later, win.
std::vector<std::string> expand_config(std::vector<std::string> args,
                                       const std::vector<std::string>& subcommands) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i + 2));
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::vector<std::string> injected;
  for (const CLI::ConfigItem& item : CLI::ConfigINI().from_config(in)) {
    if (item.name.empty() || item.name == "++" || item.name == "--") continue;
    std::string value;
    for (std::size_t i = 0; i < item.inputs.size(); ++i)
      value += (i ? "," : "") + item.inputs[i];
    injected.push_back("--" + item.name + "=" + value);
  }
  auto at = std::find_first_of(args.begin(), args.end(), subcommands.begin(), subcommands.end());
  if (at == args.end()) throw std::invalid_argument("--config needs a subcommand");
  args.insert(at + 1, injected.begin(), injected.end());
  return args;
}

void write_header(std::ostream& os, const std::string& prefix, const std::string& subcommand,
                  const CLI::App* sub) {
  os << prefix << " hone " << subcommand << '\n';
  for (const auto& line : resolved_config(sub)) os << prefix << ' ' << line << '\n';
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (path == "-") {
      os_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot open output file: " + path);
      os_ = file_.get();
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_ = nullptr;
};

Graph load_input(const CommonFlags& c, const Log& log) {
  EdgeListOptions opts;
  opts.one_indexed = c.one_indexed;
  opts.skip_header = c.skip_header;
  Graph g = load_edge_list_file(c.input, opts);
  log.info("loaded " + c.input + ": N=" + std::to_string(g.num_nodes()) +
           " M=" + std::to_string(g.num_edges()));
  return g;
}

void write_matrix_tsv(std::ostream& os, const Graph& g, const Eigen::MatrixXd& M,
                      const std::string& column_prefix) {
  os << "label";
  for (Eigen::Index j = 0; j < M.cols(); ++j) os << '\t' << column_prefix << (j + 1);
  os << '\n' << std::setprecision(17);
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    os << g.label(static_cast<NodeId>(i));
    for (Eigen::Index j = 0; j < M.cols(); ++j) os << '\t' << M(i, j);
    os << '\n';
  }
}

int cmd_count_orbits(const CLI::App* sub, const CommonFlags& c, std::ostream& out,
                     const Log& log) {
  const Graph g = load_input(c, log);
  const EdgeOrbitCounts counts = count_edge_orbits(g, c.workers);
  Output o(c.out, out);
  std::ostream& os = o.stream();
  write_header(os, "#", "count-orbits", sub);
  os << "u\tv";
  for (int t = 1; t <= kNumOrbits; ++t) os << "\tO" << t;
  os << '\n';
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.edge(e);
    os << g.label(u) << '\t' << g.label(v);
    for (std::uint64_t x : counts.row(e)) os << '\t' << x;
    os << '\n';
  }
  return 0;
}

struct MotifMatrixFlags {
  int orbit = 3;
  std::string kind = "w";
  std::uint64_t delta = 1;
  int k = 1;
};

constexpr Eigen::Index kMaxDenseExportNodes = 5000;

int cmd_motif_matrix(const CLI::App* sub, const CommonFlags& c, const MotifMatrixFlags& f,
                     std::ostream& out, const Log& log) {
  const Graph g = load_input(c, log);
  const EdgeOrbitCounts counts = count_edge_orbits(g, c.workers);
  const MotifWeightedGraph mw =
      build_motif_weight_matrix(g, counts, orbit_from_id(f.orbit), f.delta);
  const MotifMatrixKind kind = parse_kind(f.kind);
  SparseMatrix S;
  if (f.k == 1) {
    S = apply_psi(mw, kind);
  } else {
    if (mw.size() > kMaxDenseExportNodes)
      throw MaterializationError("k > 1 export is limited to " +
                                 std::to_string(kMaxDenseExportNodes) + " nodes");
    S = KStepOperator(mw, kind, f.k).materialize().sparseView();
  }
  Output o(c.out, out);
  std::ostream& os = o.stream();
  os << "%%MatrixMarket matrix coordinate real general\n";
  write_header(os, "%", "motif-matrix", sub);
  os << S.rows() << ' ' << S.cols() << ' ' << S.nonZeros() << '\n' << std::setprecision(17);
  for (Eigen::Index i = 0; i < S.outerSize(); ++i)
    for (SparseMatrix::InnerIterator it(S, i); it; ++it)
      os << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
  return 0;
}

int cmd_embed(const CLI::App* sub, const CommonFlags& c, const PipelineFlags& f,
              const std::string& y_out, std::ostream& out, const Log& log) {
  const PipelineConfig cfg = make_pipeline(f, c, false);
  const Graph g = load_input(c, log);
  const PipelineResult res = run_pipeline(g, cfg);
  for (const auto& w : res.warnings) log.warn(w);
  log.info("timings: count=" + std::to_string(res.timings.count_seconds) +
           "s local=" + std::to_string(res.timings.local_seconds) +
           "s diffusion=" + std::to_string(res.timings.diffusion_seconds) +
           "s global=" + std::to_string(res.timings.global_seconds) + "s");
  {
    Output o(c.out, out);
    write_header(o.stream(), "#", "embed", sub);
    write_matrix_tsv(o.stream(), g, res.global.Z, "z");
  }
  if (!y_out.empty()) {
    Output o(y_out, out);
    write_header(o.stream(), "#", "embed", sub);
    write_matrix_tsv(o.stream(), g, res.Y.Y, "y");
  }
  return 0;
}

int cmd_linkpred(const CLI::App* sub, const CommonFlags& c, const PipelineFlags& f, int seeds,
                 int folds, std::ostream& out, const Log& log) {
  ExperimentConfig cfg;
  cfg.pipeline = make_pipeline(f, c, true);
  if (f.k != "auto") cfg.k_grid = {cfg.pipeline.K};
  cfg.num_seeds = seeds;
  cfg.folds = folds;
  cfg.base_seed = c.seed;
  const Graph g = load_input(c, log);
  const EvalReport report = run_experiment(g, cfg);
  Output o(c.out, out);
  std::ostream& os = o.stream();
  write_header(os, "#", "linkpred", sub);
  os << "seed\tK\tlambda\tauc\tstd\n" << std::setprecision(17);
  for (const auto& r : report.runs)
    os << r.seed << '\t' << r.K << '\t' << r.lambda << '\t' << r.auc << "\t\n";
  os << "summary\t" << report.selected_K << "\t\t" << report.mean_auc << '\t' << report.std_auc
     << '\n';
  log.info("mean AUC " + std::to_string(report.mean_auc));
  return 0;
}

int cmd_bench(const CLI::App* sub, const CommonFlags& c, const PipelineFlags& f,
              const std::vector<std::size_t>& sizes, double avg_degree, std::ostream& out,
              const Log& log) {
  const PipelineConfig cfg = make_pipeline(f, c, false);
  const std::vector<BenchRow> rows = bench_scaling(sizes, avg_degree, cfg);
  Output o(c.out, out);
  std::ostream& os = o.stream();
  write_header(os, "#", "bench", sub);
  write_bench_tsv(os, rows);
  std::size_t ok = 0;
  for (const auto& r : rows) {
    if (r.error) log.warn("n=" + std::to_string(r.nodes) + ": " + *r.error);
    else ++ok;
  }
  if (ok >= 2) os << "# loglog_slope=" << loglog_slope(rows) << '\n';
  return rows.size() == sizes.size() && ok == rows.size() ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Higher-order node embeddings from edge-orbit counts", "hone"};
  app.option_defaults()->always_capture_default()->multi_option_policy(
      CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  CommonFlags common;
  PipelineFlags pipeline;
  PipelineFlags bench_pipeline;
  bench_pipeline.kind = "p";
  MotifMatrixFlags mm;
  std::string y_out;
  int seeds = 10;
  int folds = 10;
  std::vector<std::size_t> sizes = {1000, 10000, 100000};
  double avg_degree = 10.0;

  CLI::App* count = app.add_subcommand("count-orbits", "Per-edge orbit counts as TSV");
  add_common_flags(count, common);

  CLI::App* matrix = app.add_subcommand("motif-matrix", "Export a motif matrix (MatrixMarket)");
  add_common_flags(matrix, common);
  matrix->add_option("--orbit", mm.orbit, "Orbit id 1..13")->check(CLI::Range(1, kNumOrbits));
  matrix->add_option("--kind", mm.kind, "w, p, l, lnorm, lrw")
      ->check(CLI::IsMember({"w", "p", "l", "lnorm", "lrw"}));
  matrix->add_option("--delta", mm.delta, "Motif weight threshold")->check(CLI::PositiveNumber);
  matrix->add_option("--k", mm.k, "Steps (k > 1 materializes the k-step matrix)")
      ->check(CLI::PositiveNumber);

  CLI::App* embed = app.add_subcommand("embed", "Node embeddings Z as TSV");
  add_common_flags(embed, common);
  add_pipeline_flags(embed, pipeline, false);
  embed->add_option("--y-out", y_out, "Also write the concatenated local embeddings Y");

  CLI::App* linkpred = app.add_subcommand("linkpred", "Link prediction experiment");
  add_common_flags(linkpred, common);
  add_pipeline_flags(linkpred, pipeline, true);
  linkpred->add_option("--seeds", seeds, "Number of seeds")->check(CLI::PositiveNumber);
  linkpred->add_option("--folds", folds, "Cross-validation folds")->check(CLI::Range(2, 1000));

  CLI::App* bench = app.add_subcommand("bench", "Pipeline timing on random graphs");
  add_common_flags(bench, common, false);
  add_pipeline_flags(bench, bench_pipeline, false);
  bench->add_option("--sizes", sizes, "Ascending node counts")->delimiter(',');
  bench->add_option("--avg-degree", avg_degree, "Expected average degree")
      ->check(CLI::PositiveNumber);

  const Log log(err, common.verbosity);
  try {
    std::vector<std::string> names;
    for (const CLI::App* sub : app.get_subcommands({})) names.push_back(sub->get_name());
    std::vector<std::string> args =
        expand_config(std::vector<std::string>(argv + 1, argv + argc), names);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  } catch (const std::exception& e) {
    err << "hone: error: " << e.what() << '\n';
    return 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    apply_seed_env(sub, common);
    if (sub == count) return cmd_count_orbits(sub, common, out, log);
    if (sub == matrix) return cmd_motif_matrix(sub, common, mm, out, log);
    if (sub == embed) return cmd_embed(sub, common, pipeline, y_out, out, log);
    if (sub == linkpred) return cmd_linkpred(sub, common, pipeline, seeds, folds, out, log);
    return cmd_bench(sub, common, bench_pipeline, sizes, avg_degree, out, log);
  } catch (const std::exception& e) {
    err << "hone: error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace hone
