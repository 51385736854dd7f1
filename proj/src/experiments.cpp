#include "hyperpin/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "hyperpin/csv.hpp"
#include "hyperpin/errors.hpp"
#include "hyperpin/random.hpp"
#include "hyperpin/spectral.hpp"

namespace hyperpin {

namespace {

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

std::string fmt(const char* pattern, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, value);
  return buf;
}

std::string render_spectrum(const Spectrum& s) {
  std::ostringstream out;
  out << '{';
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    if (k) out << ", ";
    out << fmt("%.6g", s.values[k].real());
    if (std::abs(s.values[k].imag()) > 1e-12) out << fmt("%+.6gi", s.values[k].imag());
  }
  out << '}';
  return out.str();
}

std::vector<NodeId> all_nodes(int n) {
  std::vector<NodeId> nodes(n);
  std::iota(nodes.begin(), nodes.end(), 0);
  return nodes;
}

bool is_consensus(const ExperimentConfig& cfg) { return cfg.dynamics.model == "consensus"; }

std::string prepare(const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  return out_dir;
}

// Three-node example: edges ({3},{1}) and ({1},{2,3}) in 1-based labels.
DirectedHypergraph three_node_hypergraph() {
  return DirectedHypergraph::build(3, {make_edge({2}, {0}), make_edge({0}, {1, 2})});
}

void write_selection_csv(const std::string& path, const PinningProblem& problem,
                         const std::vector<SelectionResult>& results) {
  CsvWriter csv(path, {"method", "cost", "lower_bound", "feasible", "lambda_max", "chosen", "wall_time_ms"});
  for (const auto& r : results) {
    csv.cell(r.method).cell(r.cost).cell(r.lower_bound).cell(r.verdict.feasible);
    csv.cell(r.verdict.lambda_max()).cell(format_chosen_sets(problem, r.chosen)).cell(r.wall_time_ms);
    csv.end_row();
  }
}

std::string selection_line(const PinningProblem& problem, const SelectionResult& r) {
  std::ostringstream out;
  out << "method=" << r.method << " cost=" << (r.lower_bound ? ">=" : "") << r.cost;
  if (!r.lower_bound) {
    out << " chosen=" << format_chosen_sets(problem, r.chosen) << " lambda_max=" << fmt("%.6g", r.verdict.lambda_max());
  }
  return out.str();
}

// Consensus example on a ring with explicit pins (or none), x_i(0) = i + 1.
struct ConsensusRun {
  Trajectory traj;
  std::string prefix;
};

ConsensusRun consensus_example(const std::string& name, int n, const std::vector<std::vector<int>>& pins,
                               double kappa, const std::string& out_dir, CommandOutput& out) {
  SimConfig sim;
  sim.graph = nearest_neighbor_3body(n);
  if (!pins.empty()) sim.pinning = PinningConfig::homogeneous(pins, kappa);
  sim.model = consensus_model();
  sim.initial_states = index_initial_states(n);
  sim.pinner_init = Eigen::VectorXd::Constant(1, n + 1.0);
  sim.t_end = 50.0;
  sim.step = 1e-2;
  sim.record_stride = 10;
  ConsensusRun run{integrate(sim), join(out_dir, name)};
  write_trajectory_csv(run.prefix, run.traj);
  out.files.push_back(run.prefix + "_trajectory.csv");
  out.files.push_back(run.prefix + "_error.csv");
  if (sim.pinning) {
    const auto block = reduced_block(laplacian(sim.graph), *sim.pinning);
    out.lines.push_back(name + ": spectrum(L22) = " + render_spectrum(block.spectrum));
  }
  return run;
}

double spread(const Eigen::MatrixXd& states) { return states.maxCoeff() - states.minCoeff(); }

void lorenz_summary(const LorenzExperimentReport& r, CommandOutput& out) {
  std::ostringstream line;
  line << "lorenz seed=" << r.seed << " scc=" << r.scc_size << " pinned=" << r.pinned
       << " pinned_percent=" << fmt("%.3g", r.pinned_percent) << " lambda_max=" << fmt("%.4g", r.lambda_max)
       << " lambda_max_at_kappa=" << fmt("%.4g", r.lambda_max_at_kappa)
       << " base_exponent=" << fmt("%.4g", r.base_exponent) << " uncontrolled_unstable=" << r.uncontrolled_unstable
       << " error_ratio=" << fmt("%.3g", r.error_ratio);
  out.lines.push_back(line.str());
  if (!(r.lambda_max < 0.0)) out.failures.push_back("lorenz lambda_max_not_negative " + fmt("%.6g", r.lambda_max));
  if (r.blowup) out.failures.push_back("lorenz blowup");
}

}  // namespace

// ---------------------------------------------------------------------------

DirectedHypergraph build_topology(const ExperimentConfig& cfg) {
  const auto& t = cfg.topology;
  if (t.kind == "ring") return nearest_neighbor_3body(t.n, parse_orientation(t.orientation), cfg.dynamics.sigma);
  if (t.kind == "er") {
    ErParams params;
    params.n = t.n;
    params.p = t.p;
    params.max_order = t.o;
    params.sigma = cfg.dynamics.sigma;
    params.candidate_cap = t.candidate_cap;
    return er_hypergraph(params, t.seed);
  }
  if (t.path.empty()) throw ConfigError("topology.kind = file needs topology.path");
  return read_hypergraph_file(t.path);
}

DirectedHypergraph working_topology(const ExperimentConfig& cfg) {
  auto graph = build_topology(cfg);
  if (cfg.topology.kind == "er") return giant_scc(graph).sub;
  return graph;
}

MsfModel build_model(const ExperimentConfig& cfg) {
  return is_consensus(cfg) ? consensus_model() : lorenz_arctan_model();
}

LyapunovSettings build_lyapunov(const ExperimentConfig& cfg) {
  LyapunovSettings s;
  s.transient_time = cfg.msf.transient;
  s.horizon = cfg.msf.horizon;
  s.renorm_interval = cfg.msf.renorm;
  s.step = cfg.msf.step;
  s.validate();
  return s;
}

MasterStability build_msf(const ExperimentConfig& cfg) {
  if (is_consensus(cfg)) return MasterStability::consensus();
  return MasterStability::from_model(build_model(cfg), build_lyapunov(cfg));
}

PinningConfig build_candidates(const ExperimentConfig& cfg, int n) {
  if (cfg.selection.candidates == "pins") {
    const auto sets = parse_head_sets(cfg.selection.pins);
    if (sets.empty()) throw ConfigError("selection.candidates = pins needs selection.pins");
    return PinningConfig::homogeneous(sets, cfg.dynamics.kappa);
  }
  return PinningConfig::singletons(all_nodes(n), cfg.dynamics.kappa);
}

SimConfig build_simulation(const ExperimentConfig& cfg, const DirectedHypergraph& graph,
                           std::optional<PinningConfig> pinning) {
  SimConfig sim;
  sim.graph = graph;
  sim.pinning = std::move(pinning);
  sim.model = build_model(cfg);
  const bool consensus = is_consensus(cfg);
  sim.t_end = cfg.dynamics.t_end > 0.0 ? cfg.dynamics.t_end : (consensus ? 50.0 : 100.0);
  sim.step = cfg.dynamics.step > 0.0 ? cfg.dynamics.step : (consensus ? 1e-2 : 1e-3);
  sim.record_stride = cfg.dynamics.record_stride;
  const int n = graph.size(), dim = sim.model.dim;
  if (cfg.dynamics.init == "gaussian") {
    sim.initial_states = gaussian_initial_states(n, dim, cfg.dynamics.init_variance, derive_seed(cfg.topology.seed, 1));
  } else {
    sim.initial_states = index_initial_states(n) * Eigen::RowVectorXd::Ones(dim);
  }
  if (!cfg.dynamics.pinner_init.empty()) {
    const auto values = parse_double_list(cfg.dynamics.pinner_init);
    if (static_cast<int>(values.size()) != dim) throw ConfigError("dynamics.pinner_init needs one value per component");
    sim.pinner_init = Eigen::Map<const Eigen::VectorXd>(values.data(), dim);
  } else if (consensus) {
    sim.pinner_init = Eigen::VectorXd::Constant(1, n + 1.0);
  } else {
    sim.pinner_init = settled_reference(sim.model, 100.0, sim.step);
  }
  return sim;
}

void write_trajectory_csv(const std::string& prefix, const Trajectory& traj) {
  CsvWriter states(prefix + "_trajectory.csv", {"t", "node", "component", "value"});
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const auto& x = traj.states[k];
    for (int i = 0; i < x.rows(); ++i) {
      for (int c = 0; c < x.cols(); ++c) states.cell(traj.times[k]).cell(i).cell(c).cell(x(i, c)).end_row();
    }
    for (int c = 0; c < traj.pinner[k].size(); ++c) {
      states.cell(traj.times[k]).cell("p").cell(c).cell(traj.pinner[k][c]).end_row();
    }
  }
  CsvWriter err(prefix + "_error.csv", {"t", "error_norm"});
  for (std::size_t k = 0; k < traj.times.size(); ++k) err.cell(traj.times[k]).cell(traj.error_norm[k]).end_row();
}

std::string write_resolved_config(const ExperimentConfig& cfg, const std::string& out_dir) {
  prepare(out_dir);
  const auto path = join(out_dir, "resolved_config.ini");
  std::ofstream out(path);
  cfg.write(out);
  if (!out) throw Error("cannot write " + path);
  return path;
}

// ---------------------------------------------------------------------------

Table1Row table1_row(int n, int replicates, std::uint64_t seed, Execution exec, RingOrientation orientation) {
  if (replicates < 1) throw ConfigError("table1 needs at least one replicate");
  const PinningProblem problem(nearest_neighbor_3body(n, orientation),
                               PinningConfig::singletons(all_nodes(n)), MasterStability::consensus());
  Table1Row row;
  row.n = n;
  const auto greedy = greedy_select(problem, exec);
  row.heuristic = greedy.cost;
  ExhaustiveOptions opts;
  opts.incumbent = greedy.chosen;
  row.min = exhaustive_min(problem, opts, exec).cost;

  std::vector<int> costs(replicates);
  for_each_index(costs.size(), exec, [&](std::size_t r) {
    costs[r] = random_select(problem, derive_seed(seed, static_cast<std::uint64_t>(n), r)).cost;
  });
  long long total = 0;
  for (int c : costs) {
    total += c;
    ++row.random_histogram[c];
  }
  row.random_mean = static_cast<double>(total) / replicates;
  auto share = [&](int cost) {
    const auto it = row.random_histogram.find(cost);
    return it == row.random_histogram.end() ? 0.0 : static_cast<double>(it->second) / replicates;
  };
  row.p_min = share(row.min);
  row.p_second = share(row.min + 1);
  return row;
}

Table2Cell table2_cell(double p, int o, std::uint64_t seed, const Table2Options& options, Execution exec) {
  if (options.replicates < 1) throw ConfigError("table2 needs at least one replicate");
  struct Replicate {
    int scc = 0, greedy = 0, degree = 0, random = 0, min = 0;
    bool lower_bound = false;
  };
  const std::uint64_t cell_key = (static_cast<std::uint64_t>(o) << 32) ^ static_cast<std::uint64_t>(std::llround(p * 1e6));
  std::vector<Replicate> reps(options.replicates);
  for_each_index(reps.size(), exec, [&](std::size_t r) {
    ErParams params;
    params.p = p;
    params.max_order = o;
    params.sigma = options.sigma;
    params.candidate_cap = options.candidate_cap;
    const auto scc = giant_scc(er_hypergraph(params, derive_seed(seed, cell_key, 2 * r)));
    const int n = scc.sub.size();
    const PinningProblem problem(scc.sub, PinningConfig::singletons(all_nodes(n)), MasterStability::consensus());
    Replicate& rep = reps[r];
    rep.scc = n;
    const auto greedy = greedy_select(problem, Execution::Serial);
    rep.greedy = greedy.cost;
    rep.degree = degree_select(problem).cost;
    rep.random = random_select(problem, derive_seed(seed, cell_key, 2 * r + 1)).cost;
    if (options.exhaustive) {
      ExhaustiveOptions opts;
      opts.max_cardinality = options.cap;
      opts.incumbent = greedy.chosen;
      const auto ex = exhaustive_min(problem, opts, Execution::Serial);
      rep.min = ex.cost;
      rep.lower_bound = ex.lower_bound;
    }
  });

  Table2Cell cell;
  cell.p = p;
  cell.o = o;
  double scc = 0, gr = 0, dg = 0, rn = 0, mn = 0;
  for (const auto& rep : reps) {
    scc += rep.scc;
    gr += 100.0 * rep.greedy / rep.scc;
    dg += 100.0 * rep.degree / rep.scc;
    rn += 100.0 * rep.random / rep.scc;
    mn += 100.0 * rep.min / rep.scc;
    if (rep.lower_bound) {
      cell.min_lower_bound = true;
    } else {
      ++cell.min_solved;
    }
  }
  const double count = static_cast<double>(reps.size());
  cell.mean_scc = scc / count;
  cell.greedy_pct = gr / count;
  cell.degree_pct = dg / count;
  cell.random_pct = rn / count;
  if (options.exhaustive) {
    cell.min_pct = mn / count;
  } else {
    cell.min_pct = std::numeric_limits<double>::quiet_NaN();
    cell.min_solved = 0;
  }
  return cell;
}

// ---------------------------------------------------------------------------

CommandOutput cmd_generate(const ExperimentConfig& cfg, const std::string& out_dir) {
  prepare(out_dir);
  CommandOutput out;
  const auto graph = build_topology(cfg);
  const auto path = join(out_dir, "hypergraph.txt");
  {
    std::ofstream file(path);
    write_hypergraph(file, graph);
  }
  out.files.push_back(path);

  CsvWriter deg(join(out_dir, "degrees.csv"), {"node", "d_in", "d_out", "delta"});
  const auto d = degrees(graph);
  for (int i = 0; i < graph.size(); ++i) deg.cell(i).cell(d[i].d_in).cell(d[i].d_out).cell(d[i].delta()).end_row();
  out.files.push_back(deg.path());

  const auto components = strongly_connected_components(graph);
  CsvWriter scc(join(out_dir, "scc.csv"), {"component", "node"});
  std::size_t largest = 0;
  for (std::size_t c = 0; c < components.size(); ++c) {
    largest = std::max(largest, components[c].size());
    for (NodeId v : components[c]) scc.cell(c).cell(v).end_row();
  }
  out.files.push_back(scc.path());
  if (cfg.topology.kind == "er") {
    const auto giant = giant_scc(graph);
    const auto sub_path = join(out_dir, "giant_scc.txt");
    std::ofstream file(sub_path);
    write_hypergraph(file, giant.sub);
    out.files.push_back(sub_path);
  }
  out.lines.push_back("nodes=" + std::to_string(graph.size()) + " edges=" + std::to_string(graph.edges().size()) +
                      " components=" + std::to_string(components.size()) + " giant_scc=" + std::to_string(largest));
  return out;
}

CommandOutput cmd_spectrum(const ExperimentConfig& cfg, const std::string& out_dir) {
  prepare(out_dir);
  CommandOutput out;
  const auto graph = working_topology(cfg);
  const auto lap = laplacian(graph);
  write_matrix_csv(join(out_dir, "laplacian.csv"), lap);
  const auto spec = spectrum(lap);
  write_spectrum_csv(join(out_dir, "laplacian_spectrum.csv"), spec.values);
  out.files = {join(out_dir, "laplacian.csv"), join(out_dir, "laplacian_spectrum.csv")};
  out.lines.push_back("spectrum(L) = " + render_spectrum(spec));
  const auto sets = parse_head_sets(cfg.selection.pins);
  if (!sets.empty()) {
    const auto pins = PinningConfig::homogeneous(sets, cfg.dynamics.kappa);
    const auto block = reduced_block(lap, pins);
    write_matrix_csv(join(out_dir, "l22.csv"), block.l22);
    write_spectrum_csv(join(out_dir, "l22_spectrum.csv"), block.spectrum.values);
    const auto mk = spectrum(m_kappa(lap, pins, cfg.dynamics.kappa));
    write_spectrum_csv(join(out_dir, "m_kappa_spectrum.csv"), mk.values);
    out.files.insert(out.files.end(), {join(out_dir, "l22.csv"), join(out_dir, "l22_spectrum.csv"),
                                       join(out_dir, "m_kappa_spectrum.csv")});
    out.lines.push_back("spectrum(L22) = " + render_spectrum(block.spectrum));
    out.lines.push_back("spectrum(M(kappa)) = " + render_spectrum(mk));
  }
  return out;
}

CommandOutput cmd_msf(const ExperimentConfig& cfg, const std::string& out_dir, Execution exec) {
  prepare(out_dir);
  CommandOutput out;
  const auto model = build_model(cfg);
  const auto settings = is_consensus(cfg) ? LyapunovSettings::linear() : build_lyapunov(cfg);
  MsfGridSpec grid{cfg.msf.re_min, cfg.msf.re_max, cfg.msf.im_min, cfg.msf.im_max, cfg.msf.re_points,
                   cfg.msf.im_points};
  const auto cells = msf_grid(model, grid, settings, exec);
  CsvWriter csv(join(out_dir, "msf_grid.csv"), {"re", "im", "lambda"});
  for (const auto& c : cells) csv.cell(c.re).cell(c.im).cell(c.lambda).end_row();
  out.files.push_back(csv.path());
  const auto msf = is_consensus(cfg) ? MasterStability::consensus() : MasterStability::from_model(model, settings);
  out.lines.push_back("Lambda(0) = " + fmt("%.6g", msf(Complex(0.0, 0.0))));
  if (const auto mu = type2_threshold(msf, cfg.msf.mu_max)) {
    out.lines.push_back("type II threshold mu_bar = " + fmt("%.6g", *mu));
  } else {
    out.lines.push_back("not type II up to mu_max = " + fmt("%.6g", cfg.msf.mu_max));
  }
  return out;
}

CommandOutput cmd_select(const ExperimentConfig& cfg, const std::string& out_dir, Execution exec) {
  prepare(out_dir);
  CommandOutput out;
  const auto graph = working_topology(cfg);
  const auto msf = build_msf(cfg);
  const auto& method = cfg.selection.method;
  if (method == "sweep") {
    const auto report = partition_sweep(graph, msf, exec);
    CsvWriter csv(join(out_dir, "sweep.csv"), {"partition_id", "feasible", "min_cost", "greedy_cost"});
    for (const auto& r : report.rows) csv.cell(static_cast<long long>(r.partition_id)).cell(r.feasible).cell(r.min_cost).cell(r.greedy_cost).end_row();
    out.files.push_back(csv.path());
    out.lines.push_back("total=" + std::to_string(report.total) + " feasible=" + std::to_string(report.feasible) +
                        " greedy_optimal=" + std::to_string(report.greedy_optimal) +
                        " fraction=" + fmt("%.4f", report.optimal_fraction()) +
                        " max_excess=" + std::to_string(report.max_excess));
    return out;
  }
  const PinningProblem problem(graph, build_candidates(cfg, graph.size()), msf);
  SelectionResult result;
  if (method == "greedy") {
    result = greedy_select(problem, exec);
    CsvWriter csv(join(out_dir, "greedy_iterations.csv"), {"iteration", "candidate", "score"});
    for (std::size_t it = 0; it < result.iterations.size(); ++it) {
      const auto& scores = result.iterations[it].scores;
      for (std::size_t c = 0; c < scores.size(); ++c) {
        if (!std::isnan(scores[c])) csv.cell(it).cell(c).cell(scores[c]).end_row();
      }
    }
    out.files.push_back(csv.path());
  } else if (method == "exhaustive") {
    ExhaustiveOptions opts;
    opts.max_cardinality = cfg.selection.cap;
    opts.incumbent = greedy_select(problem, exec).chosen;
    result = exhaustive_min(problem, opts, exec);
  } else if (method == "random") {
    result = random_select(problem, cfg.topology.seed);
  } else {
    result = degree_select(problem);
  }
  write_selection_csv(join(out_dir, "selection.csv"), problem, {result});
  out.files.push_back(join(out_dir, "selection.csv"));
  out.lines.push_back(selection_line(problem, result));
  if (!result.lower_bound && !result.verdict.feasible) out.failures.push_back("select result_not_feasible");
  return out;
}

CommandOutput cmd_simulate(const ExperimentConfig& cfg, const std::string& out_dir, Execution exec) {
  prepare(out_dir);
  CommandOutput out;
  const auto graph = working_topology(cfg);
  std::optional<PinningConfig> pinning;
  const auto sets = parse_head_sets(cfg.selection.pins);
  if (!sets.empty()) pinning = PinningConfig::homogeneous(sets, cfg.dynamics.kappa);
  auto sim = build_simulation(cfg, graph, pinning);
  sim.exec = exec;
  try {
    const auto traj = integrate(sim);
    write_trajectory_csv(join(out_dir, "simulation"), traj);
    out.files = {join(out_dir, "simulation_trajectory.csv"), join(out_dir, "simulation_error.csv")};
    out.lines.push_back("error_norm(0) = " + fmt("%.6g", traj.error_norm.front()) +
                        " error_norm(t_end) = " + fmt("%.6g", traj.error_norm.back()) +
                        " ratio = " + fmt("%.3g", traj.error_ratio()));
  } catch (const BlowupError& e) {
    out.failures.push_back("simulate blowup t=" + fmt("%.6g", e.time()));
  }
  return out;
}

CommandOutput cmd_table1(const ExperimentConfig& cfg, const std::string& out_dir, Execution exec) {
  prepare(out_dir);
  if (cfg.selection.n_min < 5 || cfg.selection.n_max > 20) throw ConfigError("table1 range must lie within 5..20");
  CommandOutput out;
  CsvWriter csv(join(out_dir, "table1.csv"), {"n", "min", "heuristic", "random_mean", "p_min", "p_second"});
  const auto orientation = parse_orientation(cfg.topology.orientation);
  for (int n = cfg.selection.n_min; n <= cfg.selection.n_max; ++n) {
    const auto row = table1_row(n, cfg.selection.replicates, cfg.topology.seed, exec, orientation);
    csv.cell(row.n).cell(row.min).cell(row.heuristic).cell(row.random_mean).cell(row.p_min).cell(row.p_second).end_row();
    out.lines.push_back("N=" + std::to_string(n) + " min=" + std::to_string(row.min) +
                        " heuristic=" + std::to_string(row.heuristic) + " random_mean=" + fmt("%.2f", row.random_mean) +
                        " P(" + std::to_string(row.min) + ")=" + fmt("%.2f", row.p_min) + " P(" +
                        std::to_string(row.min + 1) + ")=" + fmt("%.2f", row.p_second));
    if (row.heuristic < row.min) out.failures.push_back("table1 greedy_below_min n=" + std::to_string(n));
  }
  out.files.push_back(csv.path());
  return out;
}

CommandOutput cmd_table2(const ExperimentConfig& cfg, const std::string& out_dir, Execution exec) {
  prepare(out_dir);
  CommandOutput out;
  Table2Options options;
  options.replicates = cfg.selection.replicates;
  options.cap = cfg.selection.cap;
  options.candidate_cap = cfg.topology.candidate_cap;
  options.sigma = cfg.dynamics.sigma;
  options.exhaustive = cfg.selection.exhaustive != 0;
  CsvWriter csv(join(out_dir, "table2.csv"), {"p", "o", "mean_scc", "min_pct", "min_lower_bound", "min_solved",
                                              "greedy_pct", "degree_pct", "random_pct"});
  for (double p : parse_double_list(cfg.selection.p_list)) {
    for (int o : parse_int_list(cfg.selection.o_list)) {
      const auto c = table2_cell(p, o, cfg.topology.seed, options, exec);
      csv.cell(c.p).cell(c.o).cell(c.mean_scc).cell(c.min_pct).cell(c.min_lower_bound).cell(c.min_solved);
      csv.cell(c.greedy_pct).cell(c.degree_pct).cell(c.random_pct).end_row();
      std::string min_text = options.exhaustive
                                 ? (c.min_lower_bound ? ">=" : "") + fmt("%.1f", c.min_pct) + " (" +
                                       std::to_string(c.min_solved) + ")"
                                 : "skipped";
      out.lines.push_back("p=" + fmt("%g", p) + " o=" + std::to_string(o) + " scc=" + fmt("%.1f", c.mean_scc) +
                          " min=" + min_text + " greedy=" + fmt("%.2f", c.greedy_pct) +
                          " degree=" + fmt("%.2f", c.degree_pct) + " random=" + fmt("%.2f", c.random_pct));
    }
  }
  out.files.push_back(csv.path());
  return out;
}

CommandOutput cmd_example(const std::string& name, const ExperimentConfig& cfg, const std::string& out_dir,
                          Execution exec) {
  prepare(out_dir);
  CommandOutput out;
  if (name == "fig3") {
    const auto graph = three_node_hypergraph();
    const auto lap = laplacian(graph);
    const auto block = reduced_block(lap, PinningConfig::singletons(std::vector<NodeId>{2}));
    write_matrix_csv(join(out_dir, "fig3_laplacian.csv"), lap);
    write_spectrum_csv(join(out_dir, "fig3_l22_spectrum.csv"), block.spectrum.values);
    out.files = {join(out_dir, "fig3_laplacian.csv"), join(out_dir, "fig3_l22_spectrum.csv")};
    std::ostringstream l;
    l << "L = [";
    for (int i = 0; i < lap.rows(); ++i) {
      l << (i ? "; " : "");
      for (int j = 0; j < lap.cols(); ++j) l << (j ? " " : "") << fmt("%g", lap(i, j));
    }
    l << ']';
    out.lines.push_back(l.str());
    out.lines.push_back("pin node 3: spectrum(L22) = " + render_spectrum(block.spectrum));
    const auto& v = block.spectrum.values;
    const bool ok = v.size() == 2 && std::abs(v[0] - Complex(0.5, 0.0)) < 1e-9 && std::abs(v[1] - Complex(1.0, 0.0)) < 1e-9;
    if (!ok) out.failures.push_back("fig3 spectrum_mismatch");
  } else if (name == "fig2a" || name == "fig2b") {
    const bool hyper = name == "fig2b";
    const std::vector<std::vector<int>> pins =
        hyper ? std::vector<std::vector<int>>{{0, 1}, {2, 3}, {4, 6}} : std::vector<std::vector<int>>{{0}, {2}, {4}};
    const auto run = consensus_example(name, 7, pins, 5.0, out_dir, out);
    const double ratio = run.traj.error_ratio();
    out.lines.push_back(name + ": error ratio = " + fmt("%.3g", ratio));
    if (hyper && !(ratio <= 1e-2)) out.failures.push_back("fig2b not_converged ratio=" + fmt("%.3g", ratio));
    if (!hyper && !(ratio >= 1e-1)) out.failures.push_back("fig2a unexpectedly_converged ratio=" + fmt("%.3g", ratio));
  } else if (name == "fig4") {
    const auto run = consensus_example(name, 6, {}, 0.0, out_dir, out);
    const double s0 = spread(run.traj.states.front()), s1 = spread(run.traj.states.back());
    out.lines.push_back("fig4: state spread " + fmt("%.3g", s0) + " -> " + fmt("%.3g", s1));
    if (!(s1 > s0)) out.failures.push_back("fig4 not_diverging");
  } else if (name == "fig6" || name == "lorenz") {
    LorenzExperimentSettings settings;
    settings.lyapunov = build_lyapunov(cfg);
    settings.exec = exec;
    const auto report = run_lorenz_experiment(cfg.topology.seed, settings);
    lorenz_summary(report, out);
    if (!report.blowup && !(report.error_ratio <= 1e-3)) {
      out.failures.push_back("lorenz error_ratio " + fmt("%.3g", report.error_ratio));
    }
    if (name == "fig6") {
      if (!report.blowup) {
        write_trajectory_csv(join(out_dir, "fig6_controlled"), report.trajectory);
        out.files.push_back(join(out_dir, "fig6_controlled_trajectory.csv"));
      }
      ErParams params;
      params.p = settings.p;
      params.max_order = settings.max_order;
      params.sigma = settings.sigma;
      SimConfig sim;
      sim.graph = giant_scc(er_hypergraph(params, cfg.topology.seed)).sub;
      sim.model = lorenz_arctan_model();
      sim.initial_states = gaussian_initial_states(sim.graph.size(), 3, settings.init_variance,
                                                   derive_seed(cfg.topology.seed, 1));
      sim.pinner_init = settled_reference(sim.model, 100.0, settings.step);
      sim.t_end = settings.t_end;
      sim.step = settings.step;
      sim.record_stride = settings.record_stride;
      sim.exec = exec;
      const auto free_run = integrate(sim);
      write_trajectory_csv(join(out_dir, "fig6_uncontrolled"), free_run);
      out.files.push_back(join(out_dir, "fig6_uncontrolled_trajectory.csv"));
      out.lines.push_back("uncontrolled error ratio = " + fmt("%.3g", free_run.error_ratio()));
    }
  } else {
    throw UnknownExample("unknown example '" + name + "' (expected fig2a, fig2b, fig3, fig4, fig6 or lorenz)");
  }
  return out;
}

CommandOutput cmd_sweep10(const ExperimentConfig& cfg, const std::string& out_dir, Execution exec) {
  prepare(out_dir);
  CommandOutput out;
  const auto graph = nearest_neighbor_3body(10, parse_orientation(cfg.topology.orientation));
  const auto report = partition_sweep(graph, MasterStability::consensus(), exec);
  CsvWriter csv(join(out_dir, "sweep10.csv"), {"partition_id", "feasible", "min_cost", "greedy_cost"});
  for (const auto& r : report.rows) {
    csv.cell(static_cast<long long>(r.partition_id)).cell(r.feasible).cell(r.min_cost).cell(r.greedy_cost).end_row();
  }
  out.files.push_back(csv.path());
  out.lines.push_back("total=" + std::to_string(report.total) + " feasible=" + std::to_string(report.feasible) +
                      " greedy_optimal=" + std::to_string(report.greedy_optimal) +
                      " fraction=" + fmt("%.4f", report.optimal_fraction()) +
                      " max_excess=" + std::to_string(report.max_excess));
  if (report.total != bell_number(10)) out.failures.push_back("sweep10 partition_count " + std::to_string(report.total));
  return out;
}

}  // namespace hyperpin
