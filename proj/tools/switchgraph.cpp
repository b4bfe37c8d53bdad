#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "switchgraph/chain.hpp"
#include "switchgraph/construct.hpp"
#include "switchgraph/degree_sequence.hpp"
#include "switchgraph/error.hpp"
#include "switchgraph/experiments.hpp"
#include "switchgraph/io.hpp"
#include "switchgraph/oracle.hpp"
#include "switchgraph/stats.hpp"

using namespace switchgraph;
namespace fs = std::filesystem;

namespace {

// Header-addressed CSV rows.
struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw FormatError("missing CSV column '" + name + "'");
  }
  bool has(const std::string& name) const { return std::find(header.begin(), header.end(), name) != header.end(); }
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

Csv read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  Csv csv;
  std::string line;
  if (!std::getline(in, line)) throw FormatError(path.string() + " is empty");
  csv.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto row = split(line);
    if (row.size() != csv.header.size()) throw FormatError(path.string() + ": ragged row '" + line + "'");
    csv.rows.push_back(std::move(row));
  }
  return csv;
}

template <typename T>
T parse_number(const std::string& s) {
  std::istringstream in(s);
  T v{};
  if (!(in >> v) || !(in >> std::ws).eof()) throw FormatError("bad number '" + s + "'");
  return v;
}

// Rejects files that mix several (n, tau, sequence) cells.
void require_single_cell(const Csv& csv, const std::string& what) {
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  auto get = [&](const std::vector<std::string>& row, const char* name) {
    return csv.has(name) ? row[csv.column(name)] : std::string();
  };
  for (const auto& row : csv.rows) seen.insert({get(row, "n"), get(row, "tau"), get(row, "sequence")});
  if (seen.size() > 1) throw FormatError(what + " holds several (n, tau, sequence) cells; split it first");
}

std::ostream& output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
  file.open(path);
  if (!file) throw FormatError("cannot write " + path);
  return file;
}

ConstructionMethod parse_method(const std::string& s) {
  if (s == "hh") return ConstructionMethod::kHavelHakimi;
  if (s == "ccmd") return ConstructionMethod::kCcmd;
  if (s == "ccmdu") return ConstructionMethod::kCcmdu;
  throw ParameterError("unknown construction method: " + s);
}

struct DegseqArgs {
  std::size_t n = 1000;
  double tau = 2.5;
  std::string mode = "canonical";
  std::uint64_t seed = 1;
  std::string out;
};

void cmd_degseq(const DegseqArgs& a) {
  const PowerLawParams params{a.tau, a.n};
  DegreeSequence seq;
  if (a.mode == "canonical") {
    seq = canonical_sequence(params);
  } else {
    Rng rng = make_rng(a.seed);
    seq = sample_iid_sequence(params, rng);
  }
  std::ofstream file;
  io::write_degree_sequence(output(a.out, file), seq);
  if (seq.parity_adjusted()) std::cerr << "note: last degree raised by one to make the total even\n";
  if (!a.out.empty() && a.out != "-") {
    std::ofstream meta(a.out + ".json");
    meta << nlohmann::json{{"n", a.n},         {"tau", a.tau},     {"mode", a.mode},
                           {"seed", a.seed},   {"total", seq.total()},
                           {"parity_adjusted", seq.parity_adjusted()}}
                .dump(2)
         << '\n';
  }
}

struct ConstructArgs {
  std::string method = "hh";
  std::string degrees;
  std::string tie_break = "stable";
  std::uint64_t seed = 1;
  std::string out;
  std::size_t attempts = 1;
};

int cmd_construct(const ConstructArgs& a) {
  const DegreeSequence seq = io::read_degree_sequence(fs::path(a.degrees));
  Rng rng = make_rng(a.seed);
  std::ofstream file;
  if (a.method == "cm") {
    const MultiGraph mg = configuration_model(seq, rng);
    auto& out = output(a.out, file);
    for (const Edge& e : mg.edges()) out << e.u << ' ' << e.v << '\n';
    std::cerr << "self-loops " << mg.num_self_loops() << ", surplus multi-edges " << mg.num_multi_edge_excess() << '\n';
    return 0;
  }
  if (a.method == "ecm") {
    const SimpleGraph g = erased_configuration_model(seq, rng);
    io::write_edge_list(output(a.out, file), g);
    std::cerr << "edges " << g.num_edges() << ", triangles " << count_triangles(g) << '\n';
    return 0;
  }
  const auto result = construct_with_retries(parse_method(a.method), seq, rng, a.attempts, parse_tie_break(a.tie_break));
  if (!result.success()) {
    std::cerr << a.method << " failed after " << result.attempts_used << " attempt(s)\n";
    return 3;
  }
  io::write_edge_list(output(a.out, file), *result.graph);
  std::cerr << "attempts " << result.attempts_used << ", edges " << result.graph->num_edges() << ", triangles "
            << count_triangles(*result.graph) << ", seconds " << result.elapsed.count() << '\n';
  return 0;
}

struct ChainArgs {
  std::string degrees;
  std::string init = "hh";
  std::optional<std::uint64_t> steps;
  std::optional<double> steps_per_n;
  std::string checkpoints;
  std::size_t replicas = 1;
  std::uint64_t seed = 1;
  bool record_deltas = false;
  bool record_success = false;
  std::string out;
};

SimpleGraph initial_graph(const ChainArgs& a, const DegreeSequence& seq) {
  if (a.init.rfind("edgelist:", 0) == 0) {
    SimpleGraph g = io::read_edge_list(fs::path(a.init.substr(9)), seq.size());
    if (!realizes(g, seq)) throw ParameterError("edge list does not realize the degree sequence");
    return g;
  }
  Rng rng = make_rng(a.seed, {~0ULL});
  const auto method = parse_method(a.init);
  auto built = construct_with_retries(method, seq, rng, 1000);
  if (!built.success()) throw std::runtime_error(a.init + " construction failed after 1000 attempts");
  return std::move(*built.graph);
}

void cmd_chain(const ChainArgs& a) {
  const DegreeSequence seq = io::read_degree_sequence(fs::path(a.degrees));
  const std::size_t n = seq.size();
  ObserverSchedule schedule;
  if (!a.checkpoints.empty()) schedule.checkpoints = experiments::parse_checkpoints(a.checkpoints, n);
  std::uint64_t steps = 0;
  if (a.steps) {
    steps = *a.steps;
  } else if (a.steps_per_n) {
    steps = static_cast<std::uint64_t>(std::llround(*a.steps_per_n * static_cast<double>(n)));
  } else if (!schedule.checkpoints.empty()) {
    steps = schedule.checkpoints.back();
  } else {
    throw ParameterError("give --steps, --steps-per-n or --checkpoints");
  }
  if (schedule.checkpoints.empty()) schedule.checkpoints = steps == 0 ? std::vector<std::uint64_t>{0} : std::vector<std::uint64_t>{0, steps};

  const ChainState start(initial_graph(a, seq));
  std::ofstream file;
  auto& out = output(a.out, file);
  out << "replica,t,triangles\n";
  std::map<std::int64_t, std::uint64_t> deltas;
  std::map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> success;  // triangles -> (proposals, accepted)
  MoveStats totals;
  for (std::size_t r = 0; r < a.replicas; ++r) {
    ChainState state = start;
    state.record_success_samples = a.record_success;
    Rng rng = make_rng(a.seed, {r});
    for (const Recording& rec : run(state, steps, schedule, rng)) {
      out << r << ',' << rec.t << ',' << rec.triangles << '\n';
    }
    for (auto [d, c] : state.stats.delta_histogram) deltas[d] += c;
    for (const auto& s : state.stats.success_samples) {
      auto& cell = success[s.triangles_before];
      ++cell.first;
      cell.second += s.accepted;
    }
    totals.accepted += state.stats.accepted;
    totals.rejected_shared_vertex += state.stats.rejected_shared_vertex;
    totals.rejected_existing_edge += state.stats.rejected_existing_edge;
  }
  std::cerr << "proposals " << totals.proposals() << ", accepted " << totals.accepted << ", shared-vertex rejections "
            << totals.rejected_shared_vertex << ", existing-edge rejections " << totals.rejected_existing_edge << '\n';

  const std::string stem = a.out.empty() || a.out == "-" ? "chain" : a.out;
  if (a.record_deltas) {
    std::ofstream d(stem + ".deltas.csv");
    d << "delta,count\n";
    for (auto [delta, count] : deltas) d << delta << ',' << count << '\n';
  }
  if (a.record_success) {
    std::ofstream s(stem + ".success.csv");
    s << "triangles,proposals,accepted\n";
    for (auto [tri, pa] : success) s << tri << ',' << pa.first << ',' << pa.second << '\n';
  }
}

void cmd_tv(const std::string& p, const std::string& q) {
  std::printf("%.17g\n", tv_distance(io::read_histogram_csv(fs::path(p)), io::read_histogram_csv(fs::path(q))));
}

int cmd_mixtime(const std::string& series_path, const std::string& reference_path, double threshold) {
  const Csv csv = read_csv(series_path);
  require_single_cell(csv, series_path);
  const std::size_t ci = csv.column("checkpoint"), vi = csv.column("value"), ki = csv.column("count");
  std::map<std::uint64_t, TriangleHistogram> by_checkpoint;
  TriangleHistogram reference;
  for (const auto& row : csv.rows) {
    const auto value = parse_number<std::int64_t>(row[vi]);
    const auto count = parse_number<std::uint64_t>(row[ki]);
    if (row[ci] == "reference") {
      reference.add(value, count);
    } else {
      by_checkpoint[parse_number<std::uint64_t>(row[ci])].add(value, count);
    }
  }
  if (!reference_path.empty()) reference = io::read_histogram_csv(fs::path(reference_path));
  if (reference.empty()) throw FormatError("no reference histogram (rows with checkpoint 'reference' or --reference)");
  const std::vector<std::pair<std::uint64_t, TriangleHistogram>> series(by_checkpoint.begin(), by_checkpoint.end());
  for (const auto& [t, h] : series) std::printf("%llu,%.6f\n", static_cast<unsigned long long>(t), tv_distance(h, reference));
  const auto mt = empirical_mixing_time(series, reference, threshold);
  if (mt) {
    std::printf("mixing_time,%llu\n", static_cast<unsigned long long>(*mt));
  } else {
    std::printf("mixing_time,none\n");
  }
  return 0;
}

void cmd_fit(const std::string& path, const std::string& y_column, std::optional<double> tau, const std::string& out_path) {
  const Csv csv = read_csv(path);
  const std::size_t ni = csv.column("n"), yi = csv.column(y_column);
  std::vector<std::pair<double, double>> points;
  std::set<std::string> taus;
  for (const auto& row : csv.rows) {
    if (csv.has("tau")) {
      if (tau && parse_number<double>(row[csv.column("tau")]) != *tau) continue;
      taus.insert(row[csv.column("tau")]);
    }
    points.emplace_back(parse_number<double>(row[ni]), parse_number<double>(row[yi]));
  }
  if (taus.size() > 1) throw ParameterError("several tau values in " + path + "; pick one with --tau");
  const auto fit = loglog_fit(points);
  auto j = io::to_json(fit);
  if (tau) j["predicted"] = predicted_exponent(*tau);
  std::ofstream file;
  output(out_path, file) << j.dump(2) << '\n';
}

void cmd_oracle(const std::string& degrees, std::optional<std::size_t> all_n, const std::string& convention,
                std::size_t cap) {
  if (all_n) {
    const auto conv = convention == "up-to-n" ? SequenceConvention::kUpToN : SequenceConvention::kPositiveLengthN;
    if (convention != "up-to-n" && convention != "positive") throw ParameterError("unknown convention: " + convention);
    for (const auto& seq : all_graphical_sequences(*all_n, conv)) {
      std::string line;
      for (int d : seq) line += (line.empty() ? "" : " ") + std::to_string(d);
      std::cout << line << '\n';
    }
    return;
  }
  const DegreeSequence seq = io::read_degree_sequence(fs::path(degrees));
  const auto result = enumerate_graphs(seq, cap);
  nlohmann::json dist = nlohmann::json::object();
  for (auto [value, count] : result.triangle_distribution.counts()) dist[std::to_string(value)] = count;
  std::cout << nlohmann::json{{"graphs", result.graphs.size()},
                              {"max_triangles", result.max_triangles},
                              {"triangle_distribution", dist}}
                   .dump(2)
            << '\n';
}

int cmd_experiment(const std::string& config_path, const std::string& out_dir) {
  std::ifstream in(config_path);
  if (!in) throw FormatError("cannot open " + config_path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
  auto cfg = experiments::config_from_json(j);
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  const auto result = experiments::run(cfg);
  for (const auto& e : result.errors) std::cerr << "warning: " << e << '\n';
  for (const auto& p : experiments::write_outputs(result)) std::cout << p.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simple graphs with prescribed degrees: construction, switch chain, triangle statistics"};
  app.set_version_flag("--version", SWITCHGRAPH_VERSION);
  app.require_subcommand(1);

  DegseqArgs dg;
  auto* degseq = app.add_subcommand("degseq", "power-law degree sequence");
  degseq->add_option("--n", dg.n)->check(CLI::PositiveNumber);
  degseq->add_option("--tau", dg.tau);
  degseq->add_option("--mode", dg.mode)->check(CLI::IsMember({"canonical", "iid"}));
  degseq->add_option("--seed", dg.seed);
  degseq->add_option("--out", dg.out);

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "initial graph from a degree file");
  construct->add_option("--method", ca.method)->check(CLI::IsMember({"hh", "ccmd", "ccmdu", "cm", "ecm"}));
  construct->add_option("--degrees", ca.degrees)->required();
  construct->add_option("--tie-break", ca.tie_break)->check(CLI::IsMember({"stable", "reverse"}));
  construct->add_option("--seed", ca.seed);
  construct->add_option("--out", ca.out);
  construct->add_option("--attempts", ca.attempts)->check(CLI::PositiveNumber);

  ChainArgs ch;
  auto* chain = app.add_subcommand("chain", "run the switch chain");
  chain->add_option("--degrees", ch.degrees)->required();
  chain->add_option("--init", ch.init, "hh, ccmd, ccmdu or edgelist:<path>");
  auto* steps = chain->add_option("--steps", ch.steps);
  chain->add_option("--steps-per-n", ch.steps_per_n)->excludes(steps);
  chain->add_option("--checkpoints", ch.checkpoints, "e.g. 0.1n:0.1n:20n");
  chain->add_option("--replicas", ch.replicas)->check(CLI::PositiveNumber);
  chain->add_option("--seed", ch.seed);
  chain->add_flag("--record-deltas", ch.record_deltas);
  chain->add_flag("--record-success-samples", ch.record_success);
  chain->add_option("--out", ch.out);

  std::string tv_p, tv_q;
  auto* tv = app.add_subcommand("tv", "total variation distance of two histogram files");
  tv->add_option("p", tv_p)->required();
  tv->add_option("q", tv_q)->required();

  std::string mt_series, mt_reference;
  double mt_threshold = 0.1;
  auto* mixtime = app.add_subcommand("mixtime", "empirical mixing time from checkpoint histograms");
  mixtime->add_option("--series", mt_series, "CSV with checkpoint,value,count columns")->required();
  mixtime->add_option("--reference", mt_reference, "reference histogram CSV");
  mixtime->add_option("--threshold", mt_threshold);

  std::string fit_points, fit_column = "mean", fit_out;
  std::optional<double> fit_tau;
  auto* fit = app.add_subcommand("fit", "log-log least squares fit of mean triangles against n");
  fit->add_option("--points", fit_points, "CSV with an n column")->required();
  fit->add_option("--column", fit_column, "column holding the means");
  fit->add_option("--tau", fit_tau);
  fit->add_option("--out", fit_out);

  std::string or_degrees, or_convention = "positive";
  std::optional<std::size_t> or_all;
  std::size_t or_cap = kDefaultEnumerationCap;
  auto* oracle = app.add_subcommand("oracle", "exhaustive enumeration for small n");
  auto* od = oracle->add_option("--degrees", or_degrees);
  oracle->add_option("--all-sequences", or_all)->excludes(od);
  oracle->add_option("--convention", or_convention, "positive or up-to-n");
  oracle->add_option("--cap", or_cap);

  std::string ex_config, ex_out;
  auto* experiment = app.add_subcommand("experiment", "experiment drivers");
  experiment->require_subcommand(1);
  auto* ex_run = experiment->add_subcommand("run", "run an experiment from a JSON config");
  ex_run->add_option("--config", ex_config)->required();
  ex_run->add_option("--out-dir", ex_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*degseq) cmd_degseq(dg);
    if (*construct) return cmd_construct(ca);
    if (*chain) cmd_chain(ch);
    if (*tv) cmd_tv(tv_p, tv_q);
    if (*mixtime) return cmd_mixtime(mt_series, mt_reference, mt_threshold);
    if (*fit) cmd_fit(fit_points, fit_column, fit_tau, fit_out);
    if (*oracle) {
      if (or_degrees.empty() && !or_all) throw ParameterError("give --degrees or --all-sequences");
      cmd_oracle(or_degrees, or_all, or_convention, or_cap);
    }
    if (*ex_run) return cmd_experiment(ex_config, ex_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
