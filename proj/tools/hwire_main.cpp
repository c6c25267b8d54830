#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hwire/experiment.hpp"
#include "hwire/generates.hpp"
#include "hwire/lattice.hpp"
#include "hwire/transforms.hpp"

namespace {

using namespace hwire;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << payload;
}

// Info lines go to stdout when the payload went to a file, stderr otherwise,
// so piped payloads stay parseable.
std::ostream& info_stream(const std::string& output_path) {
  return output_path.empty() ? std::cerr : std::cout;
}

void print_error(const Error& e) {
  nlohmann::ordered_json j;
  j["error"] = e.kind();
  j["message"] = e.what();
  std::cerr << j.dump() << "\n";
}

int error_code(const Error& e) {
  std::string kind = e.kind();
  if (kind == "resource" || kind == "overflow") return kExitResource;
  if (kind == "generation") return kExitVerifyFailure;
  if (kind == "validation" || kind == "domain") return kExitUsage;
  return kExitResource;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ValidationError("bad integer list item '" + item + "'");
    }
  }
  if (out.empty()) throw ValidationError("empty integer list");
  return out;
}

std::string metrics_json(const WiringMetrics& m, const VerificationReport& rep,
                         const GeneratingSet& s) {
  nlohmann::ordered_json j;
  j["volume"] = m.volume;
  j["diameter"] = m.diameter;
  j["diameter_mode"] = to_string(m.diameter_mode);
  j["load"] = m.load;
  j["road_length_total"] = m.road_length_total;
  if (rep.embedding_ok()) {
    ThickBounds tb = thick_embedding_bounds(m, s);
    j["thick_volume_bound"] = tb.volume_bound;
    j["thick_diameter_bound"] = tb.diameter_bound;
  }
  j["verify"] = nlohmann::ordered_json::parse(report_to_json(rep));
  return j.dump();
}

struct CommonFlags {
  std::string genset = "x,y";
  std::uint64_t seed = 0;
  double load_const = 3.0;
  int max_attempts = 200;
  int relief_factor = 1000;
  int alpha = 4;
  std::size_t ball_cap = kDefaultBallCap;
  std::string output;
  std::string graph_path;
};

int cmd_ball(const std::string& genset_text, int radius, int from,
             std::size_t ball_cap, const std::string& output) {
  GeneratingSet s = parse_generating_set(genset_text);
  Ball ball(s, radius, ball_cap);
  if (from < 0) from = radius;
  std::ostringstream os;
  for (int r = from; r <= radius; ++r)
    os << r << "," << ball.count_within(r) << "\n";
  write_output(output, os.str());
  return kExitOk;
}

int cmd_wire(const CommonFlags& cf) {
  GeneratingSet s = parse_generating_set(cf.genset);
  ensure_generates_heisenberg(s);
  FiniteGraph g = parse_edge_list(read_file(cf.graph_path));
  RandomWiringConfig wc{cf.alpha, cf.load_const, cf.max_attempts, cf.seed};
  GenerateResult gen = generate(g, s, wc, cf.ball_cap);
  VerificationReport rep = verify(gen.wiring, gen.threshold);
  WiringMetrics met = metrics_auto(gen.wiring, MetricsLimits{cf.ball_cap, 2048});

  write_output(cf.output, wiring_to_json(gen.wiring));
  nlohmann::ordered_json j =
      nlohmann::ordered_json::parse(metrics_json(met, rep, s));
  nlohmann::ordered_json out;
  out["n"] = g.vertex_count();
  out["r"] = gen.radius;
  out["attempts"] = gen.attempts;
  out["threshold"] = gen.threshold;
  for (auto& [k, v] : j.items()) out[k] = v;
  info_stream(cf.output) << out.dump() << "\n";
  bool ok = rep.wiring_ok() && rep.passed(kCheckNeighborsDistinct);
  return ok ? kExitOk : kExitVerifyFailure;
}

int cmd_embed(const CommonFlags& cf) {
  GeneratingSet s = parse_generating_set(cf.genset);
  ensure_generates_heisenberg(s);
  FiniteGraph g = parse_edge_list(read_file(cf.graph_path));
  PipelineConfig pc;
  pc.wiring = RandomWiringConfig{cf.alpha, cf.load_const, cf.max_attempts,
                                 cf.seed};
  pc.relief.factor = cf.relief_factor;
  pc.ball_cap = cf.ball_cap;
  PipelineResult res = embed_graph(g, s, pc);

  write_output(cf.output, wiring_to_json(res.wiring));
  std::ostream& info = info_stream(cf.output);
  for (const StageReport& st : res.stages)
    info << stage_report_to_json(st) << "\n";
  return res.all_verified() ? kExitOk : kExitVerifyFailure;
}

int cmd_verify(const std::string& input, std::optional<int> k,
               bool exact_diameter, std::size_t ball_cap,
               const std::string& output) {
  CombinatorialWiring f = wiring_from_json(read_file(input));
  VerificationReport rep = verify(f, k);
  WiringMetrics met =
      exact_diameter
          ? metrics_of(f, DiameterMode::exact, MetricsLimits{ball_cap, 1u << 20})
          : metrics_auto(f, MetricsLimits{ball_cap, 2048});
  write_output(output, metrics_json(met, rep, f.genset) + "\n");
  return rep.all_ok() ? kExitOk : kExitVerifyFailure;
}

int cmd_convert_rd(const std::string& input, const std::string& retarget,
                   const std::string& output) {
  RdEmbedding drawing = rd_embedding_from_json(read_file(input));
  ConvertResult conv = convert_embedding(drawing);

  const CombinatorialWiring* final_wiring = &conv.wiring;
  std::optional<RetargetResult> rt;
  if (!retarget.empty()) {
    GeneratingSet s =
        parse_generating_set(retarget, lattice_group(drawing.dim));
    rt = retarget_zd(conv.wiring, s);
    final_wiring = &rt->wiring;
  }
  write_output(output, wiring_to_json(*final_wiring));

  nlohmann::ordered_json j;
  j["dim"] = drawing.dim;
  j["scale"] = nlohmann::ordered_json::array({conv.scale_num, conv.scale_den});
  std::size_t total_cubes = 0;
  int max_depth = 0;
  for (const LatticePathResult& p : conv.edge_paths) {
    total_cubes += p.cube_count;
    max_depth = std::max(max_depth, p.bfs_depth);
  }
  j["cubes_total"] = total_cubes;
  j["bfs_depth_max"] = max_depth;
  j["verify"] = nlohmann::ordered_json::parse(report_to_json(conv.report));
  if (rt) {
    j["retarget_m"] = rt->m;
    j["retarget_M"] = rt->M;
    j["retarget_verify"] =
        nlohmann::ordered_json::parse(report_to_json(rt->report));
  }
  info_stream(output) << j.dump() << "\n";
  bool ok = conv.report.embedding_ok() && (!rt || rt->report.embedding_ok());
  return ok ? kExitOk : kExitVerifyFailure;
}

int cmd_experiment(const CommonFlags& cf, const std::string& n_list, int degree,
                   int seeds, bool full, bool timing, int jobs) {
  ExperimentConfig ec;
  ec.ns = parse_int_list(n_list);
  ec.degree = degree;
  ec.seeds = seeds;
  ec.base_seed = cf.seed;
  ec.alpha = cf.alpha;
  ec.load_threshold_constant = cf.load_const;
  ec.max_attempts = cf.max_attempts;
  ec.relief_factor = cf.relief_factor;
  ec.full_pipeline = full;
  ec.timing = timing;
  ec.jobs = jobs;
  ec.ball_cap = cf.ball_cap;
  GeneratingSet target = parse_generating_set(cf.genset);
  if (full) ensure_generates_heisenberg(target);

  ExperimentResult res = run_experiment(ec, target);
  write_output(cf.output, experiment_csv(res.rows));
  std::ostream& info = info_stream(cf.output);
  info << fit_to_json("vol_stage1", res.stage1_fit) << "\n";
  if (res.final_fit)
    info << fit_to_json("vol_final_per_log2", *res.final_fit) << "\n";
  for (const ExperimentRow& r : res.rows)
    if (!r.error.empty() || !r.verify_ok) return kExitVerifyFailure;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "hwire - combinatorial wirings and 1-thick embeddings of finite graphs "
      "into Cayley graphs of the discrete Heisenberg group"};
  app.require_subcommand(1);

  CommonFlags cf;

  auto* ball = app.add_subcommand("ball", "Ball sizes |B_R| as CSV");
  std::string ball_genset = "x,y";
  int ball_radius = 0, ball_from = -1;
  std::size_t ball_cap = kDefaultBallCap;
  std::string ball_output;
  ball->add_option("--genset", ball_genset, "generating set");
  ball->add_option("--radius", ball_radius, "ball radius")->required();
  ball->add_option("--from", ball_from, "also print radii from this value");
  ball->add_option("--ball-cap", ball_cap, "element cap");
  ball->add_option("--output", ball_output, "output file (default stdout)");

  auto* wire = app.add_subcommand(
      "wire", "Random combinatorial wiring with verified load");
  wire->add_option("--graph", cf.graph_path, "edge-list file")->required();
  wire->add_option("--genset", cf.genset, "generating set");
  wire->add_option("--seed", cf.seed, "RNG seed");
  wire->add_option("--load-const", cf.load_const,
                   "threshold constant C in ceil(C ln(1+n))");
  wire->add_option("--max-attempts", cf.max_attempts, "retry budget");
  wire->add_option("--alpha", cf.alpha, "growth order (4 for Heisenberg)");
  wire->add_option("--ball-cap", cf.ball_cap, "ball element cap");
  wire->add_option("--output", cf.output, "wiring JSON file (default stdout)");

  auto* embed = app.add_subcommand(
      "embed", "Full pipeline to a combinatorial embedding over S");
  embed->add_option("--graph", cf.graph_path, "edge-list file")->required();
  embed->add_option("--genset", cf.genset, "target generating set");
  embed->add_option("--seed", cf.seed, "RNG seed");
  embed->add_option("--load-const", cf.load_const, "threshold constant");
  embed->add_option("--max-attempts", cf.max_attempts, "retry budget");
  embed->add_option("--relief-factor", cf.relief_factor,
                    "K = factor * k (default 1000)");
  embed->add_option("--alpha", cf.alpha, "growth order");
  embed->add_option("--ball-cap", cf.ball_cap, "ball element cap");
  embed->add_option("--output", cf.output, "wiring JSON file (default stdout)");

  auto* verify_cmd =
      app.add_subcommand("verify", "Check a wiring JSON against the axioms");
  std::string verify_input, verify_output;
  int verify_k = -1;
  bool verify_exact = false;
  verify_cmd->add_option("input", verify_input, "wiring JSON file")->required();
  verify_cmd->add_option("--k", verify_k, "load threshold for the k-wiring check");
  verify_cmd->add_flag("--exact-diameter", verify_exact,
                       "force exact diameter (may be expensive)");
  verify_cmd->add_option("--ball-cap", ball_cap, "ball element cap");
  verify_cmd->add_option("--output", verify_output,
                         "report file (default stdout)");

  auto* convert =
      app.add_subcommand("convert-rd", "R^d drawing to a lattice wiring");
  std::string convert_input, convert_retarget, convert_output;
  convert->add_option("--input", convert_input, "drawing JSON file")
      ->required();
  convert->add_option("--retarget", convert_retarget,
                      "Z^d generating set, items 'a:b:c'");
  convert->add_option("--output", convert_output,
                      "wiring JSON file (default stdout)");

  auto* exp = app.add_subcommand("experiment",
                                 "Sweep (n, seed); CSV rows plus scaling fits");
  std::string exp_ns = "8,16,32,64";
  int exp_degree = 3, exp_seeds = 5, exp_jobs = 1;
  bool exp_full = false, exp_timing = false;
  exp->add_option("--n", exp_ns, "comma-separated vertex counts");
  exp->add_option("--degree", exp_degree, "regular degree");
  exp->add_option("--seeds", exp_seeds, "seeds per n (base_seed + i)");
  exp->add_option("--seed", cf.seed, "base seed");
  exp->add_flag("--full", exp_full, "run the full pipeline per row");
  exp->add_flag("--timing", exp_timing,
                "record elapsed_ms (breaks byte-identical reruns)");
  exp->add_option("--jobs", exp_jobs, "concurrent rows");
  exp->add_option("--genset", cf.genset, "target set for --full");
  exp->add_option("--load-const", cf.load_const, "threshold constant");
  exp->add_option("--max-attempts", cf.max_attempts, "retry budget");
  exp->add_option("--relief-factor", cf.relief_factor, "relief factor");
  exp->add_option("--alpha", cf.alpha, "growth order");
  exp->add_option("--ball-cap", cf.ball_cap, "ball element cap");
  exp->add_option("--output", cf.output, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    nlohmann::ordered_json j;
    j["error"] = "usage";
    j["message"] = e.what();
    std::cerr << j.dump() << "\n";
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(ball))
      return cmd_ball(ball_genset, ball_radius, ball_from, ball_cap,
                      ball_output);
    if (app.got_subcommand(wire)) return cmd_wire(cf);
    if (app.got_subcommand(embed)) return cmd_embed(cf);
    if (app.got_subcommand(verify_cmd))
      return cmd_verify(verify_input,
                        verify_k >= 0 ? std::optional<int>(verify_k)
                                      : std::nullopt,
                        verify_exact, ball_cap, verify_output);
    if (app.got_subcommand(convert))
      return cmd_convert_rd(convert_input, convert_retarget, convert_output);
    if (app.got_subcommand(exp))
      return cmd_experiment(cf, exp_ns, exp_degree, exp_seeds, exp_full,
                            exp_timing, exp_jobs);
  } catch (const Error& e) {
    print_error(e);
    return error_code(e);
  } catch (const std::exception& e) {
    nlohmann::ordered_json j;
    j["error"] = "internal";
    j["message"] = e.what();
    std::cerr << j.dump() << "\n";
    return kExitResource;
  }
  return kExitUsage;
}
