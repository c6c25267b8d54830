#include "hwire/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace hwire {

FitResult fit_loglog(const std::vector<std::pair<double, double>>& n_value) {
  FitResult fit;
  std::vector<std::pair<double, double>> pts;
  for (auto [n, v] : n_value)
    if (n > 0 && v > 0) pts.emplace_back(std::log(n), std::log(v));
  if (!pts.empty()) {
    double nmin = n_value.front().first, nmax = n_value.front().first;
    for (auto [n, v] : n_value) {
      nmin = std::min(nmin, n);
      nmax = std::max(nmax, n);
    }
    fit.window = {static_cast<int>(nmin), static_cast<int>(nmax)};
  }
  std::size_t distinct = 0;
  {
    std::vector<double> xs;
    for (auto [x, y] : pts) xs.push_back(x);
    std::sort(xs.begin(), xs.end());
    distinct = static_cast<std::size_t>(
        std::unique(xs.begin(), xs.end()) - xs.begin());
  }
  if (distinct < 2) return fit;  // insufficient window

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(pts.size());
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double den = m * sxx - sx * sx;
  fit.slope = (m * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / m;
  double rss = 0;
  for (auto [x, y] : pts) {
    double e = y - (fit.slope * x + fit.intercept);
    rss += e * e;
  }
  fit.residual = std::sqrt(rss / m);
  fit.sufficient = true;
  return fit;
}

namespace {

ExperimentRow run_row(int n, std::uint64_t seed, const ExperimentConfig& cfg,
                      const GeneratingSet& target, const Ball& ball) {
  ExperimentRow row;
  row.n = n;
  row.d = cfg.degree;
  row.seed = seed;
  row.alpha = cfg.alpha;
  row.r = radius_for(n, cfg.alpha);
  row.k = load_threshold(n, cfg.load_threshold_constant);

  auto t0 = std::chrono::steady_clock::now();
  try {
    FiniteGraph g = random_regular(n, cfg.degree, seed);
    RandomWiringConfig wc{cfg.alpha, cfg.load_threshold_constant,
                          cfg.max_attempts, seed};
    if (!cfg.full_pipeline) {
      GeneratingSet xy = xy_genset();
      int e1 = 0, e2 = 0, e3 = 0;
      bool done = false;
      for (int attempt = 0; attempt < wc.max_attempts && !done; ++attempt) {
        auto [f, out] = sample_wiring(g, xy, wc, ball,
                                      static_cast<std::uint64_t>(attempt));
        if (!out.any()) {
          row.attempts = attempt + 1;
          VerificationReport rep = verify(f, out.threshold);
          WiringMetrics met = metrics_auto(f, MetricsLimits{cfg.ball_cap, 2048});
          row.load = rep.load;
          row.vol_stage1 = met.volume;
          row.diam_stage1 = met.diameter;
          row.diam_stage1_mode = met.diameter_mode;
          row.verify_ok =
              rep.wiring_ok() && rep.passed(kCheckNeighborsDistinct);
          done = true;
        } else {
          e1 += out.e1;
          e2 += out.e2;
          e3 += out.e3;
        }
      }
      if (!done)
        throw GenerationError("no event-free wiring in " +
                                  std::to_string(wc.max_attempts) + " attempts",
                              wc.max_attempts);
    } else {
      PipelineConfig pc;
      pc.wiring = wc;
      pc.relief.factor = cfg.relief_factor;
      pc.ball_cap = cfg.ball_cap;
      PipelineResult res = embed_graph(g, target, pc);
      row.attempts = res.generation.attempts;
      const StageReport& s1 = res.stages.front();
      row.load = s1.verify.load;
      row.vol_stage1 = s1.metrics.volume;
      row.diam_stage1 = s1.metrics.diameter;
      row.diam_stage1_mode = s1.metrics.diameter_mode;
      const StageReport& fin = res.stages.back();
      row.vol_final = fin.metrics.volume;
      row.diam_final = fin.metrics.diameter;
      row.diam_final_mode = fin.metrics.diameter_mode;
      row.verify_ok = res.all_verified();
    }
  } catch (const Error& ex) {
    row.error = ex.what();
    row.attempts = cfg.max_attempts;
    row.verify_ok = false;
  }
  if (cfg.timing) {
    auto t1 = std::chrono::steady_clock::now();
    row.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  }
  return row;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const GeneratingSet& target) {
  if (cfg.ns.empty()) throw ValidationError("experiment needs at least one n");
  if (cfg.seeds < 1) throw ValidationError("experiment needs seeds >= 1");

  // Shared read-only balls per n for the stage-1 sampler.
  std::map<int, Ball> balls;
  if (!cfg.full_pipeline) {
    GeneratingSet xy = xy_genset();
    for (int n : cfg.ns) {
      int r = radius_for(n, cfg.alpha);
      balls.try_emplace(n, xy, 2 * r, cfg.ball_cap);
    }
  }
  // Full-pipeline rows build their own balls inside embed_graph.
  Ball dummy(xy_genset(), 0);

  struct Task {
    int n;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (int n : cfg.ns)
    for (int s = 0; s < cfg.seeds; ++s)
      tasks.push_back({n, cfg.base_seed + static_cast<std::uint64_t>(s)});

  ExperimentResult res;
  res.rows.resize(tasks.size());
  auto worker = [&](std::size_t begin, std::size_t step) {
    for (std::size_t i = begin; i < tasks.size(); i += step) {
      const Ball& b = cfg.full_pipeline ? dummy : balls.at(tasks[i].n);
      res.rows[i] = run_row(tasks[i].n, tasks[i].seed, cfg, target, b);
    }
  };
  int jobs = std::max(1, cfg.jobs);
  if (jobs == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j)
      pool.emplace_back(worker, static_cast<std::size_t>(j),
                        static_cast<std::size_t>(jobs));
    for (auto& t : pool) t.join();
  }

  std::sort(res.rows.begin(), res.rows.end(),
            [](const ExperimentRow& a, const ExperimentRow& b) {
              if (a.n != b.n) return a.n < b.n;
              return a.seed < b.seed;
            });

  std::vector<std::pair<double, double>> s1_pts, fin_pts;
  for (const ExperimentRow& row : res.rows) {
    if (!row.error.empty()) continue;
    s1_pts.emplace_back(row.n, static_cast<double>(row.vol_stage1));
    if (row.vol_final.has_value()) {
      double lg = std::log1p(static_cast<double>(row.n));
      fin_pts.emplace_back(row.n,
                           static_cast<double>(*row.vol_final) / (lg * lg));
    }
  }
  res.stage1_fit = fit_loglog(s1_pts);
  if (cfg.full_pipeline) res.final_fit = fit_loglog(fin_pts);
  return res;
}

std::string experiment_csv(const std::vector<ExperimentRow>& rows) {
  std::ostringstream os;
  os << "n,d,seed,alpha,r,attempts,load,vol_stage1,diam_stage1,"
        "diam_stage1_mode,k,vol_final,diam_final,diam_final_mode,verify_ok,"
        "elapsed_ms\n";
  for (const ExperimentRow& r : rows) {
    os << r.n << "," << r.d << "," << r.seed << "," << r.alpha << "," << r.r
       << "," << r.attempts << ",";
    if (r.error.empty()) {
      os << r.load << "," << r.vol_stage1 << "," << r.diam_stage1 << ","
         << to_string(r.diam_stage1_mode) << "," << r.k << ",";
    } else {
      os << ",,,," << r.k << ",";
    }
    if (r.vol_final.has_value())
      os << *r.vol_final << "," << *r.diam_final << ","
         << to_string(*r.diam_final_mode) << ",";
    else
      os << ",,,";
    os << (r.verify_ok ? 1 : 0) << "," << r.elapsed_ms << "\n";
  }
  return os.str();
}

std::string fit_to_json(const std::string& name, const FitResult& fit) {
  nlohmann::ordered_json j;
  j["fit"] = name;
  if (fit.sufficient) {
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["residual"] = fit.residual;
  } else {
    j["slope"] = nullptr;
    j["note"] = "insufficient window";
  }
  j["window"] = nlohmann::ordered_json::array({fit.window.first,
                                               fit.window.second});
  return j.dump();
}

}  // namespace hwire
