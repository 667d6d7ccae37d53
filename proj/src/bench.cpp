#include "bench.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <thread>

#include "errors.hpp"
#include "json_io.hpp"

namespace qsos {

using nlohmann::json;

double RunRecord::pt_sum(int order) const {
  if (!pt) return 0;
  double s = pt->e0;
  if (order >= 1) s += pt->e1;
  if (order >= 2) s += pt->e2;
  if (order >= 3) s += pt->e3;
  return s;
}

namespace {

double now_s() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

RunRecord run_one(const ModelSpec& spec, const SweepOptions& opts) {
  RunRecord rec;
  rec.spec = spec;
  try {
    SpinfulHamiltonian h = generate(spec);
    rec.result = solve(h, opts.solver);
    rec.solve_time_s = rec.result.wall_time_s;
    if (opts.with_exact && spec.n_o <= opts.exact_cap) {
      double t0 = now_s();
      rec.exact = spinful_ground_energy(h);
      rec.exact_time_s = now_s() - t0;
      if (opts.with_pt) {
        double t1 = now_s();
        SpinfulHamiltonian h0 = h;
        h0.g = Tensor4(h.n_o);
        SpinfulHamiltonian v = h;
        v.scalar = 0;
        v.h0.setZero();
        rec.pt = rs_pt(h0, v);
        rec.pt_time_s = now_s() - t1;
      }
    }
  } catch (const Error& e) {
    rec.error = e.what();
  }
  return rec;
}

int worker_count(const SweepOptions& opts, std::size_t jobs) {
  int n = opts.workers;
  if (n <= 0) {
    if (const char* env = std::getenv("QSOS_WORKERS")) n = std::atoi(env);
  }
  if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  return static_cast<int>(std::min<std::size_t>(n, jobs));
}

}  // namespace

std::vector<RunRecord> run_sweep(const std::string& family, int n_o,
                                 const std::vector<double>& epsilons,
                                 const std::vector<std::uint64_t>& seeds,
                                 const SweepOptions& opts) {
  std::vector<ModelSpec> jobs;
  for (double eps : epsilons)
    for (std::uint64_t seed : seeds) jobs.push_back({family, n_o, eps, 0.0, seed});

  std::vector<RunRecord> out(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next.fetch_add(1); k < jobs.size(); k = next.fetch_add(1))
      out[k] = run_one(jobs[k], opts);
  };
  const int workers = worker_count(opts, jobs.size());
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  return out;
}

SweepSummary summarize(const std::vector<RunRecord>& records) {
  SweepSummary s;
  s.total = static_cast<int>(records.size());
  for (const RunRecord& r : records) {
    if (r.error) {
      ++s.failed;
      continue;
    }
    if (r.result.converged && r.result.err < 1e-5) ++s.converged_1e5;
    if (r.result.err < 1e-4) ++s.converged_1e4;
  }
  if (s.total > 0) {
    s.fraction_1e5 = static_cast<double>(s.converged_1e5) / s.total;
    s.fraction_1e4 = static_cast<double>(s.converged_1e4) / s.total;
  }
  return s;
}

void emit_csv(const std::vector<RunRecord>& records, std::ostream& out) {
  out << "family,n_o,epsilon,seed,bound,certified_bound,err,converged,iterations,exact,"
         "pt1,pt2,pt3,err_bound,err_pt3,wall_time_s\n";
  auto num = [](double v) {
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    return ss.str();
  };
  for (const RunRecord& r : records) {
    out << r.spec.family << ',' << r.spec.n_o << ',' << num(r.spec.epsilon) << ',' << r.spec.seed
        << ',';
    if (r.error) {
      out << ",,,,,,,,,," << '\n';
      continue;
    }
    out << num(r.result.bound) << ',' << num(r.result.certified_bound) << ','
        << num(r.result.err) << ',' << (r.result.converged ? 1 : 0) << ',' << r.result.iterations
        << ',';
    if (r.exact) out << num(*r.exact);
    out << ',';
    if (r.pt) out << num(r.pt_sum(1)) << ',' << num(r.pt_sum(2)) << ',' << num(r.pt_sum(3));
    else out << ",,";
    out << ',';
    if (r.exact) out << num(*r.exact - r.result.bound);
    out << ',';
    if (r.exact && r.pt) out << num(std::abs(r.pt_sum(3) - *r.exact));
    out << ',' << num(r.result.wall_time_s) << '\n';
  }
}

json records_to_json(const std::vector<RunRecord>& records) {
  json arr = json::array();
  for (const RunRecord& r : records) {
    json rec{{"spec", to_json(r.spec)},
             {"result", to_json(r.result)},
             {"solve_time_s", r.solve_time_s},
             {"exact_time_s", r.exact_time_s},
             {"pt_time_s", r.pt_time_s}};
    if (r.exact) rec["exact"] = *r.exact;
    if (r.pt) rec["pt"] = json{{"e0", r.pt->e0}, {"e1", r.pt->e1}, {"e2", r.pt->e2},
                               {"e3", r.pt->e3}};
    if (r.error) rec["error"] = *r.error;
    arr.push_back(rec);
  }
  return arr;
}

std::vector<RunRecord> records_from_json(const json& j) {
  std::vector<RunRecord> out;
  for (const json& rec : j) {
    RunRecord r;
    r.spec = model_spec_from_json(rec.at("spec"));
    r.result = solve_result_from_json(rec.at("result"));
    r.solve_time_s = rec.value("solve_time_s", 0.0);
    r.exact_time_s = rec.value("exact_time_s", 0.0);
    r.pt_time_s = rec.value("pt_time_s", 0.0);
    if (rec.contains("exact")) r.exact = rec.at("exact").get<double>();
    if (rec.contains("pt")) {
      PtEnergies pt;
      pt.e0 = rec.at("pt").at("e0").get<double>();
      pt.e1 = rec.at("pt").at("e1").get<double>();
      pt.e2 = rec.at("pt").at("e2").get<double>();
      pt.e3 = rec.at("pt").at("e3").get<double>();
      r.pt = pt;
    }
    if (rec.contains("error")) r.error = rec.at("error").get<std::string>();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace qsos
