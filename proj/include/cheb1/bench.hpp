#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "cheb1/globalopt.hpp"
#include "cheb1/mmio.hpp"
#include "cheb1/random.hpp"

namespace cheb1 {

struct BenchRecord {
  std::size_t n = 0;
  long trial = 0;  // -1 marks a per-size mean row
  double runs = 0.0;
  double wall_ms = 0.0;
  double error = 0.0;
};

struct BenchOptions {
  std::vector<std::size_t> sizes;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  OptimizeOptions opt{};
};

/// Runs optimize on `trials` random standard-normal n x n matrices per
/// size. Every trial draws from its own stream derived from
/// (seed, n, trial), so results do not depend on execution order and
/// trials may run on several threads. Timing covers optimize only.
inline std::vector<BenchRecord> run_bench(const BenchOptions& opts) {
  std::vector<std::pair<std::size_t, long>> jobs;
  for (std::size_t n : opts.sizes) {
    for (std::size_t t = 0; t < opts.trials; ++t) jobs.emplace_back(n, static_cast<long>(t));
  }
  std::vector<BenchRecord> records(jobs.size());

  auto work = [&](std::size_t job) {
    auto [n, trial] = jobs[job];
    NormalRng rng(stream_seed(opts.seed, n, static_cast<std::uint64_t>(trial)));
    DenseMatrix a = random_pc_matrix(n, n, rng);
    auto t0 = std::chrono::steady_clock::now();
    OptResult r = optimize(a, opts.opt);
    auto t1 = std::chrono::steady_clock::now();
    records[job] = BenchRecord{
        n, trial, static_cast<double>(r.runs),
        std::chrono::duration<double, std::milli>(t1 - t0).count(), r.error};
  };

  if (opts.threads <= 1) {
    for (std::size_t j = 0; j < jobs.size(); ++j) work(j);
  } else {
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < opts.threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t j = cursor.fetch_add(1); j < jobs.size(); j = cursor.fetch_add(1)) {
          work(j);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  std::sort(records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
    return a.n != b.n ? a.n < b.n : a.trial < b.trial;
  });

  // Per-size means carry trial = -1.
  std::map<std::size_t, std::vector<const BenchRecord*>> by_n;
  for (const auto& r : records) by_n[r.n].push_back(&r);
  std::vector<BenchRecord> means;
  for (const auto& [n, rs] : by_n) {
    BenchRecord m{n, -1, 0.0, 0.0, 0.0};
    for (const BenchRecord* r : rs) {
      m.runs += r->runs;
      m.wall_ms += r->wall_ms;
      m.error += r->error;
    }
    m.runs /= rs.size();
    m.wall_ms /= rs.size();
    m.error /= rs.size();
    means.push_back(m);
  }
  records.insert(records.end(), means.begin(), means.end());
  return records;
}

inline std::string bench_csv(const std::vector<BenchRecord>& records) {
  std::string out = "n,trial,runs,wall_ms,error\n";
  for (const auto& r : records) {
    out += std::to_string(r.n) + "," + std::to_string(r.trial) + "," +
           detail::format_double(r.runs) + "," + detail::format_double(r.wall_ms) + "," +
           detail::format_double(r.error) + "\n";
  }
  return out;
}

}  // namespace cheb1
