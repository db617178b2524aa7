#pragma once

// Benchmark driver: seeded instance streams per (n, g), timed solver runs,
// per-instance CSV rows and per-(size, algorithm) summaries.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "hclp/report.hpp"

namespace hclp {

struct BenchSize {
  std::size_t n = 0;
  std::size_t g = 0;
};

/// "n,g;n,g;..." with optional whitespace.
inline std::vector<BenchSize> parse_sizes(const std::string& text) {
  std::vector<BenchSize> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    const auto comma = item.find(',');
    if (comma == std::string::npos) {
      throw InputError("size '" + item + "' is not of the form n,g");
    }
    try {
      std::size_t used = 0;
      const std::string a = item.substr(0, comma);
      const std::string b = item.substr(comma + 1);
      const long n = std::stol(a, &used);
      if (a.find_first_not_of(" \t", used) != std::string::npos) throw InputError("");
      const long g = std::stol(b, &used);
      if (b.find_first_not_of(" \t", used) != std::string::npos) throw InputError("");
      if (n < 1 || g < 1) throw InputError("");
      out.push_back({static_cast<std::size_t>(n), static_cast<std::size_t>(g)});
    } catch (const std::exception&) {
      throw InputError("size '" + item + "' is not of the form n,g");
    }
  }
  return out;
}

struct BenchConfig {
  std::vector<BenchSize> sizes;
  std::size_t per_size = 50;
  std::vector<Algorithm> algorithms{Algorithm::Pc, Algorithm::PcConflicts};
  std::uint64_t seed = 1;
  std::size_t m = 25;
  Value domain_max = 5;
  RunOptions run;  // run.t == 0 means t = n
  unsigned threads = 1;
};

/// Seed of instance k for size (n, g): independent of the other sizes and of
/// the thread count.
inline std::uint64_t instance_seed(std::uint64_t base, std::size_t n,
                                   std::size_t g, std::size_t k) {
  std::uint64_t s = mix_seed(base);
  s = mix_seed(s ^ n);
  s = mix_seed(s ^ (static_cast<std::uint64_t>(g) << 20));
  return mix_seed(s ^ (static_cast<std::uint64_t>(k) << 40));
}

struct BenchRow {
  std::string instance_id;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t g = 0;
  std::size_t t = 0;
  std::size_t s = 0;
  Algorithm algorithm = Algorithm::Pc;
  Verdict verdict = Verdict::Inconsistent;
  ConsistencyClass cls = ConsistencyClass::Unknown;
  std::uint64_t nodes = 0;
  std::uint64_t skipped = 0;
  double time_ms = 0.0;
  bool timeout = false;
};

inline const char* kBenchCsvHeader =
    "instance_id,n,m,g,t,s,algorithm,verdict,class,nodes,skipped,time_ms,"
    "timeout";

/// Worker count: HCLP_THREADS when set to a positive integer, else fallback.
inline unsigned bench_threads(unsigned fallback) {
  if (const char* env = std::getenv("HCLP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1U, fallback);
}

/// Rows ordered by size, instance, then algorithm, whatever the thread count.
inline std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
  struct Job {
    BenchSize size;
    std::size_t k;
  };
  std::vector<Job> jobs;
  for (const auto& sz : cfg.sizes) {
    if (sz.g > pair_count(cfg.m)) {
      throw InputError("g=" + std::to_string(sz.g) + " exceeds the " +
                       std::to_string(pair_count(cfg.m)) +
                       " pairs available for m=" + std::to_string(cfg.m));
    }
    for (std::size_t k = 0; k < cfg.per_size; ++k) jobs.push_back({sz, k});
  }

  const std::size_t per_job = cfg.algorithms.size();
  std::vector<BenchRow> rows(jobs.size() * per_job);
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto worker = [&] {
    while (true) {
      const std::size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      try {
        const Job& job = jobs[j];
        GenConfig gc{job.size.n, cfg.m, job.size.g, cfg.domain_max,
                     instance_seed(cfg.seed, job.size.n, job.size.g, job.k)};
        Instance inst = generate(gc);
        const std::string id = "n" + std::to_string(job.size.n) + "-g" +
                               std::to_string(job.size.g) + "-" +
                               std::to_string(job.k);
        const bool c1 = c1_solve(inst.matrix, inst.statements).consistent();
        for (std::size_t a = 0; a < per_job; ++a) {
          const Algorithm algo = cfg.algorithms[a];
          const SolveResult r = run_algorithm(algo, inst, cfg.run);
          BenchRow& row = rows[j * per_job + a];
          row.instance_id = id;
          row.n = job.size.n;
          row.m = cfg.m;
          row.g = job.size.g;
          row.t = effective_t(cfg.run, job.size.n);
          row.s = cfg.run.s;
          row.algorithm = algo;
          row.verdict = r.verdict;
          row.cls = classify(c1, algo, r.verdict);
          row.nodes = r.stats.nodes;
          row.skipped = r.stats.candidates_skipped;
          row.time_ms = r.stats.wall_ms;
          row.timeout = r.stats.timed_out;
        }
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = jobs.size();
      }
    }
  };

  const unsigned threads = std::max(1U, cfg.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return rows;
}

inline void write_bench_csv(const std::vector<BenchRow>& rows,
                            std::ostream& out) {
  out << kBenchCsvHeader << '\n';
  char buf[64];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.3f", r.time_ms);
    out << r.instance_id << ',' << r.n << ',' << r.m << ',' << r.g << ','
        << r.t << ',' << r.s << ',' << to_string(r.algorithm) << ','
        << to_string(r.verdict) << ',' << to_string(r.cls) << ',' << r.nodes
        << ',' << r.skipped << ',' << buf << ',' << (r.timeout ? 1 : 0)
        << '\n';
  }
}

struct BenchSummary {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t g = 0;
  std::size_t t = 0;
  std::size_t s = 0;
  Algorithm algorithm = Algorithm::Pc;
  std::size_t instances = 0;
  double mean_ms = 0.0;
  double median_ms = 0.0;
  std::map<ConsistencyClass, std::size_t> classes;
  std::size_t timeouts = 0;
};

inline const char* kBenchSummaryHeader =
    "n,m,g,t,s,algorithm,instances,mean_ms,median_ms,inconsistent,ct,c1,"
    "not_c1,unknown,timeouts";

/// One entry per (size, algorithm) in first-seen order.
inline std::vector<BenchSummary> summarize(const std::vector<BenchRow>& rows) {
  std::vector<BenchSummary> out;
  std::vector<std::vector<double>> times;
  for (const auto& r : rows) {
    auto it = std::find_if(out.begin(), out.end(), [&](const BenchSummary& s) {
      return s.n == r.n && s.g == r.g && s.algorithm == r.algorithm;
    });
    if (it == out.end()) {
      BenchSummary s;
      s.n = r.n;
      s.m = r.m;
      s.g = r.g;
      s.t = r.t;
      s.s = r.s;
      s.algorithm = r.algorithm;
      out.push_back(s);
      times.emplace_back();
      it = out.end() - 1;
    }
    auto& ts = times[static_cast<std::size_t>(it - out.begin())];
    ts.push_back(r.time_ms);
    ++it->instances;
    ++it->classes[r.cls];
    if (r.timeout) ++it->timeouts;
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    auto& ts = times[k];
    std::sort(ts.begin(), ts.end());
    double sum = 0.0;
    for (double x : ts) sum += x;
    out[k].mean_ms = sum / static_cast<double>(ts.size());
    const std::size_t h = ts.size() / 2;
    out[k].median_ms = ts.size() % 2 ? ts[h] : 0.5 * (ts[h - 1] + ts[h]);
  }
  return out;
}

inline void write_summary_csv(const std::vector<BenchSummary>& rows,
                              std::ostream& out) {
  out << kBenchSummaryHeader << '\n';
  char buf[96];
  for (const auto& r : rows) {
    auto count = [&](ConsistencyClass c) {
      auto it = r.classes.find(c);
      return it == r.classes.end() ? std::size_t{0} : it->second;
    };
    std::snprintf(buf, sizeof buf, "%.3f,%.3f", r.mean_ms, r.median_ms);
    out << r.n << ',' << r.m << ',' << r.g << ',' << r.t << ',' << r.s << ','
        << to_string(r.algorithm) << ',' << r.instances << ',' << buf << ','
        << count(ConsistencyClass::Inconsistent) << ','
        << count(ConsistencyClass::Ct) << ',' << count(ConsistencyClass::C1)
        << ',' << count(ConsistencyClass::NotC1) << ','
        << count(ConsistencyClass::Unknown) << ',' << r.timeouts << '\n';
  }
}

}  // namespace hclp
