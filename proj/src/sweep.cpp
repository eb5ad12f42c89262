#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "rshwc/bench.hpp"
#include "rshwc/objective.hpp"

namespace rshwc::bench {

const char* const kSweepCsvHeader =
    "kind,solver,variable,value,rep,seed,feasible,alpha,alpha_std,risk,"
    "risk_std,onsite_size,wall_ms";

namespace {

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct Job {
  std::size_t value_index;
  std::uint32_t rep;
};

struct Outcome {
  SolveResult result;
  double wall_ms = 0.0;
};

void append_double(std::string& out, double x) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  out.append(buf, r.ptr);
}

void append_optional(std::string& out, const std::optional<double>& x) {
  if (x) append_double(out, *x);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s, std::size_t line) {
  double x = 0.0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), x);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
    throw ParseError(line, "bad number '" + s + "'");
  }
  return x;
}

std::optional<double> parse_optional(const std::string& s, std::size_t line) {
  if (s.empty()) return std::nullopt;
  return parse_double(s, line);
}

template <typename T>
T parse_integer(const std::string& s, std::size_t line) {
  T x = 0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), x);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
    throw ParseError(line, "bad integer '" + s + "'");
  }
  return x;
}

std::pair<double, double> mean_std(const std::vector<double>& xs) {
  if (xs.empty()) return {0.0, 0.0};
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

}  // namespace

const char* to_string(SweepVariable variable) {
  return variable == SweepVariable::kRequiredSkills ? "R" : "rho";
}

unsigned thread_limit() {
  if (const char* env = std::getenv("RSHWC_THREADS")) {
    unsigned n = 0;
    const std::string_view s(env);
    auto r = std::from_chars(s.data(), s.data() + s.size(), n);
    if (r.ec == std::errc() && n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, const RawGraph& graph) {
  if (spec.values.empty()) throw std::invalid_argument("sweep has no values");
  if (spec.solvers.empty()) throw std::invalid_argument("sweep has no solvers");

  std::vector<Job> jobs;
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    for (std::uint32_t rep = 0; rep < spec.repetitions; ++rep) {
      jobs.push_back({i, rep});
    }
  }
  // outcomes[job][solver]
  std::vector<std::vector<Outcome>> outcomes(jobs.size());

  auto run_job = [&](std::size_t j) {
    const Job& job = jobs[j];
    const double value = spec.values[job.value_index];
    AugmentParams ap = spec.augment;
    ap.seed = mix(spec.seed, job.rep);
    InstanceParams ip = spec.instance;
    ip.seed = mix(ap.seed, 0x1f);
    if (spec.variable == SweepVariable::kRemoteRatio) {
      ap.remote_ratio = value;
    } else {
      ip.required_skills = static_cast<std::size_t>(std::llround(value));
    }
    ProblemInstance inst = make_instance(augment(graph, ap), ip);
    SolverConfig config;
    config.propagation.mc_samples = spec.mc_samples;
    config.rng_seed = mix(ap.seed, 0x2f);
    auto& row = outcomes[j];
    row.resize(spec.solvers.size());
    for (std::size_t s = 0; s < spec.solvers.size(); ++s) {
      const auto start = std::chrono::steady_clock::now();
      row[s].result = run_solver(spec.solvers[s], inst, config);
      row[s].wall_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    }
  };

  const unsigned workers =
      std::min<unsigned>(thread_limit(), static_cast<unsigned>(jobs.size()));
  if (workers <= 1) {
    for (std::size_t j = 0; j < jobs.size(); ++j) run_job(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t j; (j = next.fetch_add(1)) < jobs.size();) run_job(j);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  const std::string var = to_string(spec.variable);
  std::vector<SweepRow> rows;
  std::vector<SweepRow> aggregates;
  for (std::size_t s = 0; s < spec.solvers.size(); ++s) {
    const std::string name = to_string(spec.solvers[s]);
    for (std::size_t i = 0; i < spec.values.size(); ++i) {
      std::vector<double> alphas, risks, sizes, times;
      for (std::size_t j = 0; j < jobs.size(); ++j) {
        if (jobs[j].value_index != i) continue;
        const Outcome& o = outcomes[j][s];
        SweepRow row;
        row.solver = name;
        row.variable = var;
        row.value = spec.values[i];
        row.rep = jobs[j].rep;
        row.seed = mix(spec.seed, jobs[j].rep);
        row.feasible = o.result.feasible ? 1 : 0;
        if (o.result.feasible) {
          row.alpha = o.result.alpha_value;
          row.risk = o.result.risk_value;
          row.risk_std = o.result.risk_std_error;
          alphas.push_back(o.result.alpha_value);
          risks.push_back(o.result.risk_value);
          sizes.push_back(static_cast<double>(o.result.onsite.size()));
        }
        row.onsite_size = static_cast<double>(o.result.onsite.size());
        row.wall_ms = o.wall_ms;
        times.push_back(o.wall_ms);
        rows.push_back(std::move(row));
      }
      SweepRow agg;
      agg.aggregate = true;
      agg.solver = name;
      agg.variable = var;
      agg.value = spec.values[i];
      agg.feasible = static_cast<std::uint32_t>(alphas.size());
      if (!alphas.empty()) {
        auto [am, as] = mean_std(alphas);
        auto [rm, rs] = mean_std(risks);
        agg.alpha = am;
        agg.alpha_std = as;
        agg.risk = rm;
        agg.risk_std = rs;
        agg.onsite_size = mean_std(sizes).first;
      }
      agg.wall_ms = mean_std(times).first;
      aggregates.push_back(std::move(agg));
    }
  }
  rows.insert(rows.end(), aggregates.begin(), aggregates.end());
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepCsvHeader << '\n';
  std::string line;
  for (const SweepRow& r : rows) {
    line.clear();
    line += r.aggregate ? "aggregate," : "data,";
    line += r.solver + ',' + r.variable + ',';
    append_double(line, r.value);
    line += ',';
    if (!r.aggregate) line += std::to_string(r.rep);
    line += ',';
    if (!r.aggregate) line += std::to_string(r.seed);
    line += ',' + std::to_string(r.feasible) + ',';
    append_optional(line, r.alpha);
    line += ',';
    append_optional(line, r.alpha_std);
    line += ',';
    append_optional(line, r.risk);
    line += ',';
    append_optional(line, r.risk_std);
    line += ',';
    append_double(line, r.onsite_size);
    line += ',';
    append_double(line, r.wall_ms);
    out << line << '\n';
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kSweepCsvHeader) {
    throw ParseError(line_no, "missing sweep CSV header");
  }
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != 13) throw ParseError(line_no, "expected 13 columns");
    SweepRow r;
    if (cells[0] == "aggregate") {
      r.aggregate = true;
    } else if (cells[0] != "data") {
      throw ParseError(line_no, "unknown row kind '" + cells[0] + "'");
    }
    r.solver = cells[1];
    r.variable = cells[2];
    r.value = parse_double(cells[3], line_no);
    if (!r.aggregate) {
      r.rep = parse_integer<std::uint32_t>(cells[4], line_no);
      r.seed = parse_integer<std::uint64_t>(cells[5], line_no);
    }
    r.feasible = parse_integer<std::uint32_t>(cells[6], line_no);
    r.alpha = parse_optional(cells[7], line_no);
    r.alpha_std = parse_optional(cells[8], line_no);
    r.risk = parse_optional(cells[9], line_no);
    r.risk_std = parse_optional(cells[10], line_no);
    r.onsite_size = parse_double(cells[11], line_no);
    r.wall_ms = parse_double(cells[12], line_no);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace rshwc::bench
