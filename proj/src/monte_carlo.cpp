#include <algorithm>
#include <exception>

#include "qmsr/engine.hpp"
#include "qmsr/errors.hpp"

namespace qmsr {

namespace {

RunResult run_seed(const Scenario& base, int index, RunOptions options) {
  Scenario s = base;
  s.seed = base.seed + static_cast<std::uint64_t>(index);
  return run(s, options).second;
}

}  // namespace

MonteCarloSummary summarize(std::vector<RunResult> results) {
  MonteCarloSummary summary;
  summary.runs = static_cast<int>(results.size());
  std::vector<Time> times;
  for (const auto& r : results) {
    if (r.agreed) {
      ++summary.agreed;
      if (r.agreement_time) times.push_back(*r.agreement_time);
      if (r.final_value) ++summary.final_values[*r.final_value];
    }
    if (!r.safety_ok) ++summary.safety_violations;
    summary.invariants.envelope_violations += r.invariants.envelope_violations;
    summary.invariants.absorption_violations += r.invariants.absorption_violations;
    summary.invariants.weight_violations += r.invariants.weight_violations;
  }
  if (summary.runs > 0) summary.agreement_rate = static_cast<double>(summary.agreed) / summary.runs;
  if (!times.empty()) {
    std::sort(times.begin(), times.end());
    summary.ka_min = times.front();
    summary.ka_max = times.back();
    summary.ka_median = times[(times.size() - 1) / 2];
  }
  summary.results = std::move(results);
  return summary;
}

MonteCarloSummary monte_carlo_serial(const Scenario& s, int n_runs, RunOptions options) {
  if (n_runs < 1) throw InputError("monte_carlo: need at least one run");
  std::vector<RunResult> results;
  results.reserve(static_cast<std::size_t>(n_runs));
  for (int r = 0; r < n_runs; ++r) results.push_back(run_seed(s, r, options));
  return summarize(std::move(results));
}

MonteCarloSummary monte_carlo(const Scenario& s, int n_runs, RunOptions options) {
  if (n_runs < 1) throw InputError("monte_carlo: need at least one run");
  validate_scenario(s);
  std::vector<RunResult> results(static_cast<std::size_t>(n_runs));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_runs));

#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < n_runs; ++r) {
    try {
      results[static_cast<std::size_t>(r)] = run_seed(s, r, options);
    } catch (...) {
      errors[static_cast<std::size_t>(r)] = std::current_exception();
    }
  }

  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return summarize(std::move(results));
}

}  // namespace qmsr
