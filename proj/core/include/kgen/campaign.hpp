#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "kgen/decider.hpp"
#include "kgen/spec.hpp"

namespace kgen {

struct CampaignConfig {
  GenParams base;  // base.L is ignored; the sweep provides it
  std::vector<int> L_values;
  int samples_per_point = 100;
  std::chrono::nanoseconds timeout = std::chrono::seconds(10);
  std::vector<double> percentiles = {50, 90};
  std::uint64_t master_seed = 0;
  int threads = 0;  // 0 = hardware concurrency
};

struct PointStats {
  int L = 0;
  double L_over_N = 0;
  int n = 0;
  int sat = 0;
  int unsat = 0;
  int timeouts = 0;
  int trivially_sat = 0;
  int trivially_unsat = 0;
  int gen_failures = 0;
  std::vector<double> percentile_ms;

  double frac_sat() const { return n ? double(sat) / n : 0; }
  double frac_unsat() const { return n ? double(unsat) / n : 0; }
  double frac_timeout() const { return n ? double(timeouts) / n : 0; }
  double frac_trivially_sat() const { return n ? double(trivially_sat) / n : 0; }
  double frac_trivially_unsat() const { return n ? double(trivially_unsat) / n : 0; }
};

struct CampaignError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Nearest-rank percentile (rank = ceil(q * n / 100)); every timeout must be
// recorded as exactly the timeout value, so the result equals the timeout
// whenever the success fraction is below q/100.
double percentile(std::vector<double> times_ms, double q);

// Sweeps L, generating and deciding samples_per_point formulas per value
// with seeds derived from (master_seed, point index, sample index).
// Deterministic in master_seed up to the timing fields.
std::vector<PointStats> run_campaign(const CampaignConfig& config,
                                     std::ostream* progress = nullptr);

// Columns: L, L_over_N, n, frac_sat, frac_unsat, frac_timeout,
// frac_trivial_sat, frac_trivial_unsat, then one pQQ_ms column per
// requested percentile.
std::string to_csv(const std::vector<PointStats>& stats,
                   const std::vector<double>& percentiles);
std::vector<PointStats> parse_csv(const std::string& text,
                                  std::vector<double>* percentiles_out = nullptr);

enum class PlotKind { kTimes, kFractions, kTrivial };

// A gnuplot script reading the campaign CSV; every 5th point gets a symbol.
std::string emit_plot_script(const std::vector<PointStats>& stats, PlotKind kind,
                             const std::vector<double>& percentiles,
                             const std::string& csv_path,
                             const std::string& output_path);

// Flat key=value lines, keys matching the long CLI flags; '#' comments.
CampaignConfig parse_campaign_config(const std::string& text);

}  // namespace kgen
