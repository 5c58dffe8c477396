#include "kgen/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include "kgen/generator.hpp"
#include "kgen/rng.hpp"

namespace kgen {

double percentile(std::vector<double> times_ms, double q) {
  if (times_ms.empty()) throw CampaignError("percentile of empty input");
  if (q <= 0 || q > 100) throw CampaignError("percentile must be in (0, 100]");
  std::sort(times_ms.begin(), times_ms.end());
  const size_t n = times_ms.size();
  size_t rank = static_cast<size_t>(std::ceil(q * static_cast<double>(n) / 100.0));
  if (rank < 1) rank = 1;
  return times_ms[rank - 1];
}

namespace {

struct SampleResult {
  Status status = Status::kTimeout;
  bool trivially_sat = false;
  bool trivially_unsat = false;
  bool gen_failed = false;
  double time_ms = 0;
};

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(std::numeric_limits<double>::max_digits10);
  os << v;
  return os.str();
}

std::string percentile_column(double q) {
  std::ostringstream os;
  os << 'p' << q << "_ms";
  return os.str();
}

}  // namespace

std::vector<PointStats> run_campaign(const CampaignConfig& config,
                                     std::ostream* progress) {
  if (config.L_values.empty()) throw CampaignError("no L values");
  for (size_t i = 1; i < config.L_values.size(); ++i)
    if (config.L_values[i] <= config.L_values[i - 1])
      throw CampaignError("L values must be strictly increasing");
  if (config.samples_per_point < 1) throw CampaignError("samples must be >= 1");
  for (double q : config.percentiles)
    if (q <= 0 || q > 100) throw CampaignError("percentile must be in (0, 100]");
  {
    GenParams probe = config.base;
    probe.L = config.L_values.front();
    Diagnostics diag = validate_params(probe);
    if (!diag.ok()) throw CampaignError("invalid parameters: " + diag.errors.front());
  }

  const double timeout_ms =
      std::chrono::duration<double, std::milli>(config.timeout).count();
  int num_threads = config.threads > 0
                        ? config.threads
                        : static_cast<int>(std::thread::hardware_concurrency());
  if (num_threads < 1) num_threads = 1;

  std::vector<PointStats> out;
  for (size_t point = 0; point < config.L_values.size(); ++point) {
    const int L = config.L_values[point];
    std::vector<SampleResult> results(config.samples_per_point);
    std::atomic<int> next{0};

    auto worker = [&]() {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= config.samples_per_point) return;
        GenParams gp = config.base;
        gp.L = L;
        gp.seed = derive_seed(config.master_seed, point, i);
        SampleResult& r = results[i];
        try {
          const Formula f = generate_formula(gp);
          const DecisionOutcome d = k_satisfiable(f, config.timeout);
          r.status = d.status;
          r.trivially_sat = d.trivially_sat;
          r.trivially_unsat = d.trivially_unsat;
          r.time_ms = d.status == Status::kTimeout
                          ? timeout_ms
                          : std::chrono::duration<double, std::milli>(d.elapsed).count();
        } catch (const GenerationError&) {
          r.gen_failed = true;
        }
      }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < num_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    PointStats ps;
    ps.L = L;
    ps.L_over_N = static_cast<double>(L) / config.base.N;
    std::vector<double> times;
    for (const SampleResult& r : results) {
      if (r.gen_failed) {
        ++ps.gen_failures;
        continue;
      }
      ++ps.n;
      switch (r.status) {
        case Status::kSat: ++ps.sat; break;
        case Status::kUnsat: ++ps.unsat; break;
        case Status::kTimeout: ++ps.timeouts; break;
      }
      if (r.trivially_sat) ++ps.trivially_sat;
      if (r.trivially_unsat) ++ps.trivially_unsat;
      times.push_back(r.time_ms);
    }
    if (!times.empty())
      for (double q : config.percentiles)
        ps.percentile_ms.push_back(percentile(times, q));
    out.push_back(std::move(ps));
    if (progress)
      *progress << "L=" << L << " sat=" << out.back().frac_sat()
                << " unsat=" << out.back().frac_unsat()
                << " triv_unsat=" << out.back().frac_trivially_unsat() << "\n";
  }
  return out;
}

std::string to_csv(const std::vector<PointStats>& stats,
                   const std::vector<double>& percentiles) {
  std::ostringstream os;
  os << "L,L_over_N,n,frac_sat,frac_unsat,frac_timeout,frac_trivial_sat,"
        "frac_trivial_unsat";
  for (double q : percentiles) os << ',' << percentile_column(q);
  os << '\n';
  for (const PointStats& p : stats) {
    os << p.L << ',' << fmt_double(p.L_over_N) << ',' << p.n << ','
       << fmt_double(p.frac_sat()) << ',' << fmt_double(p.frac_unsat()) << ','
       << fmt_double(p.frac_timeout()) << ',' << fmt_double(p.frac_trivially_sat())
       << ',' << fmt_double(p.frac_trivially_unsat());
    for (double t : p.percentile_ms) os << ',' << fmt_double(t);
    os << '\n';
  }
  return os.str();
}

std::vector<PointStats> parse_csv(const std::string& text,
                                  std::vector<double>* percentiles_out) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw CampaignError("empty CSV");
  std::vector<double> percentiles;
  {
    std::istringstream hs(line);
    std::string col;
    int i = 0;
    while (std::getline(hs, col, ',')) {
      if (i++ >= 8) {
        if (col.size() < 4 || col.front() != 'p' ||
            col.substr(col.size() - 3) != "_ms")
          throw CampaignError("bad percentile column: " + col);
        percentiles.push_back(std::stod(col.substr(1, col.size() - 4)));
      }
    }
  }
  if (percentiles_out) *percentiles_out = percentiles;

  std::vector<PointStats> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string col;
    std::vector<std::string> cols;
    while (std::getline(ls, col, ',')) cols.push_back(col);
    if (cols.size() != 8 + percentiles.size())
      throw CampaignError("bad CSV row: " + line);
    PointStats p;
    p.L = std::stoi(cols[0]);
    p.L_over_N = std::stod(cols[1]);
    p.n = std::stoi(cols[2]);
    p.sat = static_cast<int>(std::lround(std::stod(cols[3]) * p.n));
    p.unsat = static_cast<int>(std::lround(std::stod(cols[4]) * p.n));
    p.timeouts = static_cast<int>(std::lround(std::stod(cols[5]) * p.n));
    p.trivially_sat = static_cast<int>(std::lround(std::stod(cols[6]) * p.n));
    p.trivially_unsat = static_cast<int>(std::lround(std::stod(cols[7]) * p.n));
    for (size_t i = 0; i < percentiles.size(); ++i)
      p.percentile_ms.push_back(std::stod(cols[8 + i]));
    out.push_back(std::move(p));
  }
  return out;
}

std::string emit_plot_script(const std::vector<PointStats>& stats, PlotKind kind,
                             const std::vector<double>& percentiles,
                             const std::string& csv_path,
                             const std::string& output_path) {
  if (stats.empty()) throw CampaignError("no stats to plot");
  std::ostringstream os;
  os << "set datafile separator ','\n"
     << "set terminal svg size 800,600\n"
     << "set output '" << output_path << "'\n"
     << "set xlabel 'L/N'\n"
     << "set key top right\n";
  auto series = [&](int col, const std::string& title, int style) {
    std::ostringstream s;
    s << "'" << csv_path << "' using 2:" << col << " skip 1 with lines lt " << style
      << " title '" << title << "', '" << csv_path << "' using 2:" << col
      << " skip 1 every 5 with points pt " << style << " lt " << style
      << " notitle";
    return s.str();
  };
  switch (kind) {
    case PlotKind::kTimes: {
      os << "set logscale y\nset ylabel 'decision time (ms)'\nplot ";
      for (size_t i = 0; i < percentiles.size(); ++i) {
        if (i) os << ", ";
        os << series(static_cast<int>(9 + i), percentile_column(percentiles[i]),
                     static_cast<int>(i + 1));
      }
      os << '\n';
      break;
    }
    case PlotKind::kFractions:
      os << "set yrange [0:1]\nset ylabel 'fraction'\nplot "
         << series(4, "satisfiable", 1) << ", " << series(5, "unsatisfiable", 2)
         << '\n';
      break;
    case PlotKind::kTrivial:
      os << "set yrange [0:1]\nset ylabel 'fraction'\nplot "
         << series(7, "trivially satisfiable", 1) << ", "
         << series(8, "trivially unsatisfiable", 2) << '\n';
      break;
  }
  return os.str();
}

CampaignConfig parse_campaign_config(const std::string& text) {
  CampaignConfig cfg;
  std::istringstream is(text);
  std::string line;
  int l_from = 0, l_to = 0, l_step = 1;
  Rational64 c_scalar{0, 1}, p_scalar{0, 1};
  bool have_c_scalar = false, have_p_scalar = false;
  bool have_length_spec = false, have_prop_spec = false;

  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };

  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw CampaignError("bad config line: " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "depth") {
      cfg.base.d = std::stoi(value);
    } else if (key == "boxes") {
      cfg.base.m = std::stoi(value);
    } else if (key == "vars") {
      cfg.base.N = std::stoi(value);
    } else if (key == "clause-size") {
      c_scalar = Rational64::parse(value);
      have_c_scalar = true;
    } else if (key == "prop-prob") {
      p_scalar = Rational64::parse(value);
      have_p_scalar = true;
    } else if (key == "length-spec") {
      cfg.base.C = parse_length_spec(value);
      have_length_spec = true;
    } else if (key == "prop-spec") {
      cfg.base.p = parse_prop_spec(value);
      have_prop_spec = true;
    } else if (key == "method") {
      if (value == "new")
        cfg.base.method = Method::kNew;
      else if (value == "old")
        cfg.base.method = Method::kOld;
      else
        throw CampaignError("method must be new or old");
    } else if (key == "seed") {
      cfg.master_seed = std::stoull(value);
    } else if (key == "l-from") {
      l_from = std::stoi(value);
    } else if (key == "l-to") {
      l_to = std::stoi(value);
    } else if (key == "l-step") {
      l_step = std::stoi(value);
    } else if (key == "samples") {
      cfg.samples_per_point = std::stoi(value);
    } else if (key == "timeout") {
      cfg.timeout = std::chrono::duration_cast<std::chrono::nanoseconds>(
          std::chrono::duration<double>(std::stod(value)));
    } else if (key == "percentiles") {
      cfg.percentiles.clear();
      std::istringstream ps(value);
      std::string q;
      while (std::getline(ps, q, ','))
        if (!trim(q).empty()) cfg.percentiles.push_back(std::stod(trim(q)));
    } else if (key == "threads") {
      cfg.threads = std::stoi(value);
    } else {
      throw CampaignError("unknown config key: " + key);
    }
  }

  if (have_c_scalar != have_p_scalar ||
      (have_c_scalar && (have_length_spec || have_prop_spec)))
    throw CampaignError(
        "give either clause-size with prop-prob, or length-spec with prop-spec");
  if (have_c_scalar)
    basic_to_advanced(c_scalar, p_scalar, cfg.base.d, cfg.base.method, cfg.base.C,
                      cfg.base.p);
  if (l_from > 0) {
    if (l_to < l_from || l_step < 1) throw CampaignError("bad L sweep bounds");
    for (int l = l_from; l <= l_to; l += l_step) cfg.L_values.push_back(l);
  }
  return cfg;
}

}  // namespace kgen
