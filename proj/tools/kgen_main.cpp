// Command-line front end: generate, infer, probability, decide, campaign.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "kgen/campaign.hpp"
#include "kgen/decider.hpp"
#include "kgen/generator.hpp"
#include "kgen/infer.hpp"
#include "kgen/oracle.hpp"
#include "kgen/text.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitGeneration = 2;
constexpr int kExitInternal = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw CLI::ValidationError("cannot write file: " + path);
  out << text;
}

struct SpecFlags {
  std::string clause_size;
  std::string prop_prob;
  std::string length_spec;
  std::string prop_spec;

  void attach(CLI::App* cmd) {
    cmd->add_option("--clause-size", clause_size,
                    "basic-method clause length C (e.g. 3, 2.25)");
    cmd->add_option("--prop-prob", prop_prob,
                    "basic-method propositional probability p (e.g. 0.5, 3/5)");
    cmd->add_option("--length-spec", length_spec,
                    "advanced clause-length distributions, e.g. [[0,0,1]]");
    cmd->add_option("--prop-spec", prop_spec,
                    "advanced prop-count distributions, e.g. [[[],[],[0,3,3,0]]]");
  }

  void resolve(kgen::GenParams& gp) const {
    const bool basic = !clause_size.empty() || !prop_prob.empty();
    const bool advanced = !length_spec.empty() || !prop_spec.empty();
    if (basic == advanced)
      throw CLI::ValidationError(
          "give either --clause-size with --prop-prob, or --length-spec with "
          "--prop-spec");
    if (basic) {
      if (clause_size.empty() || prop_prob.empty())
        throw CLI::ValidationError("--clause-size and --prop-prob go together");
      kgen::basic_to_advanced(kgen::Rational64::parse(clause_size),
                              kgen::Rational64::parse(prop_prob), gp.d, gp.method,
                              gp.C, gp.p);
    } else {
      if (length_spec.empty() || prop_spec.empty())
        throw CLI::ValidationError("--length-spec and --prop-spec go together");
      gp.C = kgen::parse_length_spec(length_spec);
      gp.p = kgen::parse_prop_spec(prop_spec);
    }
  }
};

void report_warnings(const kgen::Diagnostics& diag) {
  for (const auto& w : diag.warnings) std::cerr << "warning: " << w << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random CNF-box-m benchmark generator for modal logic K(m)"};
  app.require_subcommand(1);

  // generate
  auto* gen_cmd = app.add_subcommand("generate", "generate a random formula");
  kgen::GenParams gen_gp;
  SpecFlags gen_specs;
  std::string gen_method = "new", gen_out;
  gen_cmd->add_option("--depth", gen_gp.d, "maximum modal depth d");
  gen_cmd->add_option("--boxes", gen_gp.m, "number of box symbols m");
  gen_cmd->add_option("--clauses", gen_gp.L, "top-level clause count L");
  gen_cmd->add_option("--vars", gen_gp.N, "propositional variable count N");
  gen_specs.attach(gen_cmd);
  gen_cmd->add_option("--method", gen_method, "new or old")
      ->check(CLI::IsMember({"new", "old"}));
  gen_cmd->add_option("--seed", gen_gp.seed, "64-bit seed");
  gen_cmd->add_option("--out", gen_out, "output file (default stdout)");

  // infer
  auto* infer_cmd =
      app.add_subcommand("infer", "infer C and p from a target formula");
  std::string infer_in;
  bool infer_normalize = false;
  infer_cmd->add_option("formula", infer_in, "formula file")->required();
  infer_cmd->add_flag("--normalize", infer_normalize, "normalize the weights");

  // probability
  auto* prob_cmd = app.add_subcommand(
      "probability", "exact emission probability of a formula");
  std::string prob_in, prob_mode = "as_set";
  kgen::GenParams prob_gp;
  SpecFlags prob_specs;
  long long prob_mc_samples = 0;
  std::uint64_t prob_mc_seed = 0;
  prob_cmd->add_option("formula", prob_in, "formula file")->required();
  prob_cmd->add_option("--mode", prob_mode, "ordered or as_set")
      ->check(CLI::IsMember({"ordered", "as_set"}));
  prob_cmd->add_option("--boxes", prob_gp.m, "override m");
  prob_cmd->add_option("--vars", prob_gp.N, "override N");
  prob_specs.attach(prob_cmd);
  prob_cmd->add_option("--monte-carlo", prob_mc_samples,
                       "also estimate by Monte Carlo with this many samples");
  prob_cmd->add_option("--seed", prob_mc_seed, "Monte Carlo master seed");

  // decide
  auto* decide_cmd = app.add_subcommand("decide", "K(m) satisfiability");
  std::string decide_in;
  double decide_timeout = 10.0;
  decide_cmd->add_option("formula", decide_in, "formula file")->required();
  decide_cmd->add_option("--timeout", decide_timeout, "timeout in seconds");

  // campaign
  auto* camp_cmd = app.add_subcommand("campaign", "sweep L and decide samples");
  std::string camp_config, camp_csv, camp_plot;
  kgen::CampaignConfig camp;
  SpecFlags camp_specs;
  std::string camp_method = "new";
  int camp_l_from = 0, camp_l_to = 0, camp_l_step = 1;
  double camp_timeout = 10.0;
  std::vector<double> camp_percentiles;
  camp_cmd->add_option("--config", camp_config, "key=value config file");
  camp_cmd->add_option("--depth", camp.base.d, "maximum modal depth d");
  camp_cmd->add_option("--boxes", camp.base.m, "number of box symbols m");
  camp_cmd->add_option("--vars", camp.base.N, "propositional variable count N");
  camp_specs.attach(camp_cmd);
  camp_cmd->add_option("--method", camp_method, "new or old")
      ->check(CLI::IsMember({"new", "old"}));
  camp_cmd->add_option("--seed", camp.master_seed, "master seed");
  camp_cmd->add_option("--l-from", camp_l_from, "first L value");
  camp_cmd->add_option("--l-to", camp_l_to, "last L value");
  camp_cmd->add_option("--l-step", camp_l_step, "L increment");
  camp_cmd->add_option("--samples", camp.samples_per_point, "samples per point");
  camp_cmd->add_option("--percentiles", camp_percentiles,
                       "percentiles to report (default 50 90)");
  camp_cmd->add_option("--timeout", camp_timeout, "per-formula timeout, seconds");
  camp_cmd->add_option("--threads", camp.threads, "worker threads (0 = auto)");
  camp_cmd->add_option("--csv", camp_csv, "CSV output path")->required();
  camp_cmd->add_option("--plot", camp_plot,
                       "also write <plot>.times.gp, .fractions.gp, .trivial.gp");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gen_cmd) {
      gen_gp.method = gen_method == "old" ? kgen::Method::kOld : kgen::Method::kNew;
      gen_specs.resolve(gen_gp);
      kgen::Diagnostics diag = kgen::validate_params(gen_gp);
      if (!diag.ok()) {
        for (const auto& e : diag.errors) std::cerr << "error: " << e << "\n";
        return kExitUsage;
      }
      report_warnings(diag);
      const std::string text = kgen::print_formula(kgen::generate_formula(gen_gp));
      if (gen_out.empty())
        std::cout << text << "\n";
      else
        write_file(gen_out, text + "\n");
      return 0;
    }

    if (*infer_cmd) {
      const kgen::Formula phi = kgen::parse_formula(read_file(infer_in));
      kgen::InferredParams inf = kgen::infer_params(phi);
      if (infer_normalize) {
        inf.C = kgen::normalize_spec(inf.C);
        inf.p = kgen::normalize_spec(inf.p);
      }
      std::cout << "d = " << inf.d << "\nm = " << inf.m << "\nL = " << inf.L
                << "\nN = " << inf.N << "\nC = " << kgen::print_spec(inf.C)
                << "\np = " << kgen::print_spec(inf.p) << "\n";
      return 0;
    }

    if (*prob_cmd) {
      const kgen::Formula phi = kgen::parse_formula(read_file(prob_in));
      kgen::GenParams gp;
      const kgen::InferredParams inf = kgen::infer_params(phi);
      gp.d = inf.d;
      gp.m = std::max(inf.m, 1);
      gp.L = inf.L;
      gp.N = std::max(inf.N, 1);
      gp.C = inf.C;
      gp.p = inf.p;
      if (prob_cmd->count("--boxes")) gp.m = prob_gp.m;
      if (prob_cmd->count("--vars")) gp.N = prob_gp.N;
      if (!prob_specs.length_spec.empty() || !prob_specs.clause_size.empty())
        prob_specs.resolve(gp);
      const auto mode = prob_mode == "ordered" ? kgen::ProbabilityMode::kOrdered
                                               : kgen::ProbabilityMode::kAsSet;
      const kgen::FormulaProbability res = kgen::formula_probability(phi, gp, mode);
      std::cout << "probability = " << res.value.numerator() << "/"
                << res.value.denominator() << " ("
                << boost::rational_cast<double>(res.value) << ")\n";
      if (!res.note.empty()) std::cout << "note: " << res.note << "\n";
      if (prob_mc_samples > 0) {
        const kgen::MonteCarloResult mc =
            kgen::monte_carlo_frequency(phi, gp, prob_mc_samples, prob_mc_seed);
        std::cout << "monte-carlo = " << mc.hits << "/" << mc.samples << " ("
                  << mc.frequency << "), 99% CI [" << mc.ci_low << ", "
                  << mc.ci_high << "]\n";
      }
      return 0;
    }

    if (*decide_cmd) {
      const kgen::Formula phi = kgen::parse_formula(read_file(decide_in));
      const auto timeout = std::chrono::duration_cast<std::chrono::nanoseconds>(
          std::chrono::duration<double>(decide_timeout));
      const kgen::DecisionOutcome out = kgen::k_satisfiable(phi, timeout);
      const char* status = out.status == kgen::Status::kSat ? "sat"
                           : out.status == kgen::Status::kUnsat ? "unsat"
                                                                : "timeout";
      std::cout << status << " trivially_sat=" << (out.trivially_sat ? 1 : 0)
                << " trivially_unsat=" << (out.trivially_unsat ? 1 : 0)
                << " elapsed_ms="
                << std::chrono::duration<double, std::milli>(out.elapsed).count()
                << " branches=" << out.stats.propositional_branches
                << " successor_checks=" << out.stats.modal_successor_checks << "\n";
      return 0;
    }

    if (*camp_cmd) {
      if (!camp_config.empty()) {
        camp = kgen::parse_campaign_config(read_file(camp_config));
      } else {
        camp.base.method =
            camp_method == "old" ? kgen::Method::kOld : kgen::Method::kNew;
        camp_specs.resolve(camp.base);
        if (camp_l_from < 1 || camp_l_to < camp_l_from || camp_l_step < 1)
          throw CLI::ValidationError("need --l-from/--l-to (with --l-step >= 1)");
        for (int l = camp_l_from; l <= camp_l_to; l += camp_l_step)
          camp.L_values.push_back(l);
        camp.timeout = std::chrono::duration_cast<std::chrono::nanoseconds>(
            std::chrono::duration<double>(camp_timeout));
        if (!camp_percentiles.empty()) camp.percentiles = camp_percentiles;
      }
      {
        kgen::GenParams probe = camp.base;
        probe.L = camp.L_values.empty() ? 1 : camp.L_values.front();
        report_warnings(kgen::validate_params(probe));
      }
      const std::vector<kgen::PointStats> stats =
          kgen::run_campaign(camp, &std::cerr);
      long long gen_failures = 0;
      for (const auto& p : stats) gen_failures += p.gen_failures;
      write_file(camp_csv, kgen::to_csv(stats, camp.percentiles));
      if (!camp_plot.empty()) {
        write_file(camp_plot + ".times.gp",
                   kgen::emit_plot_script(stats, kgen::PlotKind::kTimes,
                                          camp.percentiles, camp_csv,
                                          camp_plot + ".times.svg"));
        write_file(camp_plot + ".fractions.gp",
                   kgen::emit_plot_script(stats, kgen::PlotKind::kFractions,
                                          camp.percentiles, camp_csv,
                                          camp_plot + ".fractions.svg"));
        write_file(camp_plot + ".trivial.gp",
                   kgen::emit_plot_script(stats, kgen::PlotKind::kTrivial,
                                          camp.percentiles, camp_csv,
                                          camp_plot + ".trivial.svg"));
      }
      if (gen_failures > 0) {
        std::cerr << "error: " << gen_failures
                  << " samples failed generation (rejection cap)\n";
        return kExitGeneration;
      }
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const kgen::GenerationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGeneration;
  } catch (const kgen::SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const kgen::CampaignError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const kgen::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
