// Command-line front end: validate, build-bn, diagnose, run, batch.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sdnheal/bndiag/bayes_net.hpp"
#include "sdnheal/bndiag/builder.hpp"
#include "sdnheal/bndiag/diagnosis.hpp"
#include "sdnheal/bndiag/elimination.hpp"
#include "sdnheal/healloop/run.hpp"
#include "sdnheal/netmodel/topology_io.hpp"

namespace {

using namespace sdnheal;

int cmd_validate(const std::string& path) {
  try {
    net::load_topology(std::string_view(read_file(path)));
  } catch (const ValidationError& e) {
    for (const auto& v : e.violations()) std::cerr << path << ": " << v << '\n';
    return heal::kExitInput;
  } catch (const Error& e) {
    std::cerr << path << ": " << e.what() << '\n';
    return heal::kExitInput;
  }
  std::cout << path << ": ok\n";
  return heal::kExitOk;
}

int cmd_build_bn(const std::string& topo_path, const std::optional<std::string>& params_path,
                 const std::optional<std::string>& out) {
  net::Topology t;
  bn::BnParams params;
  try {
    t = net::load_topology(std::string_view(read_file(topo_path)));
    if (params_path) params = bn::bn_params_from_json(parse_json(read_file(*params_path)));
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return heal::kExitInput;
  }
  try {
    std::string text = bn::bn_to_json(bn::build_bn(t, params)).dump(2) + "\n";
    if (out)
      write_file(*out, text);
    else
      std::cout << text;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return heal::kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return heal::kExitRuntime;
  }
  return heal::kExitOk;
}

int cmd_diagnose(const std::string& bn_path, const std::string& evidence_path, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    std::cerr << "error: threshold must lie in (0,1)\n";
    return heal::kExitInput;
  }
  std::optional<bn::BayesNet> net;
  bn::EvidenceMap ev;
  try {
    net.emplace(bn::bn_from_json(parse_json(read_file(bn_path))));
    ev = bn::evidence_from_json(parse_json(read_file(evidence_path)));
    bn::check_evidence(*net, ev);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return heal::kExitInput;
  }
  try {
    auto post = bn::posterior_marginals(*net, ev);
    auto d = bn::map_diagnosis(post, threshold, net->priors());
    json out = {{"posterior", bn::posterior_to_json(post)}, {"diagnosis", bn::diagnosis_to_json(d)}};
    std::cout << out.dump(2) << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return heal::kExitRuntime;
  }
  return heal::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed-loop fault diagnosis and recovery for simulated SDN networks"};
  app.require_subcommand(1);

  std::string path;
  std::string evidence;
  std::optional<std::string> params, out, strategy, policy;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  double threshold = 0.5;
  bool suggest_only = false;

  auto* validate = app.add_subcommand("validate", "Check a topology document");
  validate->add_option("topology", path, "Topology file")->required();

  auto* build = app.add_subcommand("build-bn", "Build the diagnosis network for a topology");
  build->add_option("topology", path, "Topology file")->required();
  build->add_option("--params", params, "Network parameter file");
  build->add_option("--out", out, "Write here instead of stdout");

  auto* diagnose = app.add_subcommand("diagnose", "Posterior and verdict for one evidence set");
  diagnose->add_option("bn", path, "Network file from build-bn")->required();
  diagnose->add_option("--evidence", evidence, "Evidence file (symptom id -> boolean)")->required();
  diagnose->add_option("--threshold", threshold, "Confidence threshold in (0,1)");

  auto add_run_options = [&](CLI::App* c) {
    c->add_option("--seed", seed, "Override the scenario seed");
    c->add_option("--out", out, "Write here instead of stdout");
    c->add_option("--params", params, "Network parameter file");
    c->add_option("--strategy", strategy, "Strategy override file");
    c->add_option("--evidence-policy", policy, "closed-world or open-world")
        ->check(CLI::IsMember({"closed-world", "open-world"}));
    c->add_flag("--suggest-only", suggest_only, "Plan recovery without applying it");
  };
  auto* run = app.add_subcommand("run", "Run the loop over one scenario");
  run->add_option("scenario", path, "Scenario file")->required();
  run->add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));
  add_run_options(run);

  auto* batch = app.add_subcommand("batch", "Run every *.scenario.json in a directory");
  batch->add_option("dir", path, "Scenario directory")->required();
  add_run_options(batch);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : heal::kExitInput;
  }

  if (*validate) return cmd_validate(path);
  if (*build) return cmd_build_bn(path, params, out);
  if (*diagnose) return cmd_diagnose(path, evidence, threshold);

  heal::RunOptions opts;
  opts.seed = seed;
  if (out) opts.out = *out;
  if (params) opts.params = *params;
  if (strategy) opts.strategy = *strategy;
  if (policy) opts.policy = alarms::parse_evidence_policy(*policy);
  opts.suggest_only = suggest_only;
  if (*run) {
    opts.format = heal::parse_report_format(format);
    return heal::run_scenario(path, opts);
  }
  return heal::run_batch(path, opts);
}
