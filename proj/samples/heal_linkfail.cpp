// Runs the link-failure scenario on T1 and prints the incident table.
//   heal_linkfail [scenario.json]

#include <iostream>

#include "sdnheal/healloop/loop.hpp"

int main(int argc, char** argv) {
  using namespace sdnheal;
  const char* path = argc > 1 ? argv[1] : SDNHEAL_SAMPLES_DIR "/t1-linkfail.scenario.json";
  try {
    sim::Scenario s = sim::load_scenario(path);
    heal::RunReport r = heal::run_loop(s, bn::BnParams{}, recover::default_strategy_table(), heal::LoopConfig{});
    std::cout << heal::emit_report(r, heal::ReportFormat::table);
    for (const auto& i : r.incidents)
      for (const auto& o : i.outcomes) std::cout << "  " << describe(o.action) << ": " << o.detail << '\n';
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return 0;
}
