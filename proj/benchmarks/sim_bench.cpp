#include <benchmark/benchmark.h>

#include <random>
#include <sstream>

#include "ssresf/sim.hpp"

using namespace ssresf;

namespace {

// Chain of DFF stages with inverters between them, clocked continuously.
FlatDesign pipeline_design(int stages) {
  std::ostringstream os;
  os << "module top(input d, input ck, output q);\n  wire";
  for (int s = 0; s < stages; ++s)
    os << " w" << s << "," << " x" << s << (s + 1 < stages ? "," : ";\n");
  std::string prev = "d";
  for (int s = 0; s < stages; ++s) {
    os << "  DFF f" << s << "(.D(" << prev << "), .CK(ck), .Q(w" << s << "));\n";
    os << "  NOT n" << s << "(.A(w" << s << "), .Y(x" << s << "));\n";
    prev = "x" + std::to_string(s);
  }
  os << "  BUF b(.A(" << prev << "), .Y(q));\nendmodule\n";
  return elaborate(parse_netlist(os.str()), "top");
}

void BM_simulate_pipeline(benchmark::State& state) {
  auto d = pipeline_design(static_cast<int>(state.range(0)));
  Stimulus stim;
  stim.duration = 2000;
  stim.clock = ClockSpec{"ck", 10, 10};
  stim.inputs["d"] = {{0, true}, {55, false}, {140, true}};
  for (auto _ : state) {
    Trace t = simulate(d, stim, {});
    benchmark::DoNotOptimize(t);
  }
  state.SetItemsProcessed(state.iterations() * stim.duration);
}

void BM_simulate_with_set(benchmark::State& state) {
  auto d = pipeline_design(16);
  Stimulus stim;
  stim.duration = 2000;
  stim.clock = ClockSpec{"ck", 10, 10};
  stim.inputs["d"] = {{0, true}};
  InjectionEvent ev;
  ev.target_cell = 1;  // first NOT
  ev.kind = FaultKind::SET;
  ev.time = 500;
  ev.width = 3;
  for (auto _ : state) {
    Trace t = simulate(d, stim, {ev});
    benchmark::DoNotOptimize(t);
  }
}

}  // namespace

BENCHMARK(BM_simulate_pipeline)->Arg(8)->Arg(32)->Arg(128);
BENCHMARK(BM_simulate_with_set);

BENCHMARK_MAIN();
