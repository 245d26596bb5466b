// Serial reference kernels vs OpenMP kernels on a 224x224 texture.
//
//   ./descriptor_bench                         # all descriptors
//   ./descriptor_bench --benchmark_filter=LPQ

#include <string>

#include <benchmark/benchmark.h>

#include "faceid/descriptors.hpp"
#include "faceid/reference.hpp"
#include "faceid/synth.hpp"

using namespace faceid;

namespace {

const GrayImage& test_image() {
  static const GrayImage img = make_texture(224, 42);
  return img;
}

void register_benchmarks() {
  for (DescriptorId id : extractable_descriptors()) {
    benchmark::RegisterBenchmark(
        (std::string(to_string(id)) + "/reference").c_str(),
        [id](benchmark::State& state) {
          DescriptorParams p;
          for (auto _ : state)
            benchmark::DoNotOptimize(reference::extract(id, test_image(), p));
        })
        ->Unit(benchmark::kMillisecond);
    benchmark::RegisterBenchmark(
        (std::string(to_string(id)) + "/openmp").c_str(),
        [id](benchmark::State& state) {
          DescriptorParams p;
          for (auto _ : state)
            benchmark::DoNotOptimize(
                extract(id, test_image(), p, /*threads=*/0));
        })
        ->Unit(benchmark::kMillisecond)
        ->UseRealTime();
  }
}

}  // namespace

int main(int argc, char** argv) {
  register_benchmarks();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
