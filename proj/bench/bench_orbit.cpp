// OpenMP kernels vs their serial references on the three-center ratio-2 group.

#include <benchmark/benchmark.h>

#include "homothety/json_io.hpp"
#include "homothety/oracle.hpp"

using namespace homothety;

namespace {

const GroupSpec& spec() {
  static const GroupSpec s = load_spec(std::string(HOMOTHETY_SPEC_DIR) + "/three_centers.json");
  return s;
}

const std::vector<Vector>& orbit_points() {
  static const std::vector<Vector> pts = enumerate_orbit_serial(spec(), Vector(2), 8, 1'000'000).points;
  return pts;
}

Box square() {
  Box b;
  b.bounds.assign(2, {Rational(-2), Rational(2)});
  return b;
}

template <auto Enumerate>
void enumerate(benchmark::State& st) {
  for (auto _ : st) {
    auto e = Enumerate(spec(), Vector(2), static_cast<int>(st.range(0)), 1'000'000);
    benchmark::DoNotOptimize(e.points.data());
    st.counters["points"] = static_cast<double>(e.size());
  }
}

template <auto Contain>
void containment(benchmark::State& st) {
  const auto desc = orbit_closure(spec(), Vector(2));
  orbit_points();  // build outside the timed loop
  for (auto _ : st) benchmark::DoNotOptimize(Contain(orbit_points(), desc, 0.0).points_checked);
}

template <auto Cover>
void covering(benchmark::State& st) {
  const auto desc = orbit_closure(spec(), Vector(2));
  const Rational step(1, 16);
  orbit_points();
  for (auto _ : st) benchmark::DoNotOptimize(Cover(orbit_points(), desc, square(), 0.25, step, {}).gap_count);
}

}  // namespace

BENCHMARK(enumerate<enumerate_orbit>)->Name("enumerate/openmp")->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(enumerate<enumerate_orbit_serial>)->Name("enumerate/serial")->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(containment<verify_containment>)->Name("containment/openmp")->Unit(benchmark::kMillisecond);
BENCHMARK(containment<verify_containment_serial>)->Name("containment/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(covering<verify_covering>)->Name("covering/openmp")->Unit(benchmark::kMillisecond);
BENCHMARK(covering<verify_covering_serial>)->Name("covering/serial")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
