// Copyright 2026 The gupcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include "gup/dualbound.hpp"
#include "gup/extremizer.hpp"
#include "gup/kernel.hpp"
#include "gup/oracle.hpp"
#include "gup/quadrature.hpp"
#include "gup/specialfn.hpp"

namespace {

void BM_GaussLegendre(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gup::gaussLegendre(n, -1.0, 1.0));
}
BENCHMARK(BM_GaussLegendre)->Arg(16)->Arg(64)->Arg(256);

void BM_FourierLegendreKernels(benchmark::State& state) {
  const double xi = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gup::fourierLegendreKernels(60, xi));
}
BENCHMARK(BM_FourierLegendreKernels)->Arg(1)->Arg(30)->Arg(300);

void BM_MinNormPolynomial(benchmark::State& state) {
  const double p = state.range(0) / 2.0;
  const gup::WeightSpec w{1.0, 0.3, p, 1};
  for (auto _ : state) benchmark::DoNotOptimize(gup::minNormPolynomial(w, 20, p));
}
BENCHMARK(BM_MinNormPolynomial)->Arg(4)->Arg(6)->Unit(benchmark::kMicrosecond);

void BM_PhiOneMinus(benchmark::State& state) {
  const auto phi = gup::buildPhi(1.0, 1.0, 40, 2.0, 1);
  double xi = 0.0;
  for (auto _ : state) {
    xi = xi > 50.0 ? 0.01 : xi + 0.37;
    benchmark::DoNotOptimize(gup::oneMinusPhiHat(phi, std::span<const double>(&xi, 1)));
  }
}
BENCHMARK(BM_PhiOneMinus);

void BM_GaussianUpperBound(benchmark::State& state) {
  const auto params = gup::makeGaussianParams(0.5);
  for (auto _ : state) benchmark::DoNotOptimize(gup::dualityUpperBoundGaussian(5.0, params, 2.0, 2.0, 1));
}
BENCHMARK(BM_GaussianUpperBound)->Unit(benchmark::kMillisecond);

void BM_ExtremizerWitness(benchmark::State& state) {
  for (auto _ : state) {
    const auto spec = gup::buildExtremizer(6.0, 0.5, 1.0, 1.0);
    benchmark::DoNotOptimize(gup::extremizerWitness(spec, 2.0, 2.0));
  }
}
BENCHMARK(BM_ExtremizerWitness)->Unit(benchmark::kMillisecond);

void BM_GramOracle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gup::buildGram(0.5, n).sharpConstant(4.0));
}
BENCHMARK(BM_GramOracle)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
