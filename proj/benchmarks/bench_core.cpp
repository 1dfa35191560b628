#include <complex>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "chaoslab/eigensolve.hpp"
#include "chaoslab/entanglement.hpp"
#include "chaoslab/hamiltonian.hpp"
#include "chaoslab/spectral_stats.hpp"

using namespace chaoslab;

namespace {

ModelSpec1D aa_chain(int L) {
    ModelSpec1D spec;
    spec.length = L;
    spec.range = L - 1;
    spec.coupling = 15 * spec.critical_coupling();
    return spec;
}

std::vector<std::complex<double>> random_state(int L, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<std::complex<double>> psi(std::size_t{1} << L);
    double norm = 0;
    for (auto& c : psi) {
        c = {g(rng), g(rng)};
        norm += std::norm(c);
    }
    for (auto& c : psi) c /= std::sqrt(norm);
    return psi;
}

// Central band of the L-site chain, the range the sweeps diagonalize.
IndexRange central_band(int L) { return select_band(band_layout(unperturbed_energies(aa_chain(L)), L), L / 2).members; }

}  // namespace

static void BM_BuildTorus(benchmark::State& state) {
    ModelSpec2D spec;
    spec.coupling = 0.03;
    const auto r = sample_realization(spec, 1);
    for (auto _ : state) benchmark::DoNotOptimize(build_h_2d(spec, r));
}
BENCHMARK(BM_BuildTorus)->Unit(benchmark::kMicrosecond);

static void BM_BuildChainRealGauge(benchmark::State& state) {
    const auto spec = aa_chain(static_cast<int>(state.range(0)));
    const auto r = sample_realization(spec, 1);
    for (auto _ : state) benchmark::DoNotOptimize(build_h_1d_real_gauge(spec, r));
}
BENCHMARK(BM_BuildChainRealGauge)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_EigSymmetricFull(benchmark::State& state) {
    const auto spec = aa_chain(static_cast<int>(state.range(0)));
    const RealMatrix h = build_h_1d_real_gauge(spec, sample_realization(spec, 2));
    for (auto _ : state) benchmark::DoNotOptimize(eig_symmetric(h));
}
BENCHMARK(BM_EigSymmetricFull)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_EigSymmetricCentralBand(benchmark::State& state) {
    const int L = static_cast<int>(state.range(0));
    const auto spec = aa_chain(L);
    const RealMatrix h = build_h_1d_real_gauge(spec, sample_realization(spec, 2));
    const IndexRange band = central_band(L);
    for (auto _ : state) benchmark::DoNotOptimize(eig_symmetric_partial(h, [&](const Eigen::VectorXd&) { return band; }));
}
BENCHMARK(BM_EigSymmetricCentralBand)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_EigHermitian(benchmark::State& state) {
    const auto spec = aa_chain(static_cast<int>(state.range(0)));
    const ComplexMatrix h = build_h_1d(spec, sample_realization(spec, 2));
    for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(h));
}
BENCHMARK(BM_EigHermitian)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_PartialTraceHalf(benchmark::State& state) {
    const int L = static_cast<int>(state.range(0));
    const auto psi = random_state(L, 3);
    std::vector<int> keep;
    for (int q = 0; q < L; q += 2) keep.push_back(q);
    for (auto _ : state) benchmark::DoNotOptimize(partial_trace(psi, keep));
}
BENCHMARK(BM_PartialTraceHalf)->Arg(8)->Arg(12)->Unit(benchmark::kMicrosecond);

static void BM_BlockEntropyHalf(benchmark::State& state) {
    const int L = static_cast<int>(state.range(0));
    const auto psi = random_state(L, 4);
    for (auto _ : state) benchmark::DoNotOptimize(block_entropy(std::span<const std::complex<double>>(psi), 0, L / 2));
}
BENCHMARK(BM_BlockEntropyHalf)->Arg(8)->Arg(12)->Unit(benchmark::kMicrosecond);

static void BM_TwoQubitRdm(benchmark::State& state) {
    const auto psi = random_state(12, 5);
    for (auto _ : state) benchmark::DoNotOptimize(two_qubit_rdm(std::span<const std::complex<double>>(psi), 3, 8));
}
BENCHMARK(BM_TwoQubitRdm)->Unit(benchmark::kMicrosecond);

static void BM_Concurrence(benchmark::State& state) {
    const auto psi = random_state(12, 6);
    const Eigen::Matrix4cd rho = two_qubit_rdm(std::span<const std::complex<double>>(psi), 0, 1);
    for (auto _ : state) benchmark::DoNotOptimize(concurrence(rho));
}
BENCHMARK(BM_Concurrence);

static void BM_StaircaseUnfolding(benchmark::State& state) {
    std::mt19937_64 rng(7);
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> levels(static_cast<std::size_t>(state.range(0)));
    for (std::size_t i = 1; i < levels.size(); ++i) levels[i] = levels[i - 1] + expo(rng);
    for (auto _ : state) benchmark::DoNotOptimize(staircase_unfolded_spacings(levels));
}
BENCHMARK(BM_StaircaseUnfolding)->Arg(126)->Arg(924)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
