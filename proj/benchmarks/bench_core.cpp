#include <benchmark/benchmark.h>

#include <numbers>

#include "vlcsim/analysis.hpp"
#include "vlcsim/montecarlo.hpp"

namespace {

constexpr double deg = std::numbers::pi / 180.0;

void BM_ChannelGain(benchmark::State& state) {
    const vlcsim::Luminaire tx({1, 1, 3}, 30.0 * deg);
    const vlcsim::Photodetector rx({1.4, 1.2, 0.75}, 1e-4, 30.0 * deg, 1.5, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(vlcsim::channel_gain(tx, rx));
}
BENCHMARK(BM_ChannelGain);

void BM_ApqModDemod(benchmark::State& state) {
    const auto cfg = vlcsim::make_apq_config(static_cast<unsigned>(state.range()), 0.3);
    const vlcsim::DetectionScale scale{520.0};
    unsigned k = 0;
    for (auto _ : state) {
        const auto c = vlcsim::index_to_components(k++ % cfg.m_total, cfg);
        const double rx = scale.value * vlcsim::apq_modulate(c, cfg).value;
        benchmark::DoNotOptimize(vlcsim::sic_demodulate(rx, scale, cfg));
    }
}
BENCHMARK(BM_ApqModDemod)->Arg(8)->Arg(16)->Arg(32);

void BM_GsskDetect(benchmark::State& state) {
    const auto cfg = vlcsim::make_gssk_config(static_cast<unsigned>(state.range()));
    std::vector<double> gains(cfg.n_tx);
    for (unsigned i = 0; i < cfg.n_tx; ++i) gains[i] = 100.0 / (i + 1);
    double rx = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(vlcsim::gssk_detect_ml(rx, gains, cfg));
        rx += 7.7;
        if (rx > 300.0) rx = 0.0;
    }
}
BENCHMARK(BM_GsskDetect)->Arg(3)->Arg(4)->Arg(5);

void BM_AnalyticSer(benchmark::State& state) {
    const auto powers = vlcsim::analysis_powers(vlcsim::make_apq_config(16, 0.3));
    double s = 10.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(vlcsim::ser_total(vlcsim::DetectionScale{s}, powers));
        s = s < 2000.0 ? s + 1.0 : 10.0;
    }
}
BENCHMARK(BM_AnalyticSer);

void BM_SerPoint(benchmark::State& state) {
    const vlcsim::Link link = vlcsim::ApqLink{vlcsim::make_apq_config(16, 0.3), 1.646e-4};
    for (auto _ : state)
        benchmark::DoNotOptimize(
            vlcsim::run_ser_point(link, 120.0, static_cast<std::uint64_t>(state.range()), 1, 0, 1));
    state.SetItemsProcessed(state.iterations() * state.range());
}
BENCHMARK(BM_SerPoint)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
