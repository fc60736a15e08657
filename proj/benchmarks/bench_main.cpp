#include <benchmark/benchmark.h>

#include "lightnn/analysis.hpp"
#include "lightnn/initializers.hpp"
#include "lightnn/network.hpp"
#include "lightnn/sparse_graph.hpp"

namespace {

using namespace lightnn;

DenseNetwork make_net() {
    DenseNetwork net = DenseNetwork::mlp({784, 300, 100, 10});
    InitializerSpec spec;
    spec.rng_seed = 1;
    apply_initializer(net, spec);
    return net;
}

void BM_forward_batch100(benchmark::State& state) {
    const auto net = make_net();
    const Matrix batch = (Matrix::Random(100, 784).array() + 1.0) / 2.0;
    for (auto _ : state) benchmark::DoNotOptimize(forward(net, batch));
}
BENCHMARK(BM_forward_batch100);

void BM_loss_and_gradients_batch100(benchmark::State& state) {
    const auto net = make_net();
    const Matrix batch = (Matrix::Random(100, 784).array() + 1.0) / 2.0;
    std::vector<int> labels(100);
    for (int i = 0; i < 100; ++i) labels[static_cast<std::size_t>(i)] = i % 10;
    const Matrix targets = one_hot(labels, 10);
    for (auto _ : state) benchmark::DoNotOptimize(loss_and_gradients(net, batch, targets));
}
BENCHMARK(BM_loss_and_gradients_batch100);

void BM_sgd_step(benchmark::State& state) {
    auto net = make_net();
    const Matrix batch = (Matrix::Random(100, 784).array() + 1.0) / 2.0;
    std::vector<int> labels(100);
    for (int i = 0; i < 100; ++i) labels[static_cast<std::size_t>(i)] = i % 10;
    const auto lg = loss_and_gradients(net, batch, one_hot(labels, 10));
    for (auto _ : state) sgd_step(net, lg.grads, 0.05);
}
BENCHMARK(BM_sgd_step);

void BM_categorize_top_k(benchmark::State& state) {
    const auto net = make_net();
    const long k = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(categorize_top_k(net, k));
}
BENCHMARK(BM_categorize_top_k)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_path_report(benchmark::State& state) {
    const auto net = make_net();
    const auto view = categorize_top_k(net, state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(path_report(view));
}
BENCHMARK(BM_path_report)->Arg(10000)->Arg(100000);

void BM_init_lightning(benchmark::State& state) {
    LightningConfig config;
    config.n_lightnings = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(init_lightning({784, 300, 100, 10}, config));
}
BENCHMARK(BM_init_lightning)->Arg(1000)->Arg(10000);

} // namespace

BENCHMARK_MAIN();
