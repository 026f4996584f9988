#include <benchmark/benchmark.h>

#include "qpir/oracle.hpp"
#include "qpir/verify.hpp"

using namespace qpir;

namespace {

struct Instance {
    FieldPtr field;
    SchemeParams p;
    SchemeCodes codes;
    StorageSystem storage;
    Instance(uint64_t q, uint32_t pm, uint32_t mm, size_t n, size_t k, size_t t, size_t m)
        : field(Field::make(pm, mm)), p(derive_params(q, n, k, t, m)),
          codes(build_codes(field.get(), p)) {
        Rng rng(1);
        storage = encode_storage(rng.uniform_matrix(field.get(), p.m * p.beta, 2 * p.k),
                                 codes, p);
    }
};

Instance& worked_instance() {
    static Instance inst(7, 7, 1, 6, 3, 2, 4);
    return inst;
}

} // namespace

static void BM_FieldMul(benchmark::State& state) {
    FieldPtr f = Field::make(2, 4);
    std::vector<FieldElement> xs;
    for (uint64_t v = 1; v < f->q(); ++v) xs.push_back(f->element(v));
    size_t i = 0;
    for (auto _ : state) {
        FieldElement r = xs[i % xs.size()] * xs[(i * 7 + 3) % xs.size()];
        benchmark::DoNotOptimize(r);
        ++i;
    }
}
BENCHMARK(BM_FieldMul);

static void BM_Rref(benchmark::State& state) {
    FieldPtr f = Field::make(13);
    Rng rng(3);
    Matrix m = rng.uniform_matrix(f.get(), state.range(0), 2 * state.range(0));
    for (auto _ : state) {
        RrefResult r = rref(m);
        benchmark::DoNotOptimize(r.rank);
    }
}
BENCHMARK(BM_Rref)->Arg(8)->Arg(16)->Arg(32);

static void BM_CodeConstruction(benchmark::State& state) {
    FieldPtr f = Field::make(2, 4);
    for (auto _ : state) {
        SchemeParams p = derive_params(16, 10, 3, 2, 1);
        SchemeCodes codes = build_codes(f.get(), p);
        benchmark::DoNotOptimize(codes.bundle.G_S.rows());
    }
}
BENCHMARK(BM_CodeConstruction);

static void BM_CosetDecode(benchmark::State& state) {
    Instance& inst = worked_instance();
    RoundSchedule sched = schedule(inst.p, inst.field.get(), 0);
    CosetDecoder dec(inst.codes.bundle.G_S, sched.M);
    Rng rng(9);
    Vec a(2 * inst.p.n_eff, inst.field->zero());
    for (auto& x : a) x = rng.uniform(inst.field.get());
    for (auto _ : state) {
        Vec o = dec.decode(a);
        benchmark::DoNotOptimize(o.size());
    }
}
BENCHMARK(BM_CosetDecode);

static void BM_ProtocolRound(benchmark::State& state) {
    Instance& inst = worked_instance();
    Rng rng(11);
    for (auto _ : state) {
        RoundState rs = build_queries(inst.p, inst.codes, 0, 0, rng);
        Vec a(2 * inst.p.n_eff, inst.field->zero());
        for (size_t s = 0; s < inst.p.n_eff; ++s) {
            auto [a1, a2] = server_response(inst.storage, s, rs.Q);
            a[s] = a1;
            a[inst.p.n_eff + s] = a2;
        }
        Vec o = simulate_measurement(a, inst.codes.bundle.G_S, rs.sched.M);
        benchmark::DoNotOptimize(o.size());
    }
}
BENCHMARK(BM_ProtocolRound);

static void BM_FullProtocol(benchmark::State& state) {
    Instance& inst = worked_instance();
    uint64_t seed = 0;
    for (auto _ : state) {
        Transcript tr = run_protocol(inst.p, inst.codes, inst.storage, seed % inst.p.m,
                                     seed++);
        benchmark::DoNotOptimize(tr.decoded.rows());
    }
}
BENCHMARK(BM_FullProtocol);

static void BM_DenseOracleRound(benchmark::State& state) {
    static Instance inst(5, 5, 1, 4, 2, 2, 1);
    for (auto _ : state) {
        Transcript tr = run_dense_protocol(inst.p, inst.codes, inst.storage, 0, 21);
        benchmark::DoNotOptimize(tr.rounds.size());
    }
}
BENCHMARK(BM_DenseOracleRound);

BENCHMARK_MAIN();
