#include "wavequbo/encoder.hpp"
#include "wavequbo/errors.hpp"
#include "wavequbo/harness.hpp"
#include "wavequbo/samplers.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace wavequbo;

namespace {

Bitstring bits_of(std::uint64_t x, int r) {
    Bitstring b(r);
    for (int i = 0; i < r; ++i) b[i] = static_cast<std::uint8_t>((x >> i) & 1);
    return b;
}

QuboProblem random_qubo(int r, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    QuboProblem q;
    q.Q.resize(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j <= i; ++j) q.Q(i, j) = q.Q(j, i) = u(rng);
    q.L = Vector::NullaryExpr(r, [&] { return u(rng); });
    q.offset = u(rng);
    return q;
}

QuboProblem one_variable() {
    QuboProblem q;
    q.Q = Matrix::Ones(1, 1);
    q.L = Vector::Constant(1, -2.0);
    q.offset = 1.0;
    return q;
}

Encoding scenario_encoding(const char* id, AnsatzKind kind, int N, int n_spin) {
    return encode(find_scenario(id).problem, make_basis(kind, N), n_spin);
}

}  // namespace

TEST(QuboEnergy, Examples) {
    const auto q = one_variable();
    EXPECT_EQ(qubo_energy(q, {1}), 0.0);
    EXPECT_EQ(qubo_energy(q, {0}), 1.0);
    EXPECT_THROW(qubo_energy(q, {0, 1}), PreconditionError);
}

TEST(QuboEnergy, MatchesResidualNorm) {
    std::mt19937_64 rng(8);
    const auto enc = scenario_encoding("exp4", AnsatzKind::Circulant, 2, 5);
    ASSERT_EQ(enc.qubo.r(), 10);
    for (int t = 0; t < 200; ++t) {
        const Bitstring b = bits_of(rng(), 10);
        Vector w(10);
        for (int i = 0; i < 10; ++i) w(i) = b[i];
        const double ref = (enc.binarized.A * w - enc.binarized.b).squaredNorm();
        EXPECT_NEAR(qubo_energy(enc.qubo, b), ref, 1e-9 * std::max(1.0, ref));
    }
}

TEST(BruteForce, HomogeneousUniqueGround) {
    const auto enc = scenario_encoding("exp1", AnsatzKind::TruncatedFourier, 2, 2);
    const auto g = brute_force(enc.qubo);
    EXPECT_NEAR(g.energy, 0.0, 1e-18);
    ASSERT_EQ(g.degeneracy(), 1u);
    const Vector w = decode_bits(g.states[0], 2);
    EXPECT_EQ(w(0), 0.5);
    EXPECT_EQ(w(1), 0.0);
}

TEST(BruteForce, ZeroProblemIsFullyDegenerate) {
    QuboProblem q;
    q.Q = Matrix::Zero(6, 6);
    q.L = Vector::Zero(6);
    const auto g = brute_force(q);
    EXPECT_EQ(g.energy, 0.0);
    EXPECT_EQ(g.degeneracy(), 64u);
}

TEST(BruteForce, MatchesNaiveEnumeration) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        const int r = 1 + trial % 12;
        const auto q = random_qubo(r, rng);
        double best = 1e300;
        std::set<Bitstring> arg;
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << r); ++x) {
            const Bitstring b = bits_of(x, r);
            const double e = qubo_energy(q, b);
            if (e < best - 1e-12) {
                best = e;
                arg.clear();
            }
            if (e <= best + 1e-12) arg.insert(b);
        }
        const auto g = brute_force(q);
        EXPECT_NEAR(g.energy, best, 1e-12);
        EXPECT_EQ(std::set<Bitstring>(g.states.begin(), g.states.end()), arg);
    }
}

TEST(BruteForce, WithLowAndHighBlocks) {
    // r > 16 exercises the block restarts of the Gray-code walk
    const auto enc = scenario_encoding("exp3", AnsatzKind::Circulant, 6, 3);
    ASSERT_EQ(enc.qubo.r(), 18);
    const auto g = brute_force(enc.qubo);
    std::mt19937_64 rng(4);
    for (int t = 0; t < 2000; ++t) EXPECT_GE(qubo_energy(enc.qubo, bits_of(rng(), 18)), g.energy - 1e-12);
    for (const auto& s : g.states) EXPECT_NEAR(qubo_energy(enc.qubo, s), g.energy, 1e-12);
}

TEST(BruteForce, RejectsAboveCap) {
    QuboProblem q;
    q.Q = Matrix::Zero(27, 27);
    q.L = Vector::Zero(27);
    EXPECT_THROW(brute_force(q), PreconditionError);
    EXPECT_THROW(brute_force(scenario_encoding("exp1", AnsatzKind::Circulant, 2, 3).qubo, 4), PreconditionError);
}

TEST(AnnealSchedule, Validation) {
    AnnealSchedule s;
    s.beta_start = 1.0;
    s.beta_end = 0.5;
    EXPECT_THROW(s.validate(), PreconditionError);
    s.beta_end = 1.0;
    EXPECT_THROW(s.validate(), PreconditionError);
    s.beta_end = 2.0;
    s.sweeps = 0;
    EXPECT_THROW(s.validate(), PreconditionError);
    s.sweeps = 10;
    EXPECT_NO_THROW(s.validate());
    EXPECT_DOUBLE_EQ(s.beta_at(0), 1.0);
    EXPECT_DOUBLE_EQ(s.beta_at(9), 2.0);
    EXPECT_NEAR(s.beta_at(3) / s.beta_at(2), s.beta_at(7) / s.beta_at(6), 1e-12);
}

TEST(AnnealSchedule, DefaultScalesWithInstance) {
    const auto q = one_variable();  // compact entry -1
    const auto s = default_schedule(q);
    EXPECT_DOUBLE_EQ(s.beta_start, 0.1);
    EXPECT_DOUBLE_EQ(s.beta_end, 50.0);
    EXPECT_EQ(s.sweeps, 1000);
    QuboProblem big = q;
    big.Q *= 10.0;
    big.L *= 10.0;
    EXPECT_DOUBLE_EQ(default_schedule(big).beta_end, 5.0);
}

TEST(SimulatedAnnealing, RejectsBadArguments) {
    const auto q = one_variable();
    EXPECT_THROW(simulated_annealing(q, default_schedule(q), 0, 1), PreconditionError);
    AnnealSchedule bad;
    bad.sweeps = -1;
    EXPECT_THROW(simulated_annealing(q, bad, 5, 1), PreconditionError);
}

TEST(SimulatedAnnealing, SingleVariableAlwaysSolved) {
    const auto q = one_variable();
    const auto samples = simulated_annealing(q, default_schedule(q), 200, 3);
    ASSERT_EQ(samples.samples.size(), 1u);
    EXPECT_EQ(samples.samples[0].bits, Bitstring{1});
    EXPECT_EQ(success_rate(samples, 0.0), 1.0);
}

TEST(SimulatedAnnealing, DeterministicAndThreadIndependent) {
    const auto enc = scenario_encoding("exp2", AnsatzKind::Circulant, 4, 3);
    const auto sched = default_schedule(enc.qubo);
    const auto a = simulated_annealing(enc.qubo, sched, 64, 42, 1);
    const auto b = simulated_annealing(enc.qubo, sched, 64, 42, 1);
    const auto c = simulated_annealing(enc.qubo, sched, 64, 42, 3);
    ASSERT_EQ(a.samples.size(), b.samples.size());
    ASSERT_EQ(a.samples.size(), c.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        EXPECT_EQ(a.samples[i].bits, b.samples[i].bits);
        EXPECT_EQ(a.samples[i].bits, c.samples[i].bits);
        EXPECT_EQ(a.samples[i].count, c.samples[i].count);
        EXPECT_EQ(a.samples[i].energy, c.samples[i].energy);
    }
    const auto d = simulated_annealing(enc.qubo, sched, 64, 43, 1);
    bool differs = d.samples.size() != a.samples.size();
    for (std::size_t i = 0; !differs && i < a.samples.size(); ++i)
        differs = a.samples[i].bits != d.samples[i].bits || a.samples[i].count != d.samples[i].count;
    EXPECT_TRUE(differs);
}

TEST(SimulatedAnnealing, SampleSetInvariants) {
    const auto enc = scenario_encoding("exp4", AnsatzKind::TruncatedFourier, 4, 3);
    const auto samples = simulated_annealing(enc.qubo, default_schedule(enc.qubo), 100, 5);
    int total = 0;
    for (std::size_t i = 0; i < samples.samples.size(); ++i) {
        const auto& s = samples.samples[i];
        total += s.count;
        EXPECT_NEAR(s.energy, qubo_energy(enc.qubo, s.bits), 1e-9 * std::max(1.0, std::abs(s.energy)));
        if (i) EXPECT_LE(samples.samples[i - 1].energy, s.energy);
    }
    EXPECT_EQ(total, 100);
    EXPECT_EQ(samples.n_runs, 100);
    EXPECT_EQ(samples.seed, 5u);
}

TEST(SimulatedAnnealing, NeverBelowBruteForce) {
    std::mt19937_64 rng(2);
    std::vector<QuboProblem> instances;
    for (int r : {3, 8, 14, 20}) instances.push_back(random_qubo(r, rng));
    instances.push_back(scenario_encoding("exp1", AnsatzKind::TruncatedFourier, 2, 5).qubo);
    instances.push_back(scenario_encoding("exp2", AnsatzKind::Circulant, 4, 4).qubo);
    instances.push_back(scenario_encoding("exp3", AnsatzKind::Circulant, 10, 2).qubo);
    for (const auto& q : instances) {
        const auto g = brute_force(q);
        AnnealSchedule sched = default_schedule(q);
        sched.sweeps = 200;
        const auto samples = simulated_annealing(q, sched, 50, 9);
        for (const auto& s : samples.samples) EXPECT_GE(s.energy, g.energy - 1e-9 * std::max(1.0, std::abs(g.energy)));
        // one run is still bounded below
        EXPECT_GE(simulated_annealing(q, sched, 1, 1).lowest_energy(), g.energy - 1e-9);
    }
}

TEST(SimulatedAnnealing, HomogeneousCaseHighSuccess) {
    for (auto kind : {AnsatzKind::TruncatedFourier, AnsatzKind::Circulant}) {
        const auto enc = scenario_encoding("exp1", kind, 2, 2);
        const auto samples = simulated_annealing(enc.qubo, default_schedule(enc.qubo), 1000, 2024);
        EXPECT_GE(success_rate(samples, brute_force(enc.qubo).energy), 0.90);
    }
}

TEST(RunSeed, DistinctPerRun) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t r = 0; r < 1000; ++r) seen.insert(run_seed(7, r));
    EXPECT_EQ(seen.size(), 1000u);
    EXPECT_EQ(run_seed(7, 3), run_seed(7, 3));
    EXPECT_NE(run_seed(7, 3), run_seed(8, 3));
}
