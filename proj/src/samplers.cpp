#include "wavequbo/samplers.hpp"

#include "wavequbo/errors.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <cmath>
#include <map>
#include <thread>

namespace wavequbo {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// xoshiro256** -- small, fast and fully specified, so sampled runs are
// reproducible across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        for (auto& s : state_) {
            seed = splitmix64(seed);
            s = seed;
        }
    }
    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    // unbiased integer in [0, n)
    std::uint32_t below(std::uint32_t n) {
        std::uint64_t m = (next() >> 32) * n;
        auto low = static_cast<std::uint32_t>(m);
        if (low < n) {
            const std::uint32_t threshold = -n % n;
            while (low < threshold) {
                m = (next() >> 32) * n;
                low = static_cast<std::uint32_t>(m);
            }
        }
        return static_cast<std::uint32_t>(m >> 32);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t state_[4];
};

Bitstring anneal_once(const Matrix& Qoff, const Vector& diag, const std::vector<double>& betas,
                      std::uint64_t seed) {
    const int r = static_cast<int>(diag.size());
    Rng rng(seed);
    Bitstring w(r);
    for (auto& b : w) b = static_cast<std::uint8_t>(rng.next() >> 63);

    // field_i = sum_{j != i} Q_ij w_j
    Vector field = Vector::Zero(r);
    for (int j = 0; j < r; ++j)
        if (w[j]) field += Qoff.col(j);

    std::vector<int> order(r);
    for (int i = 0; i < r; ++i) order[i] = i;
    for (const double beta : betas) {
        for (int i = r - 1; i > 0; --i) std::swap(order[i], order[rng.below(static_cast<std::uint32_t>(i + 1))]);
        for (const int i : order) {
            const double sign = w[i] ? -1.0 : 1.0;
            const double delta = sign * (diag(i) + 2.0 * field(i));
            if (delta <= 0.0 || rng.uniform() < std::exp(-beta * delta)) {
                w[i] ^= 1;
                field += sign * Qoff.col(i);
            }
        }
    }
    return w;
}

}  // namespace

double qubo_energy(const QuboProblem& q, const Bitstring& bits) {
    require(static_cast<int>(bits.size()) == q.r(), "qubo_energy: bitstring length " + std::to_string(bits.size()) +
                                                        " does not match r = " + std::to_string(q.r()));
    Vector w(q.r());
    for (int i = 0; i < q.r(); ++i) w(i) = bits[i];
    return w.dot(q.Q * w) + q.L.dot(w) + q.offset;
}

GroundStates brute_force(const QuboProblem& q, int max_bits) {
    const int r = q.r();
    require(r <= max_bits && r < 63, "brute_force: r = " + std::to_string(r) + " exceeds the exhaustive cap of " +
                                         std::to_string(max_bits) + " bits; use simulated annealing instead");
    const Matrix m = compact_qubo(q);
    Matrix off = m;
    off.diagonal().setZero();
    const Vector diag = m.diagonal();

    // Gray-code walk over the low bits, exact restart for every high-bit block
    // so incremental roundoff never accumulates past 2^low_bits steps.
    const int low_bits = std::min(r, 16);
    const std::uint64_t blocks = std::uint64_t{1} << (r - low_bits);
    const std::uint64_t steps = std::uint64_t{1} << low_bits;
    const double scale = std::max(1.0, m.cwiseAbs().sum());
    const double slack = 1e-9 * scale;

    double best = std::numeric_limits<double>::infinity();
    std::vector<std::uint64_t> candidates;
    Vector field(r);
    for (std::uint64_t block = 0; block < blocks; ++block) {
        std::uint64_t state = block << low_bits;
        field.setZero();
        double e = 0.0;
        for (int i = 0; i < r; ++i)
            if ((state >> i) & 1) {
                e += diag(i) + 2.0 * field(i);
                field += off.col(i);
            }
        for (std::uint64_t t = 0;; ++t) {
            if (e < best - slack) {
                best = e;
                candidates.clear();
            }
            if (e <= best + slack) {
                best = std::min(best, e);
                candidates.push_back(state);
            }
            if (t + 1 == steps) break;
            const int i = std::countr_zero(t + 1);
            const bool on = (state >> i) & 1;
            const double sign = on ? -1.0 : 1.0;
            e += sign * (diag(i) + 2.0 * field(i));
            field += sign * off.col(i);
            state ^= std::uint64_t{1} << i;
        }
    }

    // exact re-evaluation of the near-minimal set
    GroundStates out;
    std::vector<std::pair<double, Bitstring>> exact;
    exact.reserve(candidates.size());
    double exact_best = std::numeric_limits<double>::infinity();
    for (const auto state : candidates) {
        Bitstring bits(r);
        for (int i = 0; i < r; ++i) bits[i] = static_cast<std::uint8_t>((state >> i) & 1);
        const double e = qubo_energy(q, bits);
        exact_best = std::min(exact_best, e);
        exact.emplace_back(e, std::move(bits));
    }
    out.energy = exact_best;
    for (auto& [e, bits] : exact)
        if (e <= exact_best + kGroundTieTolerance) out.states.push_back(std::move(bits));
    std::sort(out.states.begin(), out.states.end());
    return out;
}

double AnnealSchedule::beta_at(int sweep) const {
    if (sweeps <= 1) return beta_end;
    const double t = static_cast<double>(sweep) / (sweeps - 1);
    return beta_start * std::pow(beta_end / beta_start, t);
}

void AnnealSchedule::validate() const {
    require(beta_start > 0.0 && std::isfinite(beta_start), "AnnealSchedule: beta_start must be positive");
    require(beta_end > beta_start && std::isfinite(beta_end), "AnnealSchedule: beta_end must exceed beta_start");
    require(sweeps > 0, "AnnealSchedule: sweeps must be positive");
}

AnnealSchedule default_schedule(const QuboProblem& q) {
    const Matrix m = compact_qubo(q);
    double sum = 0.0;
    int count = 0;
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        const double v = std::abs(m.data()[i]);
        if (v > kDynamicRangeZero) {
            sum += v;
            ++count;
        }
    }
    const double mean = count > 0 ? sum / count : 1.0;
    return AnnealSchedule{0.1 / mean, 50.0 / mean, 1000};
}

double SampleSet::lowest_energy() const {
    require(!samples.empty(), "SampleSet: no samples");
    return samples.front().energy;
}

std::uint64_t run_seed(std::uint64_t seed, std::uint64_t run) {
    return splitmix64(seed + (run + 1) * 0x9E3779B97F4A7C15ULL);
}

SampleSet simulated_annealing(const QuboProblem& q, const AnnealSchedule& schedule, int n_runs, std::uint64_t seed,
                              unsigned threads) {
    schedule.validate();
    require(n_runs >= 1, "simulated_annealing: n_runs must be >= 1");
    require(q.r() >= 1, "simulated_annealing: empty problem");

    const Matrix m = compact_qubo(q);
    Matrix off = m;
    off.diagonal().setZero();
    const Vector diag = m.diagonal();
    std::vector<double> betas(schedule.sweeps);
    for (int s = 0; s < schedule.sweeps; ++s) betas[s] = schedule.beta_at(s);

    std::vector<Bitstring> results(n_runs);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(n_runs));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                for (int run = static_cast<int>(t); run < n_runs; run += static_cast<int>(threads))
                    results[run] = anneal_once(off, diag, betas, run_seed(seed, run));
            });
        }
    }

    std::map<Bitstring, Sample> grouped;
    for (auto& bits : results) {
        auto& s = grouped[bits];
        if (s.count == 0) {
            s.bits = bits;
            s.energy = qubo_energy(q, bits);
        }
        ++s.count;
    }
    SampleSet out;
    out.n_runs = n_runs;
    out.seed = seed;
    out.schedule = schedule;
    for (auto& [bits, s] : grouped) out.samples.push_back(std::move(s));
    std::stable_sort(out.samples.begin(), out.samples.end(),
                     [](const Sample& a, const Sample& b) { return a.energy < b.energy; });
    return out;
}

}  // namespace wavequbo
