#include "wavequbo/encoder.hpp"
#include "wavequbo/errors.hpp"
#include "wavequbo/harness.hpp"
#include "wavequbo/qubo_io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

using namespace wavequbo;

namespace {

constexpr double kPi = std::numbers::pi;

Bitstring bits_of(std::uint64_t x, int r) {
    Bitstring b(r);
    for (int i = 0; i < r; ++i) b[i] = static_cast<std::uint8_t>((x >> i) & 1);
    return b;
}

Vector as_vector(const Bitstring& b) {
    Vector v(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) v(static_cast<Eigen::Index>(i)) = b[i];
    return v;
}

// E = w^T Q w + L w + C0, written without any library helper.
double naive_energy(const QuboProblem& q, const Bitstring& b) {
    double e = q.offset;
    for (int i = 0; i < q.r(); ++i) {
        if (!b[i]) continue;
        e += q.L(i);
        for (int j = 0; j < q.r(); ++j)
            if (b[j]) e += q.Q(i, j);
    }
    return e;
}

QuboProblem random_qubo(int r, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    QuboProblem q;
    q.Q.resize(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j <= i; ++j) q.Q(i, j) = q.Q(j, i) = u(rng);
    q.L.resize(r);
    for (int i = 0; i < r; ++i) q.L(i) = u(rng);
    q.offset = 3.0 * u(rng);
    return q;
}

HelmholtzProblem exp_problem(const char* id) { return find_scenario(id).problem; }

}  // namespace

TEST(AssembleSystem, HomogeneousTruncatedFourierN2) {
    const auto sys = assemble_system(exp_problem("exp1"), tfa_basis(2));
    Matrix expected(4, 2);
    expected << 0, 0, 0, 0, 1, 0, 0, 1;
    EXPECT_LT((sys.a - expected).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((sys.b - Eigen::Vector4d(0, 0, 0.5, 0)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_EQ(matrix_rank(sys.a), 2);
}

TEST(AssembleSystem, TruncatedFourierMatchesTrigOracle) {
    const int N = 6;
    const HelmholtzProblem p(2.0, 0.25, -0.5, TrigPolynomial({{1, 1.0, 0.5}}));
    const auto sys = assemble_system(p, tfa_basis(N));
    for (int m = 0; m < N; ++m) {
        const double x = 2 * kPi * m / N;
        for (int n = 1; n <= N / 2; ++n) {
            EXPECT_NEAR(sys.a(m, n - 1), (4.0 - n * n) * std::cos(n * x), 1e-12);
            EXPECT_NEAR(sys.a(m, N / 2 + n - 1), (4.0 - n * n) * std::sin(n * x), 1e-12);
        }
        EXPECT_NEAR(sys.b(m), std::cos(x) + 0.5 * std::sin(x), 1e-15);
    }
    for (int n = 1; n <= N / 2; ++n) {
        EXPECT_NEAR(sys.a(N, n - 1), 1.0, 1e-15);
        EXPECT_NEAR(sys.a(N, N / 2 + n - 1), 0.0, 1e-15);
        EXPECT_NEAR(sys.a(N + 1, n - 1), 0.0, 1e-15);
        EXPECT_NEAR(sys.a(N + 1, N / 2 + n - 1), n, 1e-14);
    }
    EXPECT_EQ(sys.b(N), 0.25);
    EXPECT_EQ(sys.b(N + 1), -0.5);
}

TEST(AssembleSystem, CirculantBlockIsCirculant) {
    for (double tau : {1.0, 2.0, 3.0}) {
        for (int N = 2; N <= 20; N += 2) {
            const auto sys = assemble_system(HelmholtzProblem(tau, 0.0, 0.0, TrigPolynomial()), ca_basis(N));
            for (int i = 0; i < N; ++i)
                for (int j = 0; j < N; ++j)
                    EXPECT_NEAR(sys.a(i, j), sys.a((i + 1) % N, (j + 1) % N), 1e-12) << tau << " " << N;
        }
    }
    const auto sys = assemble_system(exp_problem("exp2"), ca_basis(4));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) EXPECT_NEAR(sys.a(i, j), sys.a((i + 1) % 4, (j + 1) % 4), 1e-12);
}

TEST(MatrixRank, TruncatedSetsLoseOneRank) {
    EXPECT_EQ(matrix_rank(assemble_system(exp_problem("exp2"), tfa_basis(4)).a), 3);
    EXPECT_EQ(matrix_rank(assemble_system(exp_problem("exp2"), ca_basis(4)).a), 4);
    EXPECT_EQ(matrix_rank(assemble_system(exp_problem("exp2"), tfa_basis(18)).a), 17);
    EXPECT_EQ(matrix_rank(assemble_system(exp_problem("exp2"), ca_basis(18)).a), 18);
}

TEST(MatrixRank, Basics) {
    EXPECT_EQ(matrix_rank(Matrix::Identity(3, 3)), 3);
    EXPECT_EQ(matrix_rank(Matrix::Zero(3, 2)), 0);
    Matrix m(3, 2);
    m << 1, 2, 2, 4, 3, 6;
    EXPECT_EQ(matrix_rank(m), 1);
    EXPECT_THROW(matrix_rank(m, 0.0), PreconditionError);
}

TEST(Binarize, SingleColumn) {
    LinearSystem sys;
    sys.a = Matrix::Ones(1, 1);
    sys.b = Vector::Ones(1);
    const auto bs = binarize_system(sys, 2);
    ASSERT_EQ(bs.A.rows(), 1);
    ASSERT_EQ(bs.A.cols(), 2);
    EXPECT_EQ(bs.A(0, 0), -1.0);
    EXPECT_EQ(bs.A(0, 1), 0.5);
    EXPECT_THROW(binarize_system(sys, 1), PreconditionError);
}

TEST(Binarize, BlockStructure) {
    const auto sys = assemble_system(exp_problem("exp1"), tfa_basis(2));
    const auto bs = binarize_system(sys, 3);
    EXPECT_EQ(bs.A.rows(), 4);
    EXPECT_EQ(bs.A.cols(), 6);
    EXPECT_EQ(bs.r(), 6);
    const auto sys4 = assemble_system(exp_problem("exp2"), ca_basis(4));
    const auto bs4 = binarize_system(sys4, 4);
    for (int l = 0; l < 4; ++l) {
        const double w = l == 0 ? -1.0 : std::pow(2.0, -l);
        EXPECT_EQ((bs4.A.middleCols(4 * l, 4) - w * sys4.a).cwiseAbs().maxCoeff(), 0.0);
    }
}

TEST(DecodeBits, Examples) {
    EXPECT_EQ(decode_bits({0, 1}, 2)(0), 0.5);
    EXPECT_EQ(decode_bits({1, 0, 0}, 3)(0), -1.0);
    EXPECT_EQ(decode_bits({0, 1, 1}, 3)(0), 0.75);
    EXPECT_THROW(decode_bits({0, 1, 1}, 2), PreconditionError);
}

TEST(DecodeBits, AllThreeBitValues) {
    std::set<double> values;
    for (std::uint64_t x = 0; x < 8; ++x) values.insert(decode_bits(bits_of(x, 3), 3)(0));
    const std::set<double> expected = {-1.0, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75};
    EXPECT_EQ(values, expected);
}

TEST(DecodeBits, LayoutIsBitPlaneMajor) {
    // two weights, three bits: (w0 sign, w1 sign, w0 half, w1 half, w0 quarter, w1 quarter)
    const Vector w = decode_bits({1, 0, 0, 1, 1, 1}, 3);
    EXPECT_EQ(w(0), -1.0 + 0.25);
    EXPECT_EQ(w(1), 0.5 + 0.25);
}

TEST(EncodeWeights, RoundTrip) {
    for (int n_spin = 2; n_spin <= 5; ++n_spin)
        for (std::uint64_t x = 0; x < (1u << (2 * n_spin)); ++x) {
            const Bitstring b = bits_of(x, 2 * n_spin);
            const auto enc = encode_weights(decode_bits(b, n_spin), n_spin);
            ASSERT_TRUE(enc.has_value());
            EXPECT_EQ(*enc, b);
        }
    EXPECT_FALSE(encode_weights(Vector::Constant(1, 0.3), 3).has_value());
    EXPECT_FALSE(encode_weights(Vector::Constant(1, 1.0), 3).has_value());
    EXPECT_FALSE(encode_weights(Vector::Constant(1, -1.25), 3).has_value());
}

TEST(BuildQubo, OneVariableLeastSquares) {
    BinarizedSystem bs;
    bs.A = Matrix::Ones(1, 1);
    bs.b = Vector::Ones(1);
    const auto q = build_qubo(bs);
    EXPECT_EQ(q.Q(0, 0), 1.0);
    EXPECT_EQ(q.L(0), -2.0);
    EXPECT_EQ(q.offset, 1.0);
    EXPECT_EQ(naive_energy(q, {1}), 0.0);
    EXPECT_EQ(naive_energy(q, {0}), 1.0);
    const Matrix m = compact_qubo(q);
    EXPECT_EQ(m(0, 0), -1.0);
}

TEST(BuildQubo, EnergyIsResidualNorm) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int rows = 3 + trial % 5, r = 2 + trial % 19;
        BinarizedSystem bs;
        bs.A = Matrix::NullaryExpr(rows, r, [&] { return u(rng); });
        bs.b = Vector::NullaryExpr(rows, [&] { return u(rng); });
        const auto q = build_qubo(bs);
        EXPECT_LT((q.Q - q.Q.transpose()).cwiseAbs().maxCoeff(), 1e-15);
        for (int s = 0; s < 50; ++s) {
            const Bitstring b = bits_of(rng(), r);
            const double ref = (bs.A * as_vector(b) - bs.b).squaredNorm();
            EXPECT_NEAR(naive_energy(q, b), ref, 1e-9 * std::max(1.0, ref));
        }
    }
}

TEST(BuildQubo, ExactWeightsReachZeroEnergy) {
    struct Case {
        const char* id;
        AnsatzKind kind;
        int N, n_spin;
        Vector w;
    };
    const std::vector<Case> cases = {
        {"exp1", AnsatzKind::TruncatedFourier, 2, 2, Eigen::Vector2d(0.5, 0.0)},
        {"exp1", AnsatzKind::Circulant, 2, 2, Eigen::Vector2d(0.5, -0.5)},
        {"exp2", AnsatzKind::TruncatedFourier, 4, 2, Eigen::Vector4d(0.5, -0.5, 0.0, 0.0)},
        // circulant weights are the exact solution sampled on the grid
        {"exp2", AnsatzKind::Circulant, 4, 2, Eigen::Vector4d(0.0, 0.5, -1.0, 0.5)},
    };
    for (const auto& c : cases) {
        const auto enc = encode(exp_problem(c.id), make_basis(c.kind, c.N), c.n_spin);
        const auto bits = encode_weights(c.w, c.n_spin);
        ASSERT_TRUE(bits.has_value());
        EXPECT_LT(std::abs(naive_energy(enc.qubo, *bits)), 1e-18) << c.id;
    }
    Vector w8(8);
    const auto exact = exact_solution(exp_problem("exp3"));
    for (int n = 0; n < 8; ++n) w8(n) = exact(2 * kPi * n / 8);
    const auto enc = encode(exp_problem("exp3"), ca_basis(8), 2);
    const auto bits = encode_weights(w8, 2);
    ASSERT_TRUE(bits.has_value());
    // the expanded form cancels terms of size b^T b, so the floor is relative to it
    EXPECT_LT(std::abs(naive_energy(enc.qubo, *bits)), 1e-14 * enc.qubo.offset);
}

TEST(BuildQubo, HomogeneousGroundStateByEnumeration) {
    const auto enc = encode(exp_problem("exp1"), tfa_basis(2), 2);
    double best = 1e300;
    std::vector<Vector> argmin;
    for (std::uint64_t x = 0; x < 16; ++x) {
        const double e = naive_energy(enc.qubo, bits_of(x, 4));
        if (e < best - 1e-12) {
            best = e;
            argmin.clear();
        }
        if (e <= best + 1e-12) argmin.push_back(decode_bits(bits_of(x, 4), 2));
    }
    EXPECT_NEAR(best, 0.0, 1e-18);
    ASSERT_EQ(argmin.size(), 1u);
    EXPECT_EQ(argmin[0](0), 0.5);
    EXPECT_EQ(argmin[0](1), 0.0);
}

TEST(CompactQubo, QuadraticFormIdentity) {
    std::mt19937_64 rng(7);
    for (int r = 1; r <= 12; ++r) {
        const auto q = random_qubo(r, rng);
        const Matrix m = compact_qubo(q);
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << r); ++x) {
            const Vector w = as_vector(bits_of(x, r));
            EXPECT_NEAR(w.dot(m * w) + q.offset, naive_energy(q, bits_of(x, r)), 1e-12);
        }
    }
    QuboProblem z;
    z.Q = Matrix::Identity(3, 3);
    z.L = Vector::Zero(3);
    EXPECT_EQ(compact_qubo(z), z.Q);
}

TEST(ToIsing, TwoVariableExample) {
    QuboProblem q;
    q.Q.resize(2, 2);
    q.Q << 0, 1, 1, 0;
    q.L = Vector::Zero(2);
    const auto is = to_ising(q);
    EXPECT_DOUBLE_EQ(is.J(0, 1), 0.25);
    EXPECT_DOUBLE_EQ(is.J(1, 0), 0.25);
    EXPECT_EQ(is.J(0, 0), 0.0);
    EXPECT_DOUBLE_EQ(is.h(0), 0.5);
    EXPECT_DOUBLE_EQ(is.h(1), 0.5);
    EXPECT_DOUBLE_EQ(is.offset, 0.5);
    for (std::uint64_t x = 0; x < 4; ++x) {
        const Vector s = 2.0 * as_vector(bits_of(x, 2)).array() - 1.0;
        EXPECT_DOUBLE_EQ(ising_energy(is, s), naive_energy(q, bits_of(x, 2)));
    }
}

TEST(ToIsing, ZeroProblem) {
    QuboProblem q;
    q.Q = Matrix::Zero(3, 3);
    q.L = Vector::Zero(3);
    const auto is = to_ising(q);
    EXPECT_EQ(is.J.cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(is.h.cwiseAbs().maxCoeff(), 0.0);
}

TEST(ToIsing, EnergyBijectionOnRandomInstances) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const int r = 1 + trial % 12;
        const auto q = random_qubo(r, rng);
        const auto is = to_ising(q);
        EXPECT_EQ(is.J.diagonal().cwiseAbs().maxCoeff(), 0.0);
        EXPECT_LT((is.J - is.J.transpose()).cwiseAbs().maxCoeff(), 1e-15);
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << r); ++x) {
            const Bitstring b = bits_of(x, r);
            const Vector s = 2.0 * as_vector(b).array() - 1.0;
            const double eq = naive_energy(q, b);
            EXPECT_NEAR(ising_energy(is, s), eq, 1e-9 * std::max(1.0, std::abs(eq)));
        }
    }
}

TEST(DynamicRange, Basics) {
    Matrix m(1, 2);
    m << 8, 1;
    EXPECT_DOUBLE_EQ(dynamic_range(m), 3.0);
    Matrix z = Matrix::Zero(2, 2);
    EXPECT_THROW(dynamic_range(z), PreconditionError);
    z(0, 0) = 1e-13;  // below the zero threshold
    EXPECT_THROW(dynamic_range(z), PreconditionError);
}

TEST(DynamicRange, HomogeneousTruncatedFourierByHand) {
    // compact QUBO entries of exp1 / TFA / N = 2 / n_spin = 2 are
    // diag (2, 1, -1/4, 1/4) and off-diagonal -1/2, so DR = log2(2 / (1/4))
    const auto enc = encode(exp_problem("exp1"), tfa_basis(2), 2);
    const Matrix m = compact_qubo(enc.qubo);
    EXPECT_NEAR(m(0, 0), 2.0, 1e-15);
    EXPECT_NEAR(m(1, 1), 1.0, 1e-15);
    EXPECT_NEAR(m(2, 2), -0.25, 1e-15);
    EXPECT_NEAR(m(3, 3), 0.25, 1e-15);
    EXPECT_NEAR(m(0, 2), -0.5, 1e-15);
    EXPECT_NEAR(m(1, 3), -0.5, 1e-15);
    EXPECT_NEAR(dynamic_range(m), 3.0, 1e-12);
}

TEST(DynamicRange, GrowsByTwoPerBit) {
    double prev = 0.0;
    for (int n_spin = 2; n_spin <= 5; ++n_spin) {
        const double dr = dynamic_range(compact_qubo(encode(exp_problem("exp1"), tfa_basis(2), n_spin).qubo));
        if (n_spin > 2) EXPECT_NEAR(dr - prev, 2.0, 1e-9);
        prev = dr;
    }
}

TEST(QuboText, RoundTripPreservesEnergies) {
    std::mt19937_64 rng(123);
    for (int r : {1, 5, 12}) {
        const auto q = random_qubo(r, rng);
        const auto back = qubo_from_text(qubo_to_text(q));
        ASSERT_EQ(back.r(), r);
        for (int s = 0; s < 200; ++s) {
            const Bitstring b = bits_of(rng(), r);
            const double e = naive_energy(q, b);
            EXPECT_NEAR(naive_energy(back, b), e, 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(e)) * r);
        }
    }
}

TEST(QuboText, Format) {
    QuboProblem q;
    q.Q.resize(2, 2);
    q.Q << 1, 0.5, 0.5, 0;
    q.L = Eigen::Vector2d(-2.0, 0.0);
    q.offset = 1.0;
    EXPECT_EQ(qubo_to_text(q), "QUBO 2 1\n0 0 -1\n0 1 0.5\n");
    EXPECT_THROW(qubo_from_text("QUBO 2 0\n0 5 1\n"), PreconditionError);
    EXPECT_THROW(qubo_from_text("QUBA 2 0\n"), PreconditionError);
}
