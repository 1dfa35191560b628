#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "chaoslab/entanglement.hpp"
#include "chaoslab/errors.hpp"
#include "oracles.hpp"

using namespace chaoslab;
using cd = std::complex<double>;

namespace {

std::span<const cd> view(const Eigen::VectorXcd& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }
std::span<const double> view(const Eigen::VectorXd& v) { return {v.data(), static_cast<std::size_t>(v.size())}; }

Eigen::Matrix4cd bell() {
    Eigen::Vector4cd psi(1, 0, 0, 1);
    psi /= std::sqrt(2.0);
    return psi * psi.adjoint();
}

Eigen::Matrix4cd werner(double p) { return p * bell() + (1 - p) / 4 * Eigen::Matrix4cd::Identity(); }

// Applies u to qubit q of an L-qubit state.
Eigen::VectorXcd apply_local(const Eigen::VectorXcd& psi, const Eigen::Matrix2cd& u, int q) {
    Eigen::VectorXcd out = psi;
    const Eigen::Index m = Eigen::Index{1} << q;
    for (Eigen::Index n = 0; n < psi.size(); ++n) {
        if (n & m) continue;
        out[n] = u(0, 0) * psi[n] + u(0, 1) * psi[n | m];
        out[n | m] = u(1, 0) * psi[n] + u(1, 1) * psi[n | m];
    }
    return out;
}

}  // namespace

TEST(Entanglement, PartialTraceMatchesBruteForceOnEveryBipartition) {
    std::mt19937_64 rng(1);
    const int L = 4;
    const Eigen::VectorXcd psi = oracle::random_state(L, rng);
    const Eigen::VectorXd phi = oracle::random_real_state(L, rng);
    for (unsigned mask = 1; mask + 1 < (1u << L); ++mask) {
        std::vector<int> keep;
        for (int q = 0; q < L; ++q)
            if ((mask >> q) & 1u) keep.push_back(q);
        const DensityMatrix rho = partial_trace(view(psi), keep);
        EXPECT_EQ(rho.qubits, keep);
        EXPECT_LE((rho.rho - oracle::partial_trace(psi, L, keep)).cwiseAbs().maxCoeff(), 1e-12) << "mask " << mask;
        const DensityMatrix rho_real = partial_trace(view(phi), keep);
        EXPECT_LE((rho_real.rho - oracle::partial_trace(phi.cast<cd>(), L, keep)).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Entanglement, KeepSetOrderDoesNotMatter) {
    std::mt19937_64 rng(2);
    const Eigen::VectorXcd psi = oracle::random_state(5, rng);
    const std::vector<int> a{3, 1}, b{1, 3};
    EXPECT_EQ(partial_trace(view(psi), a).rho, partial_trace(view(psi), b).rho);
}

TEST(Entanglement, FastReductionsAgreeWithPartialTrace) {
    std::mt19937_64 rng(3);
    const Eigen::VectorXcd psi = oracle::random_state(6, rng);
    const Eigen::VectorXd phi = oracle::random_real_state(6, rng);
    for (int q0 = 0; q0 < 6; ++q0) {
        const std::vector<int> one{q0};
        EXPECT_LE((ComplexMatrix(single_qubit_rdm(view(psi), q0)) - partial_trace(view(psi), one).rho).cwiseAbs().maxCoeff(), 1e-14);
        EXPECT_LE((ComplexMatrix(single_qubit_rdm(view(phi), q0)) - partial_trace(view(phi), one).rho).cwiseAbs().maxCoeff(), 1e-14);
        for (int q1 = q0 + 1; q1 < 6; ++q1) {
            const std::vector<int> two{q0, q1};
            EXPECT_LE((ComplexMatrix(two_qubit_rdm(view(psi), q0, q1)) - partial_trace(view(psi), two).rho).cwiseAbs().maxCoeff(), 1e-14);
            EXPECT_LE((ComplexMatrix(two_qubit_rdm(view(phi), q1, q0)) - partial_trace(view(phi), two).rho).cwiseAbs().maxCoeff(), 1e-14);
        }
    }
}

TEST(Entanglement, PartialTraceErrors) {
    std::mt19937_64 rng(4);
    const Eigen::VectorXcd psi = oracle::random_state(3, rng);
    EXPECT_THROW(partial_trace(view(psi), std::vector<int>{}), ArgumentError);
    EXPECT_THROW(partial_trace(view(psi), std::vector<int>{0, 1, 2}), ArgumentError);
    EXPECT_THROW(partial_trace(view(psi), std::vector<int>{1, 1}), ArgumentError);
    EXPECT_THROW(partial_trace(view(psi), std::vector<int>{3}), ArgumentError);
    const Eigen::VectorXcd odd = Eigen::VectorXcd::Ones(6).normalized();
    EXPECT_THROW(partial_trace(view(odd), std::vector<int>{0}), ArgumentError);
    EXPECT_THROW(two_qubit_rdm(view(psi), 1, 1), ArgumentError);
}

TEST(Entanglement, ComplementaryEntropiesAgree) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<unsigned> pick(1, (1u << 6) - 2);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::VectorXcd psi = oracle::random_state(6, rng);
        const unsigned mask = pick(rng);
        std::vector<int> a, b;
        for (int q = 0; q < 6; ++q) ((mask >> q) & 1u ? a : b).push_back(q);
        const double sa = von_neumann_entropy(partial_trace(view(psi), a));
        const double sb = von_neumann_entropy(partial_trace(view(psi), b));
        EXPECT_LE(std::abs(sa - sb), 1e-8);
    }
}

TEST(Entanglement, LocalUnitariesLeaveConcurrenceAndEntropyUnchanged) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::VectorXcd psi = oracle::random_state(5, rng);
        Eigen::VectorXcd rotated = psi;
        for (int q = 0; q < 5; ++q) rotated = apply_local(rotated, oracle::random_unitary(rng), q);
        for (int q0 = 0; q0 < 5; ++q0)
            for (int q1 = q0 + 1; q1 < 5; ++q1) {
                EXPECT_LE(std::abs(concurrence(two_qubit_rdm(view(psi), q0, q1)) -
                                   concurrence(two_qubit_rdm(view(rotated), q0, q1))), 1e-8);
                EXPECT_LE(std::abs(c_lambda(two_qubit_rdm(view(psi), q0, q1)) -
                                   c_lambda(two_qubit_rdm(view(rotated), q0, q1))), 1e-8);
            }
        for (int n = 1; n < 5; ++n)
            EXPECT_LE(std::abs(block_entropy(view(psi), 0, n) - block_entropy(view(rotated), 0, n)), 1e-8);
    }
}

TEST(Entanglement, BellStateAndProductState) {
    EXPECT_NEAR(concurrence(bell()), 1.0, 1e-12);
    EXPECT_NEAR(c_lambda(bell()), 1.0, 1e-12);
    EXPECT_NEAR(negativity(bell()), 0.5, 1e-12);
    EXPECT_NEAR(entanglement_of_formation(bell()), 1.0, 1e-12);
    Eigen::Matrix4cd product = Eigen::Matrix4cd::Zero();
    product(1, 1) = 1.0;
    EXPECT_NEAR(c_lambda(product), 0.0, 1e-12);
    EXPECT_NEAR(negativity(product), 0.0, 1e-12);
    EXPECT_NEAR(c_lambda(Eigen::Matrix4cd::Identity() / 4.0), -0.5, 1e-12);
}

TEST(Entanglement, WernerConcurrenceClosedForm) {
    for (int k = 0; k <= 5; ++k) {
        const double p = 0.2 * k;
        const double cl = (3 * p - 1) / 2;
        EXPECT_LE(std::abs(c_lambda(werner(p)) - cl), 1e-10) << "p = " << p;
        EXPECT_LE(std::abs(concurrence(werner(p)) - std::max(0.0, cl)), 1e-10) << "p = " << p;
    }
}

TEST(Entanglement, ClambdaMatchesTextbookRouteOnMixedStates) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Matrix4cd rho = oracle::random_mixed(rng);
        EXPECT_LE(std::abs(c_lambda(rho) - oracle::c_lambda_general(rho)), 1e-8);
    }
}

TEST(Entanglement, ClambdaRangeOnPureStateReductions) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::VectorXcd psi = oracle::random_state(7, rng);
        for (int q = 1; q < 7; ++q) {
            const double cl = c_lambda(two_qubit_rdm(view(psi), 0, q));
            EXPECT_GE(cl, -0.5 - 1e-12);
            EXPECT_LE(cl, 1.0 + 1e-12);
        }
    }
}

TEST(Entanglement, FormationFromConcurrence) {
    EXPECT_NEAR(formation_from_concurrence(0.5), 0.35457890266527003, 1e-14);
    EXPECT_DOUBLE_EQ(formation_from_concurrence(0.0), 0.0);
    EXPECT_DOUBLE_EQ(formation_from_concurrence(1.0), 1.0);
    EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
}

TEST(Entanglement, HaarSingleQubitEntropyApproachesPageValue) {
    std::mt19937_64 rng(9);
    double mean = 0;
    const int trials = 10;
    for (int t = 0; t < trials; ++t) {
        const Eigen::VectorXcd psi = oracle::random_state(12, rng);
        mean += block_entropy(view(psi), 0, 1) / trials;
    }
    // Page: (sum_{k=m+1}^{mn} 1/k - (m-1)/(2n)) / ln 2 with m = 2, n = 2048.
    double page = 0;
    for (int k = 2049; k <= 4096; ++k) page += 1.0 / k;
    page = (page - 1.0 / 4096) / std::log(2.0);
    EXPECT_NEAR(page, 0.9994716907943834, 1e-12);
    EXPECT_NEAR(mean, page, 1e-3);
}

TEST(Entanglement, BlockEntropyOffsetsMatchPartialTrace) {
    std::mt19937_64 rng(10);
    const Eigen::VectorXd phi = oracle::random_real_state(7, rng);
    for (int first = 0; first < 6; ++first) {
        std::vector<int> keep;
        for (int q = first; q < std::min(7, first + 3); ++q) keep.push_back(q);
        if (static_cast<int>(keep.size()) >= 7) continue;
        EXPECT_NEAR(block_entropy(view(phi), first, static_cast<int>(keep.size())),
                    von_neumann_entropy(partial_trace(view(phi), keep)), 1e-10);
    }
    EXPECT_THROW(block_entropy(view(phi), 5, 3), ArgumentError);
    EXPECT_THROW(block_entropy(view(phi), 0, 7), ArgumentError);
}

TEST(Entanglement, DensityMatrixValidation) {
    ComplexMatrix rho = ComplexMatrix::Identity(2, 2) / 2.0;
    EXPECT_NEAR(von_neumann_entropy(rho), 1.0, 1e-14);
    ComplexMatrix bad_trace = rho * 1.1;
    EXPECT_THROW(von_neumann_entropy(bad_trace), ValidationError);
    ComplexMatrix non_hermitian = rho;
    non_hermitian(0, 1) = 0.1;
    EXPECT_THROW(von_neumann_entropy(non_hermitian), ValidationError);
    ComplexMatrix negative(2, 2);
    negative << 1.2, 0, 0, -0.2;
    EXPECT_THROW(von_neumann_entropy(negative), ValidationError);
    DensityMatrix three_qubits{ComplexMatrix::Identity(8, 8) / 8.0, {0, 1, 2}};
    EXPECT_THROW(c_lambda(three_qubits), ArgumentError);
}

TEST(Entanglement, ClambdaStatistics) {
    const std::vector<double> values{-0.5, -0.2, 0.0, 0.9, 1.0};
    const ClambdaSample s = clambda_statistics(values);
    EXPECT_EQ(s.count, 5u);
    EXPECT_NEAR(s.mean, 0.24, 1e-15);
    EXPECT_EQ(s.histogram.counts.size(), 30u);
    double binned = 0;
    for (double c : s.histogram.counts) binned += c;
    EXPECT_EQ(binned, 5.0);
    EXPECT_THROW(clambda_statistics(std::vector<double>{}), ArgumentError);
}
