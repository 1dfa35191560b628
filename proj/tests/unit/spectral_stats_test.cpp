#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "chaoslab/errors.hpp"
#include "chaoslab/hamiltonian.hpp"
#include "chaoslab/spectral_stats.hpp"

using namespace chaoslab;

namespace {

// Levels whose nearest-neighbour spacings are drawn from `draw`.
template <class Draw>
std::vector<double> levels_from(Draw&& draw, int n) {
    std::vector<double> levels(n + 1, 0.0);
    for (int i = 1; i <= n; ++i) levels[i] = levels[i - 1] + draw();
    return levels;
}

}  // namespace

TEST(SpectralStats, CrossingPointAndCumulatives) {
    const double s0 = spacing_crossing_point();
    EXPECT_NEAR(s0, 0.4729129351811508, 1e-12);
    EXPECT_NEAR(poisson_density(s0), wigner_density(s0), 1e-14);
    EXPECT_NEAR(poisson_cdf(s0), 0.3768156737537559, 1e-12);
    EXPECT_NEAR(wigner_cdf(s0), 0.16108984465405773, 1e-12);
    EXPECT_NEAR(gamma_from_fraction(poisson_cdf(s0)), 1.0, 1e-14);
    EXPECT_NEAR(gamma_from_fraction(wigner_cdf(s0)), 0.0, 1e-14);
}

TEST(SpectralStats, DensitiesAreNormalizedWithUnitMean) {
    double np = 0, nw = 0, mp = 0, mw = 0;
    const double ds = 1e-4;
    for (double s = ds / 2; s < 40; s += ds) {
        np += poisson_density(s) * ds;
        nw += wigner_density(s) * ds;
        mp += s * poisson_density(s) * ds;
        mw += s * wigner_density(s) * ds;
    }
    EXPECT_NEAR(np, 1.0, 1e-6);
    EXPECT_NEAR(nw, 1.0, 1e-6);
    EXPECT_NEAR(mp, 1.0, 1e-6);
    EXPECT_NEAR(mw, 1.0, 1e-6);
}

TEST(SpectralStats, GammaOfSyntheticPoissonSpectrum) {
    std::mt19937_64 rng(17);
    std::exponential_distribution<double> expo(3.0);
    const auto levels = levels_from([&] { return expo(rng); }, 100000);
    EXPECT_NEAR(gamma(unfolded_spacings(levels)).value, 1.0, 0.02);
}

TEST(SpectralStats, GammaOfSyntheticWignerSpectrum) {
    std::mt19937_64 rng(18);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    // Inverse transform of the Wigner surmise.
    const auto levels =
        levels_from([&] { return 2.5 * std::sqrt(-4.0 / std::numbers::pi * std::log1p(-u(rng))); }, 100000);
    EXPECT_NEAR(gamma(unfolded_spacings(levels)).value, 0.0, 0.02);
}

TEST(SpectralStats, UnfoldingNormalizesTheMeanSpacing) {
    const std::vector<double> levels{1.0, 1.5, 3.0, 3.5, 5.0};
    const auto s = unfolded_spacings(levels);
    EXPECT_DOUBLE_EQ(s.mean_spacing, 1.0);
    EXPECT_DOUBLE_EQ(std::accumulate(s.spacings.begin(), s.spacings.end(), 0.0) / s.spacings.size(), 1.0);
    EXPECT_THROW(unfolded_spacings(std::vector<double>{1.0}), ArgumentError);
    EXPECT_THROW(unfolded_spacings(std::vector<double>{2.0, 1.0}), ArgumentError);
    EXPECT_THROW(unfolded_spacings(std::vector<double>{2.0, 2.0, 2.0}), ValidationError);
}

// Bands of `size` levels with spacings from `draw`, warped through a smooth
// map so the density of states varies threefold across each band. Spacings
// of all bands are pooled.
template <class Draw>
double gamma_of_warped_bands(Draw&& draw, Unfolding method) {
    SpacingSample pooled;
    for (int band = 0; band < 50; ++band) {
        auto levels = levels_from(draw, 1000);
        const double top = levels.back();
        for (double& e : levels) {
            const double u = e / top;
            e = u - 0.08 * std::sin(2 * std::numbers::pi * u);
        }
        const auto s = unfold(levels, method);
        pooled.spacings.insert(pooled.spacings.end(), s.spacings.begin(), s.spacings.end());
    }
    return gamma(pooled).value;
}

TEST(SpectralStats, StaircaseUnfoldingUndoesAVaryingDensity) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::exponential_distribution<double> expo(1.0);
    const auto wigner = [&] { return std::sqrt(-4.0 / std::numbers::pi * std::log1p(-u(rng))); };
    const auto poisson = [&] { return expo(rng); };
    EXPECT_NEAR(gamma_of_warped_bands(wigner, Unfolding::staircase), 0.0, 0.03);
    EXPECT_NEAR(gamma_of_warped_bands(poisson, Unfolding::staircase), 1.0, 0.03);
    // A single mean spacing misreads the same Wigner spectrum.
    EXPECT_GT(gamma_of_warped_bands(wigner, Unfolding::global), 0.1);
}

TEST(SpectralStats, StaircaseUnfoldingOfAnEquallySpacedLadder) {
    std::vector<double> levels(200);
    for (std::size_t i = 0; i < levels.size(); ++i) levels[i] = 3.0 + 0.25 * static_cast<double>(i);
    const auto s = staircase_unfolded_spacings(levels);
    for (double x : s.spacings) EXPECT_NEAR(x, 1.0, 1e-9);
    EXPECT_NEAR(std::accumulate(s.spacings.begin(), s.spacings.end(), 0.0) / s.spacings.size(), 1.0, 1e-12);
    EXPECT_THROW(staircase_unfolded_spacings(std::vector<double>{2.0, 2.0, 2.0}), ValidationError);
}

TEST(SpectralStats, SpacingHistogramIsADensity) {
    std::mt19937_64 rng(3);
    std::exponential_distribution<double> expo(1.0);
    const auto levels = levels_from([&] { return expo(rng); }, 20000);
    const Histogram h = spacing_histogram(unfolded_spacings(levels));
    ASSERT_EQ(h.counts.size(), 40u);
    double integral = 0;
    for (double d : h.density()) integral += d * h.width;
    EXPECT_NEAR(integral, poisson_cdf(4.0), 0.01);
    EXPECT_NEAR(h.density()[0], (1 - std::exp(-0.1)) / 0.1, 0.05);
}

TEST(SpectralStats, BandLayoutOfTorus) {
    ModelSpec2D spec;
    const auto r = sample_realization(spec, 2);
    const BandLayout layout = band_layout(unperturbed_energies(spec, r), 9);
    ASSERT_EQ(layout.sizes.size(), 10u);
    for (int up = 0; up <= 9; ++up) {
        EXPECT_EQ(layout.sizes[up], binomial(9, up));
        EXPECT_NEAR(layout.centers[up], (2 * up - 9) * spec.delta0, 9 * spec.delta / 2);
    }
    EXPECT_EQ(band_nearest(layout, -1.0), 4);

    const BandSelection sel = select_band(layout, 4);
    EXPECT_EQ(sel.members.first, 1 + 9 + 36 + 84);
    EXPECT_EQ(sel.members.count, 126);
    EXPECT_EQ(sel.central_index(), 130 + 63);
    EXPECT_EQ(sel.central_third(), (IndexRange{130 + 42, 42}));
    EXPECT_THROW(select_band(layout, 10), ArgumentError);
}

TEST(SpectralStats, WindowRuleAgreesWithCountRuleForSeparatedBands) {
    ModelSpec1D spec;
    spec.length = 8;
    const Eigen::VectorXd e0 = unperturbed_energies(spec);
    Eigen::VectorXd sorted = e0;
    std::sort(sorted.begin(), sorted.end());
    const BandLayout layout = band_layout(e0, 8);
    for (int up = 0; up <= 8; ++up) {
        const auto by_count = select_band(sorted, layout, up, BandRule::count);
        const auto by_window = select_band(sorted, layout, up, BandRule::window);
        EXPECT_EQ(by_count.members, by_window.members) << "n_up " << up;
    }
}

TEST(SpectralStats, CentralThirdOfTinyBand) {
    BandSelection sel{0, {10, 2}, 0.0};
    EXPECT_EQ(sel.central_third(), (IndexRange{10, 1}));
}

TEST(SpectralStats, ParticipationNumber) {
    std::vector<double> basis(16, 0.0);
    basis[3] = 1.0;
    EXPECT_DOUBLE_EQ(participation_number(basis), 1.0);
    std::vector<std::complex<double>> uniform(16, std::complex<double>(0.0, 0.25));
    EXPECT_NEAR(participation_number(uniform), 16.0, 1e-12);
    basis[4] = 1.0;
    EXPECT_THROW(participation_number(basis), ValidationError);
}

TEST(Histogram, BinsMergesAndKeepsOutliersInTheTotal) {
    Histogram a(0.0, 1.0, 0.25), b(0.0, 1.0, 0.25);
    a.add(0.1);
    a.add(1.0);  // upper edge goes to the last bin
    a.add(2.0);  // outside, counted in the total only
    b.add(0.3);
    a.merge(b);
    EXPECT_EQ(a.total, 4u);
    EXPECT_EQ(a.counts, (std::vector<double>{1, 1, 0, 1}));
    EXPECT_DOUBLE_EQ(a.density()[0], 1.0);
}
