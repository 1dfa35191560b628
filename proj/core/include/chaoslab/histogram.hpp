#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace chaoslab {

// Fixed-width histogram on [lo, lo + width * bins). Out-of-range values are
// counted in `total` but not binned, so density() stays normalized to the full
// sample. Merging histograms with identical binning is exact and commutative.
struct Histogram {
    double lo = 0.0;
    double width = 0.1;
    std::vector<double> counts;
    std::uint64_t total = 0;

    Histogram() = default;
    Histogram(double lo_, double hi, double width_)
        : lo(lo_), width(width_), counts(static_cast<std::size_t>(std::ceil((hi - lo_) / width_ - 1e-9)), 0.0) {}

    double bin_left(std::size_t b) const { return lo + width * static_cast<double>(b); }
    double bin_right(std::size_t b) const { return lo + width * static_cast<double>(b + 1); }

    void add(double x) {
        ++total;
        const double pos = (x - lo) / width;
        if (pos < 0.0) return;
        auto b = static_cast<std::size_t>(pos);
        // The upper edge belongs to the last bin.
        if (b == counts.size() && pos <= static_cast<double>(counts.size()) + 1e-9) b = counts.size() - 1;
        if (b < counts.size()) counts[b] += 1.0;
    }

    void merge(const Histogram& other) {
        for (std::size_t b = 0; b < counts.size(); ++b) counts[b] += other.counts[b];
        total += other.total;
    }

    // Probability density: integrates to the in-range fraction of the sample.
    std::vector<double> density() const {
        std::vector<double> d(counts.size(), 0.0);
        if (total == 0) return d;
        for (std::size_t b = 0; b < counts.size(); ++b) d[b] = counts[b] / (static_cast<double>(total) * width);
        return d;
    }
};

}  // namespace chaoslab
