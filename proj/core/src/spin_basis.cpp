#include "chaoslab/spin_basis.hpp"

#include <algorithm>
#include <string>

#include "chaoslab/errors.hpp"

namespace chaoslab {

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) result = result * static_cast<std::uint64_t>(n - k + i) / i;
    return result;
}

std::vector<BasisIndex> enumerate_sector(int num_qubits, int n_up) {
    if (num_qubits < 0 || num_qubits > kMaxQubits)
        throw ArgumentError("enumerate_sector: qubit count " + std::to_string(num_qubits) +
                            " outside [0, " + std::to_string(kMaxQubits) + "]");
    if (n_up < 0 || n_up > num_qubits)
        throw ArgumentError("enumerate_sector: n_up " + std::to_string(n_up) + " outside [0, " +
                            std::to_string(num_qubits) + "]");

    const int n_down = num_qubits - n_up;
    std::vector<BasisIndex> states;
    states.reserve(binomial(num_qubits, n_down));
    if (n_down == 0) {
        states.push_back(0);
        return states;
    }
    // Gosper's hack walks fixed-popcount integers in ascending order.
    const BasisIndex limit = BasisIndex{1} << num_qubits;
    for (BasisIndex n = (BasisIndex{1} << n_down) - 1; n < limit;) {
        states.push_back(n);
        const BasisIndex lowest = n & (~n + 1);
        const BasisIndex ripple = n + lowest;
        n = (((ripple ^ n) >> 2) / lowest) | ripple;
    }
    return states;
}

namespace {

void add_pair(std::vector<QubitPair>& pairs, int a, int b) {
    if (a == b) return;
    pairs.push_back(a < b ? QubitPair{a, b} : QubitPair{b, a});
}

void sort_unique(std::vector<QubitPair>& pairs) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
}

}  // namespace

PairClass pairs_at_distance(const Geometry& geometry, int distance) {
    PairClass cls{distance, {}};
    if (geometry.kind == Geometry::Kind::chain) {
        const int length = geometry.num_qubits();
        if (distance < 1 || distance > length - 1)
            throw ArgumentError("pairs_at_distance: chain of " + std::to_string(length) +
                                " qubits has no distance " + std::to_string(distance));
        for (int k = 0; k + distance < length; ++k) cls.pairs.push_back({k, k + distance});
        return cls;
    }

    if (distance != 1 && distance != 2)
        throw ArgumentError("pairs_at_distance: torus supports distance 1 (bonds) or 2 (diagonals), got " +
                            std::to_string(distance));
    const int w = geometry.lx;
    const int h = geometry.ly;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const int here = geometry.site(x, y);
            if (distance == 1) {
                add_pair(cls.pairs, here, geometry.site((x + 1) % w, y));
                add_pair(cls.pairs, here, geometry.site(x, (y + 1) % h));
            } else {
                add_pair(cls.pairs, here, geometry.site((x + 1) % w, (y + 1) % h));
                add_pair(cls.pairs, here, geometry.site((x + 1) % w, (y + h - 1) % h));
            }
        }
    }
    sort_unique(cls.pairs);
    return cls;
}

PairClass all_pairs(int num_qubits) {
    PairClass cls{0, {}};
    for (int a = 0; a < num_qubits; ++a)
        for (int b = a + 1; b < num_qubits; ++b) cls.pairs.push_back({a, b});
    return cls;
}

}  // namespace chaoslab
