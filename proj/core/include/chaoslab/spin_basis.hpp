#pragma once

// Computational-basis conventions shared by every module.
//
// A many-qubit basis state is an unsigned integer `n` in [0, 2^L). Bit k of `n`
// describes qubit k (0-based; the physics literature's qubit k+1):
//
//   bit k = 0  ->  |0>, sigma^z eigenvalue +1 ("up")
//   bit k = 1  ->  |1>, sigma^z eigenvalue -1 ("down")
//
// so popcount(n) is the number of down spins. Dense matrices are indexed by
// these integers directly; qubit 0 is the least significant tensor factor.

#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

namespace chaoslab {

using BasisIndex = std::uint32_t;

inline constexpr int kMaxQubits = 16;

constexpr int down_count(BasisIndex n) noexcept { return std::popcount(n); }

// sigma^z eigenvalue of qubit k in basis state n.
constexpr int z_value(BasisIndex n, int k) noexcept { return ((n >> k) & 1u) ? -1 : 1; }

constexpr BasisIndex qubit_mask(int k) noexcept { return BasisIndex{1} << k; }

std::uint64_t binomial(int n, int k);

// All basis states of an L-qubit register with exactly n_up up spins, ascending.
std::vector<BasisIndex> enumerate_sector(int num_qubits, int n_up);

struct Geometry {
    enum class Kind { chain, torus2d };

    Kind kind = Kind::chain;
    int lx = 0;  // chain length, or torus width
    int ly = 1;  // torus height (1 for chains)

    static Geometry chain(int length) { return {Kind::chain, length, 1}; }
    static Geometry torus(int width, int height) { return {Kind::torus2d, width, height}; }

    int num_qubits() const noexcept { return lx * ly; }

    // Row-major site numbering on the torus.
    int site(int x, int y) const noexcept { return y * lx + x; }

    bool operator==(const Geometry&) const = default;
};

struct QubitPair {
    int first = 0;
    int second = 0;  // first < second

    bool operator==(const QubitPair&) const = default;
    auto operator<=>(const QubitPair&) const = default;
};

struct PairClass {
    int distance = 0;  // 0 marks the all-pairs class
    std::vector<QubitPair> pairs;
};

// Chain: pairs (k, k+n). Torus: n = 1 lattice bonds, n = 2 diagonal neighbours,
// both with periodic wrap-around. Pairs are sorted and listed once.
PairClass pairs_at_distance(const Geometry& geometry, int distance);

PairClass all_pairs(int num_qubits);

}  // namespace chaoslab
