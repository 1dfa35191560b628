#include "chaoslab/entanglement.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <string>

#include "chaoslab/errors.hpp"
#include "chaoslab/spin_basis.hpp"

namespace chaoslab {

namespace {

using cd = std::complex<double>;

int qubits_of(std::size_t length) {
    if (length < 2 || !std::has_single_bit(length))
        throw ArgumentError("state length " + std::to_string(length) + " is not a power of two >= 2");
    return std::countr_zero(length);
}

std::vector<int> sorted_keep(std::span<const int> keep, int num_qubits) {
    std::vector<int> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    if (kept.empty()) throw ArgumentError("partial_trace: keep set is empty");
    if (static_cast<int>(kept.size()) >= num_qubits)
        throw ArgumentError("partial_trace: keep set must be a proper subset of the qubits");
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end())
        throw ArgumentError("partial_trace: duplicate qubit in keep set");
    if (kept.front() < 0 || kept.back() >= num_qubits)
        throw ArgumentError("partial_trace: qubit index outside [0, " + std::to_string(num_qubits) + ")");
    return kept;
}

// offsets[a] = the basis index whose bits at `positions` spell a, all other bits 0.
std::vector<BasisIndex> scatter_table(const std::vector<int>& positions) {
    std::vector<BasisIndex> table(std::size_t{1} << positions.size(), 0);
    for (std::size_t a = 0; a < table.size(); ++a)
        for (std::size_t t = 0; t < positions.size(); ++t)
            if ((a >> t) & 1u) table[a] |= qubit_mask(positions[t]);
    return table;
}

template <class Scalar>
DensityMatrix partial_trace_impl(std::span<const Scalar> state, std::span<const int> keep) {
    const int num_qubits = qubits_of(state.size());
    DensityMatrix out;
    out.qubits = sorted_keep(keep, num_qubits);
    std::vector<int> traced;
    for (int q = 0, t = 0; q < num_qubits; ++q) {
        if (t < out.num_qubits() && out.qubits[t] == q)
            ++t;
        else
            traced.push_back(q);
    }
    const auto kept_offsets = scatter_table(out.qubits);
    const auto traced_offsets = scatter_table(traced);

    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    Mat psi(kept_offsets.size(), traced_offsets.size());
    for (std::size_t b = 0; b < traced_offsets.size(); ++b)
        for (std::size_t a = 0; a < kept_offsets.size(); ++a)
            psi(Eigen::Index(a), Eigen::Index(b)) = state[kept_offsets[a] | traced_offsets[b]];
    const Mat rho = psi * psi.adjoint();
    out.rho = rho.template cast<cd>();
    return out;
}

inline cd outer(double x, double y) { return {x * y, 0.0}; }
inline cd outer(const cd& x, const cd& y) { return x * std::conj(y); }

template <class Scalar>
Eigen::Matrix4cd two_qubit_impl(std::span<const Scalar> state, int q0, int q1) {
    const int num_qubits = qubits_of(state.size());
    if (q0 == q1 || q0 < 0 || q1 < 0 || q0 >= num_qubits || q1 >= num_qubits)
        throw ArgumentError("two_qubit_rdm: need two distinct qubits in [0, " + std::to_string(num_qubits) + ")");
    if (q0 > q1) std::swap(q0, q1);
    const BasisIndex m0 = qubit_mask(q0), m1 = qubit_mask(q1);
    // Upper triangle only; rho is Hermitian.
    Scalar acc[4][4] = {};
    for (BasisIndex n = 0; n < state.size(); ++n) {
        if (n & (m0 | m1)) continue;
        const Scalar v[4] = {state[n], state[n | m0], state[n | m1], state[n | m0 | m1]};
        for (int r = 0; r < 4; ++r)
            for (int c = r; c < 4; ++c) {
                if constexpr (std::is_same_v<Scalar, double>)
                    acc[r][c] += v[r] * v[c];
                else
                    acc[r][c] += v[r] * std::conj(v[c]);
            }
    }
    Eigen::Matrix4cd rho;
    for (int r = 0; r < 4; ++r)
        for (int c = r; c < 4; ++c) {
            rho(r, c) = cd(acc[r][c]);
            rho(c, r) = std::conj(rho(r, c));
        }
    for (int r = 0; r < 4; ++r) rho(r, r) = rho(r, r).real();
    return rho;
}

template <class Scalar>
Eigen::Matrix2cd single_qubit_impl(std::span<const Scalar> state, int q) {
    const int num_qubits = qubits_of(state.size());
    if (q < 0 || q >= num_qubits)
        throw ArgumentError("single_qubit_rdm: qubit outside [0, " + std::to_string(num_qubits) + ")");
    const BasisIndex m = qubit_mask(q);
    double p0 = 0.0, p1 = 0.0;
    Scalar coh{};
    for (BasisIndex n = 0; n < state.size(); ++n) {
        if (n & m) continue;
        const Scalar a = state[n], b = state[n | m];
        p0 += std::norm(a);
        p1 += std::norm(b);
        if constexpr (std::is_same_v<Scalar, double>)
            coh += a * b;
        else
            coh += a * std::conj(b);
    }
    Eigen::Matrix2cd rho;
    rho << p0, cd(coh), std::conj(cd(coh)), p1;
    return rho;
}

double entropy_of_spectrum(const Eigen::VectorXd& p) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < p.size(); ++k)
        if (p[k] > 0.0) s -= p[k] * std::log2(p[k]);
    return s;
}

template <class Scalar>
double block_entropy_impl(std::span<const Scalar> state, int first, int count) {
    const int num_qubits = qubits_of(state.size());
    if (count < 1 || first < 0 || first + count > num_qubits || count >= num_qubits)
        throw ArgumentError("block_entropy: block must be a nonempty proper subset of the chain");
    if (first == 0) {
        // Prefix block: the state is already a column-major (2^count x rest) matrix.
        using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
        const Eigen::Index rows = Eigen::Index{1} << count;
        const Eigen::Map<const Mat> psi(state.data(), rows, Eigen::Index(state.size()) / rows);
        const Mat rho = psi * psi.adjoint();
        return von_neumann_entropy(ComplexMatrix(rho.template cast<cd>()));
    }
    std::vector<int> keep(count);
    for (int t = 0; t < count; ++t) keep[t] = first + t;
    return von_neumann_entropy(partial_trace_impl(state, keep));
}

const Eigen::Matrix4cd& spin_flip() {
    static const Eigen::Matrix4cd yy = [] {
        Eigen::Matrix2cd y;
        y << 0.0, cd(0.0, -1.0), cd(0.0, 1.0), 0.0;
        Eigen::Matrix4cd k;
        // (Y x Y)_{(a b),(a' b')} = Y_{a a'} Y_{b b'} with index a + 2b.
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) k(r, c) = y(r & 1, c & 1) * y(r >> 1, c >> 1);
        return k;
    }();
    return yy;
}

void require_two_qubits(const DensityMatrix& rho, const char* who) {
    if (rho.rho.rows() != 4 || rho.rho.cols() != 4)
        throw ArgumentError(std::string(who) + ": expected a 4x4 two-qubit density matrix, got " +
                            std::to_string(rho.rho.rows()) + "x" + std::to_string(rho.rho.cols()));
}

}  // namespace

Eigen::VectorXd validated_spectrum(const ComplexMatrix& rho) {
    if (rho.rows() != rho.cols() || rho.rows() == 0) throw ValidationError("density matrix must be square and nonempty");
    const double asym = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-12) {
        std::ostringstream msg;
        msg << "density matrix not Hermitian: max |rho - rho^dagger| = " << asym;
        throw ValidationError(msg.str());
    }
    const double tr = rho.trace().real();
    if (std::abs(tr - 1.0) > 1e-10) {
        std::ostringstream msg;
        msg << "density matrix trace " << tr << " differs from 1 by more than 1e-10";
        throw ValidationError(msg.str());
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho, Eigen::EigenvaluesOnly);
    Eigen::VectorXd p = solver.eigenvalues();
    for (Eigen::Index k = 0; k < p.size(); ++k) {
        if (p[k] < -1e-10) {
            std::ostringstream msg;
            msg << "density matrix has eigenvalue " << p[k] << " below -1e-10";
            throw ValidationError(msg.str());
        }
        p[k] = std::max(p[k], 0.0);
    }
    return p;
}

DensityMatrix partial_trace(std::span<const cd> state, std::span<const int> keep) {
    return partial_trace_impl(state, keep);
}
DensityMatrix partial_trace(std::span<const double> state, std::span<const int> keep) {
    return partial_trace_impl(state, keep);
}

Eigen::Matrix2cd single_qubit_rdm(std::span<const cd> state, int qubit) { return single_qubit_impl(state, qubit); }
Eigen::Matrix2cd single_qubit_rdm(std::span<const double> state, int qubit) { return single_qubit_impl(state, qubit); }

Eigen::Matrix4cd two_qubit_rdm(std::span<const cd> state, int q0, int q1) { return two_qubit_impl(state, q0, q1); }
Eigen::Matrix4cd two_qubit_rdm(std::span<const double> state, int q0, int q1) {
    return two_qubit_impl(state, q0, q1);
}

double von_neumann_entropy(const ComplexMatrix& rho) { return entropy_of_spectrum(validated_spectrum(rho)); }
double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.rho); }

double block_entropy(std::span<const double> state, int first, int count) {
    return block_entropy_impl(state, first, count);
}
double block_entropy(std::span<const cd> state, int first, int count) { return block_entropy_impl(state, first, count); }

double c_lambda(const Eigen::Matrix4cd& rho) {
    // The l_i are the singular values of sqrt(rho) sqrt(rho~) with
    // sqrt(rho~) = (Y x Y) sqrt(rho)^* (Y x Y): same numbers as the square roots of
    // eig(rho rho~), without the ill-conditioning of that non-normal product.
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(rho);
    const Eigen::Vector4d p = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Eigen::Matrix4cd root = solver.eigenvectors() * p.cast<cd>().asDiagonal() * solver.eigenvectors().adjoint();
    const Eigen::Matrix4cd& yy = spin_flip();
    const Eigen::Matrix4cd flipped_root = yy * root.conjugate() * yy;
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(root * flipped_root);
    const Eigen::Vector4d l = svd.singularValues();  // descending
    return l[0] - l[1] - l[2] - l[3];
}

double c_lambda(const DensityMatrix& rho) {
    require_two_qubits(rho, "c_lambda");
    return c_lambda(Eigen::Matrix4cd(rho.rho));
}

double concurrence(const Eigen::Matrix4cd& rho) { return std::max(0.0, c_lambda(rho)); }

double concurrence(const DensityMatrix& rho) { return std::max(0.0, c_lambda(rho)); }

double binary_entropy(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double formation_from_concurrence(double c) {
    c = std::clamp(c, 0.0, 1.0);
    return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

double entanglement_of_formation(const Eigen::Matrix4cd& rho) { return formation_from_concurrence(concurrence(rho)); }

double entanglement_of_formation(const DensityMatrix& rho) {
    require_two_qubits(rho, "entanglement_of_formation");
    return entanglement_of_formation(Eigen::Matrix4cd(rho.rho));
}

double negativity(const Eigen::Matrix4cd& rho) {
    Eigen::Matrix4cd pt;
    // Transpose the second qubit (bit 1 of the index).
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) pt((r & 1) | (c & 2), (c & 1) | (r & 2)) = rho(r, c);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(pt, Eigen::EigenvaluesOnly);
    double neg = 0.0;
    for (int k = 0; k < 4; ++k) neg += std::max(0.0, -solver.eigenvalues()[k]);
    return neg;
}

double negativity(const DensityMatrix& rho) {
    require_two_qubits(rho, "negativity");
    return negativity(Eigen::Matrix4cd(rho.rho));
}

ClambdaSample clambda_statistics(std::span<const double> values, double bin_width) {
    if (values.empty()) throw ArgumentError("clambda_statistics: empty sample");
    ClambdaSample sample;
    sample.histogram = Histogram(-0.5, 1.0, bin_width);
    double sum = 0.0;
    for (double v : values) {
        sample.histogram.add(v);
        sum += v;
    }
    sample.count = values.size();
    sample.mean = sum / static_cast<double>(values.size());
    return sample;
}

}  // namespace chaoslab
