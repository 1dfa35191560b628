#include "chaoslab/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chaoslab/errors.hpp"
#include "chaoslab/rng.hpp"

namespace chaoslab {

namespace {

Eigen::Index checked_dimension(int num_qubits) {
    if (num_qubits < 1) throw ArgumentError("model needs at least one qubit");
    if (num_qubits > kMaxQubits)
        throw CapacityError("dense Hamiltonian limited to " + std::to_string(kMaxQubits) + " qubits, got " +
                            std::to_string(num_qubits));
    return Eigen::Index{1} << num_qubits;
}

void check_range(const ModelSpec1D& spec) {
    if (spec.range < 1 || spec.range > spec.length - 1)
        throw ArgumentError("interaction range l_c = " + std::to_string(spec.range) + " outside [1, " +
                            std::to_string(spec.length - 1) + "]");
}

bool in_range(const ModelSpec1D& spec, const QubitPair& p) { return p.second - p.first <= spec.range; }

}  // namespace

double ModelSpec1D::effective_field(int k) const {
    const double d = detuning(k);
    return std::sqrt(d * d + rabi * rabi);
}

DisorderRealization sample_realization(const ModelSpec2D& spec, std::uint64_t seed) {
    checked_dimension(spec.num_qubits());
    UniformSampler sampler(seed);
    DisorderRealization r;
    r.seed = seed;
    r.fields.reserve(spec.num_qubits());
    for (int i = 0; i < spec.num_qubits(); ++i)
        r.fields.push_back(sampler.uniform(spec.delta0 - spec.delta / 2, spec.delta0 + spec.delta / 2));
    for (const QubitPair& bond : pairs_at_distance(spec.geometry(), 1).pairs)
        r.couplings.push_back({bond, sampler.uniform(-1.0, 1.0)});
    return r;
}

DisorderRealization sample_realization(const ModelSpec1D& spec, std::uint64_t seed) {
    checked_dimension(spec.num_qubits());
    UniformSampler sampler(seed);
    DisorderRealization r;
    r.seed = seed;
    for (const QubitPair& p : all_pairs(spec.length).pairs) r.couplings.push_back({p, sampler.uniform(-1.0, 1.0)});
    return r;
}

Eigen::VectorXd unperturbed_energies(const ModelSpec2D& spec, const DisorderRealization& realization) {
    const Eigen::Index dim = checked_dimension(spec.num_qubits());
    if (static_cast<int>(realization.fields.size()) != spec.num_qubits())
        throw ArgumentError("realization has " + std::to_string(realization.fields.size()) + " fields for " +
                            std::to_string(spec.num_qubits()) + " qubits");
    Eigen::VectorXd energies(dim);
    for (Eigen::Index n = 0; n < dim; ++n) {
        double e = 0.0;
        for (int i = 0; i < spec.num_qubits(); ++i) e += realization.fields[i] * z_value(BasisIndex(n), i);
        energies[n] = e;
    }
    return energies;
}

Eigen::VectorXd unperturbed_energies(const ModelSpec1D& spec) {
    const Eigen::Index dim = checked_dimension(spec.num_qubits());
    std::vector<double> half_fields(spec.length);
    for (int k = 0; k < spec.length; ++k) half_fields[k] = 0.5 * spec.effective_field(k);
    Eigen::VectorXd energies(dim);
    for (Eigen::Index n = 0; n < dim; ++n) {
        double e = 0.0;
        for (int k = 0; k < spec.length; ++k) e += half_fields[k] * z_value(BasisIndex(n), k);
        energies[n] = e;
    }
    return energies;
}

RealMatrix build_h_2d(const ModelSpec2D& spec, const DisorderRealization& realization) {
    const Eigen::Index dim = checked_dimension(spec.num_qubits());
    RealMatrix h = RealMatrix::Zero(dim, dim);
    h.diagonal() = unperturbed_energies(spec, realization);
    for (const auto& c : realization.couplings) {
        const double j = spec.coupling * c.unit_strength;
        if (j == 0.0) continue;
        const BasisIndex flip = qubit_mask(c.pair.first) | qubit_mask(c.pair.second);
        for (Eigen::Index n = 0; n < dim; ++n) h(Eigen::Index(BasisIndex(n) ^ flip), n) += j;
    }
    return h;
}

ComplexMatrix build_h0_1d(const ModelSpec1D& spec) {
    const Eigen::VectorXd e = unperturbed_energies(spec);
    return e.cast<std::complex<double>>().asDiagonal();
}

ComplexMatrix build_v_1d(const ModelSpec1D& spec, const DisorderRealization& realization) {
    const Eigen::Index dim = checked_dimension(spec.num_qubits());
    check_range(spec);
    const std::complex<double> i_unit(0.0, 1.0);
    ComplexMatrix v = ComplexMatrix::Zero(dim, dim);
    for (const auto& c : realization.couplings) {
        if (!in_range(spec, c.pair)) continue;
        const int j = c.pair.first;
        const int k = c.pair.second;
        const double half_j = 0.5 * spec.coupling * c.unit_strength;
        if (half_j == 0.0) continue;
        const double aj = spec.coefficient_a(j), ak = spec.coefficient_a(k);
        const double bj = spec.coefficient_b(j), bk = spec.coefficient_b(k);
        const BasisIndex mj = qubit_mask(j), mk = qubit_mask(k);
        for (Eigen::Index col = 0; col < dim; ++col) {
            const BasisIndex n = BasisIndex(col);
            const double zz = z_value(n, j) * z_value(n, k);
            // Z_j Z_k
            v(col, col) += -half_j * bj * bk * zz;
            // Y_j Y_k |n> = -z_j z_k |n ^ mj ^ mk>
            v(Eigen::Index(n ^ mj ^ mk), col) += half_j * aj * ak * zz;
            // Y_j Z_k |n> = i z_j z_k |n ^ mj>,  Z_j Y_k |n> = i z_j z_k |n ^ mk>
            v(Eigen::Index(n ^ mj), col) += half_j * aj * bk * zz * i_unit;
            v(Eigen::Index(n ^ mk), col) += half_j * ak * bj * zz * i_unit;
        }
    }
    return v;
}

ComplexMatrix build_h_1d(const ModelSpec1D& spec, const DisorderRealization& realization) {
    ComplexMatrix h = build_v_1d(spec, realization);
    h.diagonal() += unperturbed_energies(spec).cast<std::complex<double>>();
    return h;
}

RealMatrix build_h_1d_real_gauge(const ModelSpec1D& spec, const DisorderRealization& realization) {
    const Eigen::Index dim = checked_dimension(spec.num_qubits());
    check_range(spec);
    RealMatrix h = RealMatrix::Zero(dim, dim);
    h.diagonal() = unperturbed_energies(spec);
    for (const auto& c : realization.couplings) {
        if (!in_range(spec, c.pair)) continue;
        const int j = c.pair.first;
        const int k = c.pair.second;
        const double half_j = 0.5 * spec.coupling * c.unit_strength;
        if (half_j == 0.0) continue;
        const double aj = spec.coefficient_a(j), ak = spec.coefficient_a(k);
        const double bj = spec.coefficient_b(j), bk = spec.coefficient_b(k);
        const BasisIndex mj = qubit_mask(j), mk = qubit_mask(k);
        const double xx = -half_j * aj * ak;
        for (Eigen::Index col = 0; col < dim; ++col) {
            const BasisIndex n = BasisIndex(col);
            const int zj = z_value(n, j), zk = z_value(n, k);
            h(col, col) += -half_j * bj * bk * zj * zk;
            h(Eigen::Index(n ^ mj ^ mk), col) += xx;
            // Y -> -X: (-X_j) Z_k and Z_j (-X_k)
            h(Eigen::Index(n ^ mj), col) += -half_j * aj * bk * zk;
            h(Eigen::Index(n ^ mk), col) += -half_j * ak * bj * zj;
        }
    }
    return h;
}

std::complex<double> gauge_phase(BasisIndex n) {
    switch (down_count(n) & 3) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

ComplexMatrix to_model_gauge(const RealMatrix& real_gauge_vectors) {
    ComplexMatrix out(real_gauge_vectors.rows(), real_gauge_vectors.cols());
    for (Eigen::Index n = 0; n < real_gauge_vectors.rows(); ++n) {
        const std::complex<double> phase = std::conj(gauge_phase(BasisIndex(n)));
        out.row(n) = phase * real_gauge_vectors.row(n).cast<std::complex<double>>();
    }
    return out;
}

namespace {

template <class Matrix>
double relative_asymmetry(const Matrix& h) {
    const double scale = h.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (Eigen::Index c = 0; c < h.cols(); ++c)
        for (Eigen::Index r = 0; r <= c; ++r) {
            using std::conj;
            worst = std::max(worst, std::abs(h(r, c) - conj(h(c, r))));
        }
    return worst / scale;
}

}  // namespace

double hermiticity_deviation(const ComplexMatrix& h) { return relative_asymmetry(h); }

double hermiticity_deviation(const RealMatrix& h) { return relative_asymmetry(h); }

}  // namespace chaoslab
