#include "chaoslab/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <span>
#include <sstream>
#include <thread>

#include "chaoslab/eigensolve.hpp"
#include "chaoslab/entanglement.hpp"
#include "chaoslab/errors.hpp"
#include "chaoslab/rng.hpp"

namespace chaoslab {

std::string to_string(ModelKind kind) { return kind == ModelKind::torus2d ? "2d" : "1d"; }

std::string to_string(CouplingUnits units) {
    switch (units) {
        case CouplingUnits::native: return "native";
        case CouplingUnits::jl_over_delta: return "JL_over_delta";
        case CouplingUnits::j_over_jc: return "J_over_Jc";
    }
    return "native";
}

std::string to_string(Scope scope) {
    switch (scope) {
        case Scope::band: return "band";
        case Scope::central: return "central";
        case Scope::central_third: return "third";
    }
    return "band";
}

std::string to_string(BandRule rule) { return rule == BandRule::count ? "count" : "window"; }

std::string to_string(Unfolding method) { return method == Unfolding::global ? "global" : "staircase"; }

ModelKind parse_model_kind(const std::string& text) {
    if (text == "2d") return ModelKind::torus2d;
    if (text == "1d") return ModelKind::chain1d;
    throw ArgumentError("unknown model kind '" + text + "' (expected 2d or 1d)");
}

CouplingUnits parse_units(const std::string& text) {
    if (text == "native") return CouplingUnits::native;
    if (text == "JL_over_delta") return CouplingUnits::jl_over_delta;
    if (text == "J_over_Jc") return CouplingUnits::j_over_jc;
    throw ArgumentError("unknown coupling units '" + text + "' (expected native, JL_over_delta or J_over_Jc)");
}

Scope parse_scope(const std::string& text) {
    if (text == "band") return Scope::band;
    if (text == "central") return Scope::central;
    if (text == "third") return Scope::central_third;
    throw ArgumentError("unknown scope '" + text + "' (expected band, central or third)");
}

BandRule parse_band_rule(const std::string& text) {
    if (text == "count") return BandRule::count;
    if (text == "window") return BandRule::window;
    throw ArgumentError("unknown band rule '" + text + "' (expected count or window)");
}

Unfolding parse_unfolding(const std::string& text) {
    if (text == "staircase") return Unfolding::staircase;
    if (text == "global") return Unfolding::global;
    throw ArgumentError("unknown unfolding '" + text + "' (expected staircase or global)");
}

double ModelTemplate::native_coupling(double value, CouplingUnits units) const {
    switch (units) {
        case CouplingUnits::native: return value;
        case CouplingUnits::jl_over_delta:
            if (kind != ModelKind::torus2d) throw ArgumentError("JL_over_delta units apply to the 2d model only");
            return value * torus.delta / torus.num_qubits();
        case CouplingUnits::j_over_jc:
            if (kind != ModelKind::chain1d) throw ArgumentError("J_over_Jc units apply to the 1d model only");
            return value * chain.critical_coupling();
    }
    return value;
}

namespace {

std::optional<int> parse_int(std::string_view text) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
    return v;
}

int require_int(std::string_view text, const std::string& whole) {
    const auto v = parse_int(text);
    if (!v) throw ArgumentError("malformed measure '" + whole + "'");
    return *v;
}

}  // namespace

MeasureRequest MeasureRequest::parse(const std::string& text) {
    using K = MeasureRequest::Kind;
    MeasureRequest m;
    std::string_view rest = text;
    if (const auto at = rest.find('@'); at != std::string_view::npos) {
        const std::string_view band = rest.substr(at + 1);
        if (band.substr(0, 4) != "nup=") throw ArgumentError("malformed band suffix in measure '" + text + "'");
        m.band = require_int(band.substr(4), text);
        rest = rest.substr(0, at);
    }
    if (const auto colon = rest.find(':'); colon != std::string_view::npos) {
        m.scope = parse_scope(std::string(rest.substr(colon + 1)));
        rest = rest.substr(0, colon);
    }
    const std::string name(rest);
    if (name == "gamma") m.kind = K::gamma;
    else if (name == "pds") m.kind = K::pds;
    else if (name == "pn") m.kind = K::pn;
    else if (name == "C_a") m.kind = K::concurrence_all;
    else if (name == "S_1") m.kind = K::entropy_single;
    else if (name == "S_half") m.kind = K::entropy_half;
    else if (name == "clambda") m.kind = K::clambda;
    else if (name == "cmap") m.kind = K::cmap;
    else if (name.starts_with("S_block_")) {
        m.kind = K::entropy_block;
        m.order = require_int(std::string_view(name).substr(8), text);
    } else if (name.starts_with("C_")) {
        m.kind = K::concurrence;
        m.order = require_int(std::string_view(name).substr(2), text);
    } else if (name.starts_with("N_")) {
        m.kind = K::negativity;
        m.order = require_int(std::string_view(name).substr(2), text);
    } else {
        throw ArgumentError("unknown measure '" + text + "'");
    }
    if ((m.kind == K::gamma || m.kind == K::pds || m.kind == K::cmap) && m.scope != Scope::band)
        throw ArgumentError("measure '" + name + "' is always evaluated over the whole band");
    return m;
}

std::string MeasureRequest::name() const {
    using K = MeasureRequest::Kind;
    switch (kind) {
        case K::gamma: return "gamma";
        case K::pds: return "pds";
        case K::pn: return "pn";
        case K::concurrence: return "C_" + std::to_string(order);
        case K::concurrence_all: return "C_a";
        case K::negativity: return "N_" + std::to_string(order);
        case K::entropy_single: return "S_1";
        case K::entropy_block: return "S_block_" + std::to_string(order);
        case K::entropy_half: return "S_half";
        case K::clambda: return "clambda";
        case K::cmap: return "cmap";
    }
    return "";
}

std::string MeasureRequest::label() const {
    std::string s = name();
    if (scope != Scope::band) s += ":" + to_string(scope);
    if (band) s += "@nup=" + std::to_string(*band);
    return s;
}

void validate(const SweepPlan& plan) {
    using K = MeasureRequest::Kind;
    const ModelTemplate& m = plan.model;
    const int L = m.num_qubits();
    if (m.kind == ModelKind::torus2d) {
        if (m.torus.lx < 1 || m.torus.ly < 1) throw ArgumentError("torus dimensions must be positive");
        if (!(m.torus.delta >= 0.0)) throw ArgumentError("field spread delta must be non-negative");
    } else {
        if (!(m.chain.rabi > 0.0)) throw ArgumentError("rabi frequency must be positive");
        if (m.chain.range < 1 || m.chain.range > L - 1)
            throw ArgumentError("interaction range l_c = " + std::to_string(m.chain.range) + " outside [1, " +
                                std::to_string(L - 1) + "]");
    }
    if (L < 2) throw ArgumentError("model needs at least two qubits");
    if (L > kMaxQubits)
        throw CapacityError("dense model limited to " + std::to_string(kMaxQubits) + " qubits, got " + std::to_string(L));
    auto check_band = [L](int b) {
        if (b < 0 || b > L) throw ArgumentError("band n_up = " + std::to_string(b) + " outside [0, " + std::to_string(L) + "]");
    };
    check_band(m.default_band());
    if (plan.grid.empty()) throw ArgumentError("coupling grid is empty");
    for (double x : plan.grid)
        if (!std::isfinite(x)) throw ArgumentError("coupling grid contains a non-finite value");
    m.native_coupling(1.0, plan.units);
    if (plan.realizations < 1) throw ArgumentError("realization count must be at least 1");
    if (plan.unfolding_degree < 1) throw ArgumentError("unfolding degree must be at least 1");
    if (plan.threads < 1) throw ArgumentError("thread count must be at least 1");
    if (!(plan.pds_bin_width > 0.0) || !(plan.clambda_bin_width > 0.0) || !(plan.pds_max > plan.pds_bin_width))
        throw ArgumentError("histogram bin widths must be positive");
    if (plan.measures.empty()) throw ArgumentError("no measures requested");
    std::set<std::string> labels;
    int maps = 0;
    for (const MeasureRequest& req : plan.measures) {
        if (!labels.insert(req.label()).second) throw ArgumentError("measure '" + req.label() + "' requested twice");
        if (req.band) check_band(*req.band);
        switch (req.kind) {
            case K::concurrence:
            case K::negativity: pairs_at_distance(m.geometry(), req.order); break;
            case K::entropy_block:
                if (req.order < 1 || req.order > L - 1)
                    throw ArgumentError("block size " + std::to_string(req.order) + " outside [1, " + std::to_string(L - 1) + "]");
                break;
            case K::gamma:
            case K::pds:
                if (binomial(L, req.band.value_or(m.default_band())) < 2)
                    throw ArgumentError("measure '" + req.label() + "' needs a band with at least two levels");
                break;
            case K::cmap: ++maps; break;
            default: break;
        }
    }
    if (maps > 1) throw ArgumentError("at most one cmap measure per sweep");
}

void ResultTable::append(const ResultTable& other) {
    records.insert(records.end(), other.records.begin(), other.records.end());
    histograms.insert(histograms.end(), other.histograms.begin(), other.histograms.end());
    maps.insert(maps.end(), other.maps.begin(), other.maps.end());
    tasks += other.tasks;
    failed_tasks += other.failed_tasks;
}

namespace {

using K = MeasureRequest::Kind;
constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct TaskOutput {
    bool ok = false;
    std::vector<double> scalars;     // per measure; NaN for non-scalar measures
    std::vector<Histogram> hists;    // per measure; empty for measures without a histogram
    Eigen::VectorXd map_column;
};

// Triangular index of a pair into all_pairs order.
struct PairIndex {
    int n;
    int operator()(const QubitPair& p) const { return p.first * (2 * n - p.first - 1) / 2 + (p.second - p.first - 1); }
};

template <class Scalar>
class StateMeasures {
  public:
    StateMeasures(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& vectors, Eigen::Index offset,
                  int num_qubits)
        : vectors_(vectors), offset_(offset), num_qubits_(num_qubits), index_{num_qubits},
          num_pairs_(num_qubits * (num_qubits - 1) / 2) {}

    std::span<const Scalar> state(Eigen::Index k) const {
        return {vectors_.col(k - offset_).data(), static_cast<std::size_t>(vectors_.rows())};
    }

    double clambda(Eigen::Index k, const QubitPair& p) {
        double& slot = cached(clambda_, k)[index_(p)];
        if (std::isnan(slot)) slot = c_lambda(two_qubit_rdm(state(k), p.first, p.second));
        return slot;
    }

    double negativity_of(Eigen::Index k, const QubitPair& p) {
        double& slot = cached(negativity_, k)[index_(p)];
        if (std::isnan(slot)) slot = negativity(two_qubit_rdm(state(k), p.first, p.second));
        return slot;
    }

    double single_entropy_mean(Eigen::Index k) const {
        double s = 0.0;
        for (int q = 0; q < num_qubits_; ++q) s += von_neumann_entropy(ComplexMatrix(single_qubit_rdm(state(k), q)));
        return s / num_qubits_;
    }

  private:
    std::vector<double>& cached(std::map<Eigen::Index, std::vector<double>>& cache, Eigen::Index k) {
        auto it = cache.find(k);
        if (it == cache.end()) it = cache.emplace(k, std::vector<double>(num_pairs_, kUnset)).first;
        return it->second;
    }

    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& vectors_;
    Eigen::Index offset_;
    int num_qubits_;
    PairIndex index_;
    int num_pairs_;
    std::map<Eigen::Index, std::vector<double>> clambda_;
    std::map<Eigen::Index, std::vector<double>> negativity_;
};

IndexRange scoped_states(const BandSelection& sel, Scope scope) {
    switch (scope) {
        case Scope::band: return sel.members;
        case Scope::central: return {sel.central_index(), 1};
        case Scope::central_third: return sel.central_third();
    }
    return sel.members;
}

class SweepRunner {
  public:
    explicit SweepRunner(const SweepPlan& plan) : plan_(plan) {
        const Geometry geometry = plan.model.geometry();
        all_ = all_pairs(geometry.num_qubits()).pairs;
        for (const MeasureRequest& req : plan.measures) {
            bands_.insert(req.band.value_or(plan.model.default_band()));
            if (req.kind == K::concurrence || req.kind == K::negativity)
                classes_.emplace(req.order, pairs_at_distance(geometry, req.order).pairs);
            if (req.kind == K::cmap) {
                full_spectrum_ = true;
                classes_.emplace(1, pairs_at_distance(geometry, 1).pairs);
            }
        }
    }

    TaskOutput run_task(std::size_t j, int r) const {
        const std::uint64_t seed = realization_seed(plan_.base_seed, static_cast<std::uint64_t>(r));
        const double coupling = plan_.model.native_coupling(plan_.grid[j], plan_.units);
        const int L = plan_.model.num_qubits();
        std::map<int, BandSelection> selections;
        Eigen::VectorXd e0;
        auto selector = [&](const Eigen::VectorXd& eigenvalues) {
            const BandLayout layout = band_layout(e0, L);
            Eigen::Index lo = eigenvalues.size(), hi = 0;
            for (int b : bands_) {
                const BandSelection sel = select_band(eigenvalues, layout, b, plan_.band_rule);
                selections[b] = sel;
                lo = std::min(lo, sel.members.first);
                hi = std::max(hi, sel.members.end());
            }
            if (full_spectrum_) return IndexRange{0, eigenvalues.size()};
            if (hi <= lo) return IndexRange{0, 0};
            return IndexRange{lo, hi - lo};
        };

        if (plan_.model.kind == ModelKind::torus2d) {
            ModelSpec2D spec = plan_.model.torus;
            spec.coupling = coupling;
            const DisorderRealization real = sample_realization(spec, seed);
            e0 = unperturbed_energies(spec, real);
            const PartialEigenSystem es = eig_symmetric_partial(build_h_2d(spec, real), selector);
            dump(j, r, es.eigenvalues);
            return measure<double>(es.eigenvalues, es.eigenvectors, es.range.first, selections);
        }
        ModelSpec1D spec = plan_.model.chain;
        spec.coupling = coupling;
        const DisorderRealization real = sample_realization(spec, seed);
        e0 = unperturbed_energies(spec);
        if (plan_.real_gauge) {
            const PartialEigenSystem es = eig_symmetric_partial(build_h_1d_real_gauge(spec, real), selector);
            dump(j, r, es.eigenvalues);
            return measure<double>(es.eigenvalues, es.eigenvectors, es.range.first, selections);
        }
        const EigenSystem es = eig_hermitian(build_h_1d(spec, real));
        const IndexRange range = selector(es.eigenvalues);
        dump(j, r, es.eigenvalues);
        const ComplexMatrix vectors = es.eigenvectors.middleCols(range.first, range.count);
        return measure<std::complex<double>>(es.eigenvalues, vectors, range.first, selections);
    }

  private:
    void dump(std::size_t j, int r, const Eigen::VectorXd& eigenvalues) const {
        if (plan_.eigenvalue_dump_dir.empty()) return;
        const auto path = std::filesystem::path(plan_.eigenvalue_dump_dir) /
                          ("eigenvalues_j" + std::to_string(j) + "_r" + std::to_string(r) + ".txt");
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out.precision(17);
        for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) out << eigenvalues[k] << '\n';
    }

    template <class Scalar>
    TaskOutput measure(const Eigen::VectorXd& eigenvalues,
                       const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& vectors, Eigen::Index offset,
                       const std::map<int, BandSelection>& selections) const {
        const int L = plan_.model.num_qubits();
        StateMeasures<Scalar> states(vectors, offset, L);
        TaskOutput out;
        out.scalars.assign(plan_.measures.size(), kUnset);
        out.hists.resize(plan_.measures.size());

        auto pair_mean = [&](Eigen::Index k, const std::vector<QubitPair>& pairs, bool neg) {
            double s = 0.0;
            for (const QubitPair& p : pairs) s += neg ? states.negativity_of(k, p) : std::max(0.0, states.clambda(k, p));
            return s / static_cast<double>(pairs.size());
        };

        for (std::size_t m = 0; m < plan_.measures.size(); ++m) {
            const MeasureRequest& req = plan_.measures[m];
            const BandSelection& sel = selections.at(req.band.value_or(plan_.model.default_band()));
            const IndexRange scope = scoped_states(sel, req.scope);
            if (scope.count < 1) throw ValidationError("band n_up = " + std::to_string(sel.n_up) + " selected no levels");

            auto over_states = [&](auto&& f) {
                double s = 0.0;
                for (Eigen::Index k = scope.first; k < scope.end(); ++k) s += f(k);
                return s / static_cast<double>(scope.count);
            };

            switch (req.kind) {
                case K::gamma:
                case K::pds: {
                    const SpacingSample sample =
                        unfold(std::span<const double>(eigenvalues.data() + sel.members.first, sel.members.count),
                               plan_.unfolding, plan_.unfolding_degree);
                    if (req.kind == K::gamma)
                        out.scalars[m] = gamma(sample).value;
                    else
                        out.hists[m] = spacing_histogram(sample, plan_.pds_bin_width, plan_.pds_max);
                    break;
                }
                case K::pn:
                    out.scalars[m] = over_states([&](Eigen::Index k) { return participation_number(states.state(k)); });
                    break;
                case K::concurrence:
                case K::negativity: {
                    const auto& pairs = classes_.at(req.order);
                    const bool neg = req.kind == K::negativity;
                    out.scalars[m] = over_states([&](Eigen::Index k) { return pair_mean(k, pairs, neg); });
                    break;
                }
                case K::concurrence_all:
                    out.scalars[m] = over_states([&](Eigen::Index k) { return pair_mean(k, all_, false); });
                    break;
                case K::entropy_single:
                    out.scalars[m] = over_states([&](Eigen::Index k) { return states.single_entropy_mean(k); });
                    break;
                case K::entropy_block:
                case K::entropy_half: {
                    const int n = req.kind == K::entropy_half ? L / 2 : req.order;
                    out.scalars[m] = over_states([&](Eigen::Index k) { return block_entropy(states.state(k), 0, n); });
                    break;
                }
                case K::clambda: {
                    std::vector<double> values;
                    values.reserve(static_cast<std::size_t>(scope.count) * all_.size());
                    for (Eigen::Index k = scope.first; k < scope.end(); ++k)
                        for (const QubitPair& p : all_) values.push_back(states.clambda(k, p));
                    const ClambdaSample sample = clambda_statistics(values, plan_.clambda_bin_width);
                    out.scalars[m] = sample.mean;
                    out.hists[m] = sample.histogram;
                    break;
                }
                case K::cmap: {
                    const auto& pairs = classes_.at(1);
                    out.map_column.resize(eigenvalues.size());
                    for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) out.map_column[k] = pair_mean(k, pairs, false);
                    break;
                }
            }
        }
        out.ok = true;
        return out;
    }

    const SweepPlan& plan_;
    std::set<int> bands_;
    std::map<int, std::vector<QubitPair>> classes_;
    std::vector<QubitPair> all_;
    bool full_spectrum_ = false;
};

void sample_stats(const std::vector<double>& values, double& mean, double& std_error) {
    mean = 0.0;
    std_error = 0.0;
    if (values.empty()) {
        mean = kUnset;
        return;
    }
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    if (values.size() < 2) return;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    std_error = std::sqrt(ss / static_cast<double>(values.size() - 1)) / std::sqrt(static_cast<double>(values.size()));
}

}  // namespace

ResultTable run_sweep(const SweepPlan& plan, const SweepLog& log) {
    validate(plan);
    if (!plan.eigenvalue_dump_dir.empty()) std::filesystem::create_directories(plan.eigenvalue_dump_dir);

    const SweepRunner runner(plan);
    const std::size_t R = static_cast<std::size_t>(plan.realizations);
    const std::size_t total = plan.grid.size() * R;
    std::vector<TaskOutput> slots(total);
    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;
    std::exception_ptr fatal;
    std::atomic<bool> stop{false};

    auto say = [&](const std::string& msg) {
        if (!log) return;
        const std::lock_guard lock(log_mutex);
        log(msg);
    };

    auto worker = [&] {
        for (std::size_t t = next++; t < total && !stop; t = next++) {
            const std::size_t j = t / R;
            const int r = static_cast<int>(t % R);
            try {
                slots[t] = runner.run_task(j, r);
            } catch (const SolverError& e) {
                say("task J[" + std::to_string(j) + "] r=" + std::to_string(r) + " skipped: " + e.what() +
                    " (info " + std::to_string(e.info()) + ")");
            } catch (const ValidationError& e) {
                say("task J[" + std::to_string(j) + "] r=" + std::to_string(r) + " skipped: " + e.what());
            } catch (...) {
                const std::lock_guard lock(log_mutex);
                if (!fatal) fatal = std::current_exception();
                stop = true;
            }
        }
    };

    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(plan.threads, total));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    if (fatal) std::rethrow_exception(fatal);

    ResultTable table;
    table.tasks = total;
    table.failed_tasks = static_cast<std::size_t>(std::count_if(slots.begin(), slots.end(), [](const TaskOutput& o) { return !o.ok; }));
    if (10 * table.failed_tasks > total)
        throw SweepError(std::to_string(table.failed_tasks) + " of " + std::to_string(total) +
                         " tasks failed; more than 10% of the ensemble is missing");

    const SeriesInfo series{to_string(plan.model.kind), plan.model.num_qubits(), plan.model.interaction_range(),
                            plan.base_seed, plan.units};
    for (std::size_t m = 0; m < plan.measures.size(); ++m) {
        const MeasureRequest& req = plan.measures[m];
        const std::string label = req.label();
        EigenstateMap map;
        if (req.kind == K::cmap) {
            map = {label, plan.grid, Eigen::MatrixXd::Zero(Eigen::Index{1} << plan.model.num_qubits(),
                                                           static_cast<Eigen::Index>(plan.grid.size())),
                   series};
        }
        for (std::size_t j = 0; j < plan.grid.size(); ++j) {
            std::vector<double> values;
            std::optional<Histogram> hist;
            std::size_t ok = 0;
            for (std::size_t r = 0; r < R; ++r) {
                const TaskOutput& o = slots[j * R + r];
                if (!o.ok) continue;
                ++ok;
                if (req.scalar()) values.push_back(o.scalars[m]);
                if (!o.hists[m].counts.empty()) {
                    if (hist)
                        hist->merge(o.hists[m]);
                    else
                        hist = o.hists[m];
                }
                if (req.kind == K::cmap) map.values.col(static_cast<Eigen::Index>(j)) += o.map_column;
            }
            if (req.scalar()) {
                ResultRecord rec{label, plan.grid[j], 0.0, 0.0, values.size(), series};
                sample_stats(values, rec.value, rec.std_error);
                table.records.push_back(rec);
            }
            if (hist) table.histograms.push_back({label, plan.grid[j], *hist, series});
            if (req.kind == K::cmap && ok > 0) map.values.col(static_cast<Eigen::Index>(j)) /= static_cast<double>(ok);
        }
        if (req.kind == K::cmap) table.maps.push_back(std::move(map));
    }
    return table;
}

EigenstateMap per_eigenstate_map(const SweepPlan& plan, const SweepLog& log) {
    SweepPlan map_plan = plan;
    map_plan.measures = {MeasureRequest::parse("cmap")};
    ResultTable table = run_sweep(map_plan, log);
    return std::move(table.maps.front());
}

}  // namespace chaoslab
