#include "chaoslab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace chaoslab {

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : ArgumentError([&] {
          std::ostringstream msg;
          msg << issues.size() << " configuration error" << (issues.size() == 1 ? "" : "s");
          for (const ConfigIssue& i : issues) {
              msg << "\n  ";
              if (i.line > 0) msg << "line " << i.line << ": ";
              msg << i.message;
          }
          return msg.str();
      }()),
      issues_(std::move(issues)) {}

std::string RangeSpec::to_string() const {
    switch (kind) {
        case Kind::all: return "all";
        case Kind::half: return "half";
        case Kind::value: return std::to_string(value);
    }
    return "all";
}

std::vector<double> ExperimentConfig::grid() const {
    if (!log_grid) return values;
    const LogGrid& g = *log_grid;
    std::vector<double> out(static_cast<std::size_t>(std::max(g.points, 0)));
    if (g.points == 1) out[0] = g.from;
    const double a = std::log10(g.from), b = std::log10(g.to);
    for (int i = 0; i < g.points && g.points > 1; ++i) out[i] = std::pow(10.0, a + (b - a) * i / (g.points - 1));
    if (g.points > 1) {
        out.front() = g.from;
        out.back() = g.to;
    }
    return out;
}

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string_view rest = s;
    while (true) {
        const auto comma = rest.find(',');
        out.push_back(trim(rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
    }
    return out;
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

template <class T>
std::string join(const std::vector<T>& items, auto&& fmt) {
    std::string s;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) s += ", ";
        s += fmt(items[i]);
    }
    return s;
}

struct Entry {
    std::string value;
    int line = 0;
};

using Section = std::map<std::string, Entry>;

class Reader {
  public:
    explicit Reader(std::vector<ConfigIssue>& issues) : issues_(issues) {}

    void error(int line, std::string message) { issues_.push_back({line, std::move(message)}); }

    template <class T>
    bool number(const Entry& e, const std::string& key, T& out) {
        const std::string& v = e.value;
        T parsed{};
        const auto res = std::from_chars(v.data(), v.data() + v.size(), parsed);
        if (v.empty() || res.ec != std::errc() || res.ptr != v.data() + v.size()) {
            error(e.line, "'" + key + "': expected a number, got '" + v + "'");
            return false;
        }
        if constexpr (std::is_floating_point_v<T>) {
            if (!std::isfinite(parsed)) {
                error(e.line, "'" + key + "': value must be finite");
                return false;
            }
        }
        out = parsed;
        return true;
    }

    template <class T>
    bool list(const Entry& e, const std::string& key, std::vector<T>& out) {
        std::vector<T> items;
        for (const std::string& item : split_list(e.value)) {
            T x{};
            if (!number(Entry{item, e.line}, key, x)) return false;
            items.push_back(x);
        }
        out = std::move(items);
        return true;
    }

    bool boolean(const Entry& e, const std::string& key, bool& out) {
        if (e.value == "true" || e.value == "yes" || e.value == "1") {
            out = true;
        } else if (e.value == "false" || e.value == "no" || e.value == "0") {
            out = false;
        } else {
            error(e.line, "'" + key + "': expected true or false, got '" + e.value + "'");
            return false;
        }
        return true;
    }

    // Calls f with the parsed enum, or records the ArgumentError message.
    template <class F>
    void guarded(const Entry& e, F&& f) {
        try {
            f();
        } catch (const ArgumentError& ex) {
            error(e.line, ex.what());
        }
    }

  private:
    std::vector<ConfigIssue>& issues_;
};

const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> keys = {
        {"model", {"kind", "lx", "ly", "delta0", "delta", "length", "gradient", "rabi", "range", "band"}},
        {"sweep", {"units", "values", "log_from", "log_to", "points"}},
        {"ensemble", {"realizations", "base_seed", "threads"}},
        {"measures", {"list", "band_rule", "unfolding", "unfolding_degree", "pds_bin_width", "clambda_bin_width"}},
        {"output", {"directory", "name", "formats", "dump_eigenvalues"}},
    };
    return keys;
}

const std::set<std::string> kTorusKeys = {"lx", "ly", "delta0", "delta"};
const std::set<std::string> kChainKeys = {"length", "gradient", "rabi", "range"};

// Line of a key, for constraint messages.
struct LineMap {
    std::map<std::string, int> lines;
    int operator()(const std::string& key) const {
        const auto it = lines.find(key);
        return it == lines.end() ? 0 : it->second;
    }
};

void check_config(const ExperimentConfig& c, const LineMap& at, std::vector<ConfigIssue>& issues) {
    auto fail = [&](const std::string& key, std::string message) { issues.push_back({at(key), std::move(message)}); };
    std::vector<int> sizes;
    if (c.kind == ModelKind::torus2d) {
        if (c.lx < 1 || c.ly < 1) fail("model.lx", "torus dimensions must be positive");
        else sizes.push_back(c.lx * c.ly);
        if (!(c.delta0 > 0.0)) fail("model.delta0", "delta0 must be positive");
        if (!(c.delta >= 0.0)) fail("model.delta", "delta must be non-negative");
        if (c.units == CouplingUnits::j_over_jc) fail("sweep.units", "J_over_Jc units apply to the 1d model only");
    } else {
        if (c.lengths.empty()) fail("model.length", "at least one chain length is required");
        if (c.ranges.empty()) fail("model.range", "at least one interaction range is required");
        if (!(c.gradient > 0.0)) fail("model.gradient", "gradient must be positive");
        for (int L : c.lengths) {
            sizes.push_back(L);
            if (!(c.rabi > c.gradient * L))
                fail("model.rabi", "rabi = " + format_double(c.rabi) + " must exceed the largest detuning gradient * L = " +
                                       format_double(c.gradient * L));
            for (const RangeSpec& r : c.ranges) {
                const int lc = r.resolve(L);
                if (lc < 1 || lc > L - 1)
                    fail("model.range", "interaction range l_c = " + std::to_string(lc) + " outside [1, " +
                                            std::to_string(L - 1) + "] for L = " + std::to_string(L));
            }
        }
        if (c.units == CouplingUnits::jl_over_delta) fail("sweep.units", "JL_over_delta units apply to the 2d model only");
    }
    for (int L : sizes) {
        if (L < 2 || L > kMaxQubits)
            fail(c.kind == ModelKind::torus2d ? "model.lx" : "model.length",
                 "number of qubits " + std::to_string(L) + " outside [2, " + std::to_string(kMaxQubits) + "]");
        if (c.band && (*c.band < 0 || *c.band > L))
            fail("model.band", "band n_up = " + std::to_string(*c.band) + " outside [0, " + std::to_string(L) + "]");
    }
    if (c.log_grid && !c.values.empty()) fail("sweep.values", "give either values or log_from/log_to/points, not both");
    if (!c.log_grid && c.values.empty()) fail("sweep.values", "the sweep needs values or log_from/log_to/points");
    if (c.log_grid) {
        if (!(c.log_grid->from > 0.0) || !(c.log_grid->to > c.log_grid->from))
            fail("sweep.log_from", "log grid needs 0 < log_from < log_to");
        if (c.log_grid->points < 2) fail("sweep.points", "log grid needs at least 2 points");
    }
    if (c.realizations < 1) fail("ensemble.realizations", "realizations must be at least 1");
    if (c.threads < 1) fail("ensemble.threads", "threads must be at least 1");
    if (c.measures.empty()) fail("measures.list", "no measures selected; list at least one, e.g. 'list = gamma, pn'");
    if (c.unfolding_degree < 1) fail("measures.unfolding_degree", "unfolding degree must be at least 1");
    if (!(c.pds_bin_width > 0.0)) fail("measures.pds_bin_width", "bin width must be positive");
    if (!(c.clambda_bin_width > 0.0)) fail("measures.clambda_bin_width", "bin width must be positive");
    for (const std::string& f : c.formats)
        if (f != "csv" && f != "json") fail("output.formats", "unknown output format '" + f + "' (expected csv, json)");
    if (c.formats.empty()) fail("output.formats", "at least one output format is required");
    if (c.name.empty() || c.name.find('/') != std::string::npos) fail("output.name", "output name must be a plain file stem");
    if (c.directory.empty()) fail("output.directory", "output directory must not be empty");

    if (!issues.empty()) return;
    // Measure-level checks need concrete plans.
    for (const SweepPlan& plan : to_plans(c)) {
        try {
            validate(plan);
        } catch (const std::exception& e) {
            fail("measures.list", e.what());
        }
    }
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    std::vector<ConfigIssue> issues;
    Reader rd(issues);
    std::map<std::string, Section> sections;
    LineMap at;

    std::istringstream in(text);
    std::string raw;
    std::string current;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(std::string_view(raw).substr(0, raw.find('#')));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                rd.error(line_no, "malformed section header '" + line + "'");
                current.clear();
                continue;
            }
            current = trim(std::string_view(line).substr(1, line.size() - 2));
            if (!known_keys().contains(current)) {
                rd.error(line_no, "unknown section [" + current + "]");
                current = "?";
            } else if (sections.contains(current)) {
                rd.error(line_no, "section [" + current + "] appears twice");
            }
            sections[current];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            rd.error(line_no, "expected 'key = value', got '" + line + "'");
            continue;
        }
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (current.empty()) {
            rd.error(line_no, "key '" + key + "' appears before any section");
            continue;
        }
        if (current == "?") continue;
        const bool scope_key = current == "measures" && key.starts_with("scope.");
        if (!scope_key && !known_keys().at(current).contains(key)) {
            rd.error(line_no, "unknown key '" + key + "' in section [" + current + "]");
            continue;
        }
        if (sections[current].contains(key)) {
            rd.error(line_no, "duplicate key '" + key + "' in section [" + current + "]");
            continue;
        }
        sections[current][key] = {value, line_no};
        at.lines[current + "." + key] = line_no;
    }

    ExperimentConfig c;
    auto find = [&](const std::string& sec, const std::string& key) -> const Entry* {
        const auto s = sections.find(sec);
        if (s == sections.end()) return nullptr;
        const auto e = s->second.find(key);
        return e == s->second.end() ? nullptr : &e->second;
    };

    // [model]
    if (const Entry* e = find("model", "kind")) rd.guarded(*e, [&] { c.kind = parse_model_kind(e->value); });
    else rd.error(0, "[model] kind is required (2d or 1d)");
    for (const auto& [key, entry] : sections["model"]) {
        const bool wrong = c.kind == ModelKind::torus2d ? kChainKeys.contains(key) : kTorusKeys.contains(key);
        if (wrong) rd.error(entry.line, "key '" + key + "' does not apply to the " + to_string(c.kind) + " model");
    }
    if (const Entry* e = find("model", "lx")) rd.number(*e, "lx", c.lx);
    if (const Entry* e = find("model", "ly")) rd.number(*e, "ly", c.ly);
    if (const Entry* e = find("model", "delta0")) rd.number(*e, "delta0", c.delta0);
    if (const Entry* e = find("model", "delta")) rd.number(*e, "delta", c.delta);
    if (const Entry* e = find("model", "length")) rd.list(*e, "length", c.lengths);
    if (const Entry* e = find("model", "gradient")) rd.number(*e, "gradient", c.gradient);
    if (const Entry* e = find("model", "rabi")) rd.number(*e, "rabi", c.rabi);
    if (const Entry* e = find("model", "band")) {
        int b = 0;
        if (rd.number(*e, "band", b)) c.band = b;
    }
    if (const Entry* e = find("model", "range")) {
        std::vector<RangeSpec> ranges;
        bool ok = true;
        for (const std::string& item : split_list(e->value)) {
            if (item == "all") ranges.push_back({RangeSpec::Kind::all, 0});
            else if (item == "half") ranges.push_back({RangeSpec::Kind::half, 0});
            else {
                int v = 0;
                ok = rd.number(Entry{item, e->line}, "range", v) && ok;
                ranges.push_back({RangeSpec::Kind::value, v});
            }
        }
        if (ok) c.ranges = std::move(ranges);
    }

    // [sweep]
    if (const Entry* e = find("sweep", "units")) rd.guarded(*e, [&] { c.units = parse_units(e->value); });
    if (const Entry* e = find("sweep", "values")) rd.list(*e, "values", c.values);
    const Entry* from = find("sweep", "log_from");
    const Entry* to = find("sweep", "log_to");
    const Entry* points = find("sweep", "points");
    if (from || to || points) {
        if (!(from && to && points)) {
            rd.error((from ? from : to ? to : points)->line, "a log grid needs log_from, log_to and points together");
        } else {
            LogGrid g;
            const bool ok = rd.number(*from, "log_from", g.from) & rd.number(*to, "log_to", g.to) &
                            rd.number(*points, "points", g.points);
            if (ok) c.log_grid = g;
        }
    }

    // [ensemble]
    c.realizations = c.kind == ModelKind::torus2d ? kDefaultRealizations2D : kDefaultRealizations1D;
    if (const Entry* e = find("ensemble", "realizations")) rd.number(*e, "realizations", c.realizations);
    if (const Entry* e = find("ensemble", "base_seed")) rd.number(*e, "base_seed", c.base_seed);
    if (const Entry* e = find("ensemble", "threads")) rd.number(*e, "threads", c.threads);

    // [measures]
    if (const Entry* e = find("measures", "list")) {
        for (const std::string& item : split_list(e->value)) {
            if (item.empty()) continue;
            rd.guarded(*e, [&] { c.measures.push_back(MeasureRequest::parse(item)); });
        }
    }
    for (const auto& [key, entry] : sections["measures"]) {
        if (!key.starts_with("scope.")) continue;
        const std::string target = key.substr(6);
        rd.guarded(entry, [&] {
            const Scope scope = parse_scope(entry.value);
            bool matched = false;
            for (MeasureRequest& m : c.measures) {
                if (m.name() != target) continue;
                MeasureRequest probe = m;
                probe.scope = scope;
                MeasureRequest::parse(probe.label());  // rejects scopes the measure does not support
                m.scope = scope;
                matched = true;
            }
            if (!matched) throw ArgumentError("scope given for '" + target + "', which is not in the measure list");
        });
    }
    if (const Entry* e = find("measures", "band_rule")) rd.guarded(*e, [&] { c.band_rule = parse_band_rule(e->value); });
    if (const Entry* e = find("measures", "unfolding")) rd.guarded(*e, [&] { c.unfolding = parse_unfolding(e->value); });
    if (const Entry* e = find("measures", "unfolding_degree")) rd.number(*e, "unfolding_degree", c.unfolding_degree);
    if (const Entry* e = find("measures", "pds_bin_width")) rd.number(*e, "pds_bin_width", c.pds_bin_width);
    if (const Entry* e = find("measures", "clambda_bin_width")) rd.number(*e, "clambda_bin_width", c.clambda_bin_width);

    // [output]
    if (const Entry* e = find("output", "directory")) c.directory = e->value;
    if (const Entry* e = find("output", "name")) c.name = e->value;
    if (const Entry* e = find("output", "formats")) c.formats = split_list(e->value);
    if (const Entry* e = find("output", "dump_eigenvalues")) rd.boolean(*e, "dump_eigenvalues", c.dump_eigenvalues);

    if (issues.empty()) check_config(c, at, issues);
    if (!issues.empty()) {
        std::stable_sort(issues.begin(), issues.end(), [](const ConfigIssue& a, const ConfigIssue& b) { return a.line < b.line; });
        throw ConfigError(std::move(issues));
    }
    return c;
}

std::vector<ConfigIssue> check(const ExperimentConfig& config) {
    std::vector<ConfigIssue> issues;
    check_config(config, LineMap{}, issues);
    return issues;
}

std::string serialize(const ExperimentConfig& c) {
    std::ostringstream out;
    out << "[model]\n";
    out << "kind = " << to_string(c.kind) << "\n";
    if (c.kind == ModelKind::torus2d) {
        out << "lx = " << c.lx << "\nly = " << c.ly << "\n";
        out << "delta0 = " << format_double(c.delta0) << "\ndelta = " << format_double(c.delta) << "\n";
    } else {
        out << "length = " << join(c.lengths, [](int L) { return std::to_string(L); }) << "\n";
        out << "gradient = " << format_double(c.gradient) << "\nrabi = " << format_double(c.rabi) << "\n";
        out << "range = " << join(c.ranges, [](const RangeSpec& r) { return r.to_string(); }) << "\n";
    }
    if (c.band) out << "band = " << *c.band << "\n";

    out << "\n[sweep]\n";
    out << "units = " << to_string(c.units) << "\n";
    if (c.log_grid) {
        out << "log_from = " << format_double(c.log_grid->from) << "\nlog_to = " << format_double(c.log_grid->to)
            << "\npoints = " << c.log_grid->points << "\n";
    }
    if (!c.values.empty()) out << "values = " << join(c.values, format_double) << "\n";

    out << "\n[ensemble]\n";
    out << "realizations = " << c.realizations << "\nbase_seed = " << c.base_seed << "\nthreads = " << c.threads << "\n";

    out << "\n[measures]\n";
    out << "list = " << join(c.measures, [](const MeasureRequest& m) { return m.label(); }) << "\n";
    out << "band_rule = " << to_string(c.band_rule) << "\n";
    out << "unfolding = " << to_string(c.unfolding) << "\nunfolding_degree = " << c.unfolding_degree << "\n";
    out << "pds_bin_width = " << format_double(c.pds_bin_width) << "\n";
    out << "clambda_bin_width = " << format_double(c.clambda_bin_width) << "\n";

    out << "\n[output]\n";
    out << "directory = " << c.directory << "\nname = " << c.name << "\n";
    out << "formats = " << join(c.formats, [](const std::string& f) { return f; }) << "\n";
    out << "dump_eigenvalues = " << (c.dump_eigenvalues ? "true" : "false") << "\n";
    return out.str();
}

std::vector<SweepPlan> to_plans(const ExperimentConfig& c) {
    SweepPlan base;
    base.grid = c.grid();
    base.units = c.units;
    base.realizations = c.realizations;
    base.base_seed = c.base_seed;
    base.measures = c.measures;
    base.band_rule = c.band_rule;
    base.unfolding = c.unfolding;
    base.unfolding_degree = c.unfolding_degree;
    base.threads = c.threads;
    base.pds_bin_width = c.pds_bin_width;
    base.clambda_bin_width = c.clambda_bin_width;
    base.model.kind = c.kind;
    base.model.band = c.band;

    std::vector<SweepPlan> plans;
    if (c.kind == ModelKind::torus2d) {
        base.model.torus = ModelSpec2D{c.lx, c.ly, c.delta0, c.delta, 0.0};
        plans.push_back(base);
    } else {
        for (int L : c.lengths) {
            for (const RangeSpec& r : c.ranges) {
                SweepPlan p = base;
                p.model.chain = ModelSpec1D{L, c.gradient, c.rabi, 0.0, r.resolve(L)};
                plans.push_back(std::move(p));
            }
        }
    }
    if (c.dump_eigenvalues) {
        for (SweepPlan& p : plans) {
            p.eigenvalue_dump_dir = c.directory + "/eigenvalues/" + c.name + "_L" + std::to_string(p.model.num_qubits()) +
                                    "_lc" + std::to_string(p.model.interaction_range());
        }
    }
    return plans;
}

}  // namespace chaoslab
