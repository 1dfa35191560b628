#include "chaoslab/presets.hpp"

#include <functional>
#include <map>

namespace chaoslab {

namespace {

struct Preset {
    std::string summary;
    int full_realizations;
    int desk_realizations;
    std::function<void(ExperimentConfig&)> fill;
};

std::vector<MeasureRequest> measures(std::initializer_list<const char*> labels) {
    std::vector<MeasureRequest> out;
    for (const char* l : labels) out.push_back(MeasureRequest::parse(l));
    return out;
}

void torus(ExperimentConfig& c, LogGrid grid) {
    c.kind = ModelKind::torus2d;
    c.units = CouplingUnits::jl_over_delta;
    c.log_grid = grid;
}

void chain(ExperimentConfig& c, std::vector<int> lengths, std::vector<RangeSpec> ranges) {
    c.kind = ModelKind::chain1d;
    c.units = CouplingUnits::j_over_jc;
    c.lengths = std::move(lengths);
    c.ranges = std::move(ranges);
}

const RangeSpec kAll{RangeSpec::Kind::all, 0};
const RangeSpec kHalf{RangeSpec::Kind::half, 0};
RangeSpec fixed(int lc) { return {RangeSpec::Kind::value, lc}; }

const std::map<std::string, Preset>& presets() {
    static const std::map<std::string, Preset> table = {
        {"fig-2d-gamma",
         {"3x3 torus: level statistics gamma and P(s) of the band at -Delta0 vs JL/delta", 2000, 100,
          [](ExperimentConfig& c) {
              torus(c, {0.1, 30.0, 16});
              c.measures = measures({"gamma", "pds"});
          }}},
        {"fig-2d-pn",
         {"3x3 torus: participation number of the central eigenfunction vs JL/delta", 2000, 100,
          [](ExperimentConfig& c) {
              torus(c, {0.1, 30.0, 16});
              c.measures = measures({"pn:central"});
          }}},
        {"fig-2d-c12",
         {"3x3 torus: C_1 and C_2 of the central eigenfunction vs JL/delta", 2000, 100,
          [](ExperimentConfig& c) {
              torus(c, {0.05, 50.0, 19});
              c.measures = measures({"C_1:central", "C_2:central"});
          }}},
        {"fig-2d-cmap",
         {"3x3 torus: C_1 for every eigenstate, plus the central third of bands n_up = 0..4", 200, 20,
          [](ExperimentConfig& c) {
              torus(c, {0.05, 50.0, 19});
              c.measures = measures({"cmap", "C_1:third@nup=4", "C_1:third@nup=3", "C_1:third@nup=2",
                                     "C_1:third@nup=1", "C_1:third@nup=0"});
          }}},
        {"fig-1d-pds",
         {"AA chain L = 12: P(s) and gamma of the central band at J/J_c = 0.35 and 15", 10, 3,
          [](ExperimentConfig& c) {
              chain(c, {12}, {kAll});
              c.values = {0.35, 15.0};
              c.measures = measures({"pds", "gamma"});
          }}},
        {"fig-1d-pn",
         {"AA chain L = 12: band-averaged participation number vs J/J_c", 10, 2,
          [](ExperimentConfig& c) {
              chain(c, {12}, {kAll});
              c.log_grid = LogGrid{0.01, 10000.0, 13};
              c.measures = measures({"pn"});
          }}},
        {"fig-c-distance",
         {"chain L = 10, l_c = 5: C_n for n = 1..5 vs J/J_c", 30, 10,
          [](ExperimentConfig& c) {
              chain(c, {10}, {fixed(5)});
              c.log_grid = LogGrid{0.01, 100.0, 9};
              c.measures = measures({"C_1", "C_2", "C_3", "C_4", "C_5"});
          }}},
        {"fig-c-range",
         {"chain L = 10: C_3 for l_c = 1, 2, 3 vs J/J_c", 30, 10,
          [](ExperimentConfig& c) {
              chain(c, {10}, {fixed(1), fixed(2), fixed(3)});
              c.log_grid = LogGrid{0.01, 100.0, 9};
              c.measures = measures({"C_3"});
          }}},
        {"fig-c-size",
         {"AA chain L = 6, 8, 10, 12: all-pairs concurrence C_a vs J/J_c", 30, 5,
          [](ExperimentConfig& c) {
              chain(c, {6, 8, 10, 12}, {kAll});
              c.log_grid = LogGrid{0.01, 100.0, 9};
              c.measures = measures({"C_a"});
          }}},
        {"fig-clambda",
         {"AA chain L = 12: distribution and mean of c_lambda vs J/J_c", 10, 2,
          [](ExperimentConfig& c) {
              chain(c, {12}, {kAll});
              c.log_grid = LogGrid{0.01, 100.0, 9};
              c.measures = measures({"clambda"});
          }}},
        {"fig-s1",
         {"AA chain L = 6, 8, 10, 12: single-qubit entropy S_1 vs J/J_c", 30, 5,
          [](ExperimentConfig& c) {
              chain(c, {6, 8, 10, 12}, {kAll});
              c.log_grid = LogGrid{0.01, 100.0, 9};
              c.measures = measures({"S_1"});
          }}},
        {"fig-sn",
         {"AA chain L = 12: left-block entropies S_n, n = 1..5, vs J/J_c", 10, 2,
          [](ExperimentConfig& c) {
              chain(c, {12}, {kAll});
              c.log_grid = LogGrid{0.01, 100.0, 9};
              c.measures = measures({"S_block_1", "S_block_2", "S_block_3", "S_block_4", "S_block_5"});
          }}},
        {"fig-shalf",
         {"AA chain L = 6, 8, 10, 12: half-chain entropy S_{L/2} vs J/J_c", 10, 3,
          [](ExperimentConfig& c) {
              chain(c, {6, 8, 10, 12}, {kAll});
              c.log_grid = LogGrid{0.01, 100.0, 9};
              c.measures = measures({"S_half"});
          }}},
        {"fig-weakchaos",
         {"chain L = 10: NN model vs l_c = L/2, gamma, C_1 and PN vs J/J_c", 30, 10,
          [](ExperimentConfig& c) {
              chain(c, {10}, {fixed(1), kHalf});
              c.log_grid = LogGrid{0.01, 100.0, 9};
              c.measures = measures({"gamma", "C_1", "pn"});
          }}},
    };
    return table;
}

}  // namespace

const std::vector<PresetInfo>& preset_catalog() {
    static const std::vector<PresetInfo> catalog = [] {
        std::vector<PresetInfo> out;
        for (const auto& [name, p] : presets()) out.push_back({name, p.summary});
        return out;
    }();
    return catalog;
}

ExperimentConfig preset(const std::string& name, bool full) {
    const auto it = presets().find(name);
    if (it == presets().end()) {
        std::string known;
        for (const auto& [n, p] : presets()) known += (known.empty() ? "" : ", ") + n;
        throw ArgumentError("unknown preset '" + name + "'; available: " + known);
    }
    ExperimentConfig c;
    it->second.fill(c);
    c.realizations = full ? it->second.full_realizations : it->second.desk_realizations;
    c.name = name;
    return c;
}

}  // namespace chaoslab
