#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "chaoslab/errors.hpp"
#include "chaoslab/output.hpp"

using namespace chaoslab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

ExperimentConfig small_config(const std::string& dir) {
    return parse_config("[model]\nkind = 1d\nlength = 4, 6\n[sweep]\nunits = J_over_Jc\nvalues = 0.5, 5, 50\n"
                        "[ensemble]\nrealizations = 2\nbase_seed = 77\n[measures]\nlist = gamma, pn, C_1, pds, clambda\n"
                        "[output]\ndirectory = " + dir + "\nname = small\n");
}

ResultTable run_all(const ExperimentConfig& c) {
    ResultTable t;
    for (const auto& plan : to_plans(c)) t.append(run_sweep(plan));
    return t;
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Output, CsvShape) {
    const auto c = small_config(::testing::TempDir() + "chaoslab_shape");
    const ResultTable t = run_all(c);
    const std::string csv = results_csv(t);
    EXPECT_EQ(csv.substr(0, csv.find('\r')), "measure,J,J_units,value,stderr,n_samples,L,model,l_c,seed");
    // 4 scalar measures x 3 couplings x 2 series, plus the header.
    EXPECT_EQ(lines(csv), 1u + 4 * 3 * 2);
    EXPECT_NE(csv.find("pn,50,J_over_Jc,"), std::string::npos);
    const std::string hist = histograms_csv(t);
    EXPECT_EQ(lines(hist), 1u + (40 + 30) * 3 * 2);
}

TEST(Output, EmitIsIdempotentApartFromTiming) {
    const std::string dir = ::testing::TempDir() + "chaoslab_emit";
    fs::remove_all(dir);
    const auto c = small_config(dir);
    const auto first = emit(c, run_all(c), RunTiming{"2026-01-01T00:00:00Z", 1.5});
    ASSERT_EQ(first.size(), 3u);
    std::vector<std::string> before;
    for (const auto& p : first) before.push_back(slurp(p));
    const auto second = emit(c, run_all(c), RunTiming{"2026-01-02T00:00:00Z", 2.5});
    for (std::size_t k = 0; k < second.size(); ++k) {
        const std::string after = slurp(second[k]);
        if (second[k].extension() == ".json") {
            auto a = nlohmann::json::parse(before[k]), b = nlohmann::json::parse(after);
            EXPECT_NE(a["run_timing"], b["run_timing"]);
            a.erase("run_timing");
            b.erase("run_timing");
            EXPECT_EQ(a, b);
            EXPECT_EQ(a["base_seed"], 77);
            EXPECT_EQ(parse_config(a["config"].get<std::string>()), c);
        } else {
            EXPECT_EQ(before[k], after) << second[k];
        }
    }
}

TEST(Output, MapCsvIsLongForm) {
    const std::string dir = ::testing::TempDir() + "chaoslab_map";
    auto c = parse_config("[model]\nkind = 2d\nlx = 2\nly = 2\n[sweep]\nvalues = 0, 0.1\n[ensemble]\nrealizations = 1\n"
                          "[measures]\nlist = cmap\n[output]\ndirectory = " + dir + "\nformats = csv\n");
    const ResultTable t = run_all(c);
    const std::string csv = maps_csv(t);
    EXPECT_EQ(csv.substr(0, csv.find(',')), "state_index");
    EXPECT_EQ(lines(csv), 1u + 16 * 2);
    const auto files = emit(c, t, RunTiming{});
    EXPECT_EQ(files.size(), 2u);  // scalar csv (empty body) and map
}

TEST(Output, Errors) {
    auto c = small_config(::testing::TempDir() + "chaoslab_err");
    EXPECT_THROW(emit(c, ResultTable{}, RunTiming{}), ArgumentError);
    const std::string file = ::testing::TempDir() + "chaoslab_blocker";
    std::ofstream(file) << "x";
    c.directory = file + "/sub";
    EXPECT_THROW(emit(c, run_all(small_config(c.directory)), RunTiming{}), OutputError);
}
