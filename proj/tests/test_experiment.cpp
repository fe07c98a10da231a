#include <gtest/gtest.h>

#include "test_support.hpp"

#include <map>
#include <sstream>

using namespace delaydim;

namespace {

// order -> number of vertex rows
std::map<int, int> rows_per_order(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    std::map<int, int> out;
    while (std::getline(in, line)) ++out[std::stoi(line.substr(0, line.find(',')))];
    return out;
}

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.seed = 42;
    cfg.trials = 6;
    return cfg;
}

}  // namespace

TEST(ExperimentConfig, Validation) {
    ExperimentConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    EXPECT_EQ(cfg.expected_rank(), 7u);
    cfg.steps = 99;
    EXPECT_THROW(cfg.validate(), Error);
    cfg = ExperimentConfig{};
    cfg.noise_fractions = {0.5, 1.5};
    EXPECT_THROW(cfg.validate(), Error);
    cfg = ExperimentConfig{};
    cfg.trials = 0;
    try {
        run_fig2(cfg);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidParameter);
    }
}

TEST(Fig2, NoiselessTrialsSeparateSevenValues) {
    const auto trials = run_fig2(small_config());
    ASSERT_EQ(trials.size(), 6u);
    for (const auto& tr : trials) {
        EXPECT_EQ(tr.clean_rank, 7u);
        EXPECT_GE(tr.separation_ratio, 1e6);
        EXPECT_EQ(tr.clean_singular_values.size(), 15u);
        ASSERT_EQ(tr.noisy.size(), 10u);
        for (const auto& nr : tr.noisy) {
            EXPECT_LE(nr.effective_rank, 7u);
            EXPECT_GT(nr.epsilon, 0.0);
        }
    }
}

TEST(Fig2, IndependentOfThreadCount) {
    const ExperimentConfig cfg = small_config();
    const std::string one = fig2_csv(cfg, run_fig2(cfg, 1));
    EXPECT_EQ(one, fig2_csv(cfg, run_fig2(cfg, 3)));
    EXPECT_EQ(one, fig2_csv(cfg, run_fig2(cfg, 16)));
    ExperimentConfig other = cfg;
    other.seed = 43;
    EXPECT_NE(one, fig2_csv(other, run_fig2(other, 1)));
}

TEST(Fig2, TrialsDoNotDependOnTrialCount) {
    ExperimentConfig cfg = small_config();
    const auto few = run_fig2(cfg);
    cfg.trials = 9;
    const auto more = run_fig2(cfg);
    for (std::size_t t = 0; t < few.size(); ++t)
        EXPECT_EQ(few[t].clean_singular_values, more[t].clean_singular_values);
}

TEST(Fig2, CsvLayout) {
    const ExperimentConfig cfg = small_config();
    const std::string csv = fig2_csv(cfg, run_fig2(cfg));
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header.rfind("trial,noise_fraction,sigma,epsilon,effective_rank,clean_rank,separation_ratio,s1,", 0), 0u);
    EXPECT_NE(header.find(",s15"), std::string::npos);
    int rows = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++rows;
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), std::count(header.begin(), header.end(), ','));
    }
    EXPECT_EQ(rows, 6 * 11);
}

TEST(RegionData, OrderTwo) {
    const std::string csv = emit_region_data(2, 16);
    EXPECT_EQ(csv.rfind("order,vertex_index,re,im\n", 0), 0u);
    const auto rows = rows_per_order(csv);
    EXPECT_EQ(rows.at(0), 16);  // unit circle
    EXPECT_EQ(rows.at(1), 1);
    EXPECT_EQ(rows.at(2), 2);
    EXPECT_NE(csv.find("\n2,0,1,0\n"), std::string::npos);
    EXPECT_NE(csv.find("\n2,1,-1,0\n"), std::string::npos);
}

TEST(RegionData, OrdersThreeAndFour) {
    const auto rows = rows_per_order(emit_region_data(4));
    EXPECT_EQ(rows.at(0), 256);
    EXPECT_EQ(rows.at(3), 4);
    EXPECT_EQ(rows.at(4), 6);
    EXPECT_THROW(emit_region_data(0), Error);
}

TEST(SeparationDemo, DampedRabi) {
    const SeparationReport rep = run_separation_demo();
    EXPECT_EQ(rep.realization_size, 2u);
    EXPECT_EQ(rep.dilation_dim, 4);
    EXPECT_EQ(rep.direct_quantum_dim, 2);
    ASSERT_TRUE(rep.min_classical_dimension);
    EXPECT_GE(*rep.min_classical_dimension, 3);
    EXPECT_LT(rep.dilation_residual, 1e-8);
    EXPECT_LT(rep.direct_model_residual, 1e-12);
}
