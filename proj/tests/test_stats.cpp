#include <gtest/gtest.h>

#include "fldr/stats.hpp"

namespace fldr {
namespace {

TEST(ChiSquare, SurvivalMatchesTables) {
  EXPECT_NEAR(chi_square_survival(3.841, 1), 0.05, 2e-4);
  EXPECT_NEAR(chi_square_survival(21.67, 9), 0.01, 2e-4);
  EXPECT_NEAR(chi_square_survival(6.635, 1), 0.01, 1e-4);
  EXPECT_DOUBLE_EQ(chi_square_survival(0, 4), 1.0);
  // df = 2: survival is exp(-x/2).
  EXPECT_NEAR(chi_square_survival(5.0, 2), std::exp(-2.5), 1e-14);
  EXPECT_THROW(chi_square_survival(1.0, 0), std::domain_error);
}

TEST(ChiSquare, SurvivalIsMonotone) {
  for (unsigned df : {1u, 5u, 99u}) {
    double prev = 1.0;
    for (double x = 0.5; x < 300; x *= 1.3) {
      const double q = chi_square_survival(x, df);
      ASSERT_LE(q, prev);
      prev = q;
    }
  }
}

TEST(ChiSquare, ProportionalCountsGiveZero) {
  SampleReport r;
  r.counts = {300, 700};
  r.total = 1000;
  const GofResult g = chi_square_gof(r, WeightedDistribution({3, 7}));
  EXPECT_EQ(g.statistic, 0);
  EXPECT_EQ(g.df, 1u);
  EXPECT_EQ(g.p_value, 1);
}

TEST(ChiSquare, HandComputedStatistic) {
  SampleReport r;
  r.counts = {40, 60};
  r.total = 100;
  const GofResult g = chi_square_gof(r, WeightedDistribution({1, 1}));
  EXPECT_NEAR(g.statistic, 4.0, 1e-12);
  EXPECT_NEAR(g.p_value, 0.0455003, 1e-6);
}

TEST(ChiSquare, RejectsSparseOrMismatchedReports) {
  SampleReport r;
  r.counts = {2, 8};
  r.total = 10;
  EXPECT_THROW(chi_square_gof(r, WeightedDistribution({1, 4})), std::domain_error);
  r.counts = {5, 5, 5};
  EXPECT_THROW(chi_square_gof(r, WeightedDistribution({1, 1})), std::domain_error);
}

TEST(ChiSquare, VotingNeedsTwoRejections) {
  const GofResult pass{1.0, 1, 0.3};
  const GofResult fail{30.0, 1, 1e-6};
  EXPECT_TRUE(gof_vote_passes(pass, pass, 1e-3));
  EXPECT_TRUE(gof_vote_passes(fail, pass, 1e-3));
  EXPECT_TRUE(gof_vote_passes(pass, fail, 1e-3));
  EXPECT_FALSE(gof_vote_passes(fail, fail, 1e-3));
}

TEST(RunSampler, FairCoinAccounting) {
  const Sampler s = Sampler::build(SamplerKind::kKy, WeightedDistribution({1, 1}));
  BitSource src(5);
  const SampleReport r = run_sampler(s, 64, src);
  EXPECT_EQ(r.total, 64u);
  EXPECT_EQ(r.bits_consumed, 64u);
  EXPECT_EQ(r.prng_calls, 1u);
  EXPECT_EQ(r.counts[0] + r.counts[1], 64u);
}

TEST(RunSampler, KyBitsMatchExpectation) {
  const WeightedDistribution d({3, 7});
  const Sampler s = Sampler::build(SamplerKind::kKy, d);
  BitSource src(6);
  const SampleReport r = run_sampler(s, 1'000'000, src);
  const double expected = static_cast<double>(to_long_double(expected_bits(ky_construct(d))));
  EXPECT_NEAR(r.bits_per_sample(), expected, 0.05);
}

TEST(RunSampler, FldrBitsInsideBand) {
  const WeightedDistribution d({1, 4});
  const Sampler s = Sampler::build(SamplerKind::kFldr, d);
  BitSource src(9);
  const SampleReport r = run_sampler(s, 1'000'000, src);
  EXPECT_GE(r.bits_per_sample(), entropy(d));
  EXPECT_LT(r.bits_per_sample(), entropy(d) + 6);
  EXPECT_NEAR(r.bits_per_sample(), 2.8, 0.05);
}

TEST(SampleReport, MergeAddsEverything) {
  SampleReport a{{1, 2}, 3, 10, 1, 5};
  const SampleReport b{{4, 5}, 9, 20, 2, 7};
  a.merge(b);
  EXPECT_EQ(a.counts, (std::vector<std::uint64_t>{5, 7}));
  EXPECT_EQ(a.total, 12u);
  EXPECT_EQ(a.bits_consumed, 30u);
  EXPECT_EQ(a.prng_calls, 3u);
  EXPECT_EQ(a.elapsed_ns, 12u);
  EXPECT_THROW(a.merge(SampleReport{{1}, 1, 0, 0, 0}), std::invalid_argument);
}

TEST(GapReport, Examples) {
  const GapReportRow coin = entropy_gap_report(WeightedDistribution({1, 1}));
  EXPECT_EQ(coin.entropy, 1);
  EXPECT_EQ(coin.ky_gap, 0);
  EXPECT_EQ(coin.fldr.gap, 0);

  const GapReportRow g = entropy_gap_report(WeightedDistribution({1, 4}));
  EXPECT_NEAR(static_cast<double>(g.fldr.gap), 2.0780719051126377, 1e-12);

  const GapReportRow h = entropy_gap_report(WeightedDistribution({3, 7}));
  EXPECT_NEAR(static_cast<double>(h.ky_gap),
              static_cast<double>(to_long_double(h.ky_expected_bits) - h.entropy), 1e-15);
  EXPECT_GE(h.ky_gap, 0);
  EXPECT_LT(h.ky_gap, 2);
}

TEST(ReportCsv, HeaderAndRow) {
  EXPECT_EQ(report_csv_header(), "sampler,n,m,H,entropy_bits_per_sample,prng_calls,elapsed_ns,chi2,p_value");
  const WeightedDistribution d({1, 1});
  const SampleReport r{{5, 5}, 10, 10, 1, 100};
  const std::string row = report_csv_row("ky", d, r, nullptr);
  EXPECT_EQ(row.rfind("ky,2,2,1,1,1,100,", 0), 0u) << row;
}

}  // namespace
}  // namespace fldr
