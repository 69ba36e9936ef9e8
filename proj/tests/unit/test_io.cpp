#include <gtest/gtest.h>

#include <sstream>

#include "polyentropy/estimators.hpp"
#include "polyentropy/io.hpp"

using namespace polyentropy;

TEST(HistogramFile, HeaderOptionalAndGapsFilled) {
  std::istringstream a("symbol,count\n0,3\n2,5\n");
  EXPECT_EQ(read_histogram(a), Histogram({3, 0, 5}));
  std::istringstream b("1,4\n\n0,1\n");
  EXPECT_EQ(read_histogram(b), Histogram({1, 4}));
  std::istringstream c("0,1\n");
  EXPECT_EQ(read_histogram(c, 4), Histogram({1, 0, 0, 0}));
}

TEST(HistogramFile, Errors) {
  std::istringstream dup("0,1\n0,2\n");
  EXPECT_THROW(read_histogram(dup), std::runtime_error);
  std::istringstream neg("0,-1\n");
  EXPECT_THROW(read_histogram(neg), std::runtime_error);
  std::istringstream junk("0,1x\n");
  EXPECT_THROW(read_histogram(junk), std::runtime_error);
  std::istringstream wide("5,1\n");
  EXPECT_THROW(read_histogram(wide, 3), std::runtime_error);
  std::istringstream late("0,1\nsymbol,count\n");
  EXPECT_THROW(read_histogram(late), std::runtime_error);
  EXPECT_THROW(read_histogram_file("/nonexistent/h.csv"), std::runtime_error);
}

TEST(HistogramFile, RoundTrip) {
  const Histogram h({0, 7, 1, 123456789012345});
  std::stringstream s;
  write_histogram(s, h);
  EXPECT_EQ(read_histogram(s), h);
}

TEST(DistributionFile, RoundTripExact) {
  const Distribution d({0.1, 0.2, 0.7});
  std::stringstream s;
  write_distribution(s, d);
  EXPECT_EQ(s.str().substr(0, 12), "symbol,prob\n");
  const auto r = read_distribution(s);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(r[i], d[i]);
  }
  std::istringstream bad("0,0.5\n1,0.6\n");
  EXPECT_THROW(read_distribution(bad), std::domain_error);
}

TEST(CoefficientTable, RoundTripWithSeventeenDigits) {
  const auto p = phi_approximation(6);
  std::stringstream s;
  write_coefficient_table(s, to_table(p));
  std::string first;
  std::getline(s, first);
  EXPECT_EQ(first, "degree,interval_a,interval_b,error");
  s.seekg(0);
  const auto both = [&] {
    std::stringstream two;
    two << s.str() << '\n' << s.str();
    return read_coefficient_tables(two);
  }();
  ASSERT_EQ(both.size(), 2u);
  const auto& t = both[1];
  EXPECT_EQ(t.degree, 6);
  EXPECT_EQ(t.interval, (Interval{0.0, 1.0}));
  EXPECT_EQ(t.error, p.error());
  ASSERT_EQ(t.coeffs.size(), 7u);
  for (std::size_t m = 0; m < 7; ++m) {
    EXPECT_EQ(t.coeffs[m], p.coeffs()[m]);
  }
}

TEST(CoefficientTable, Malformed) {
  std::istringstream missing("degree,interval_a,interval_b,error\n2,0,1,0.1\nm,a_m\n0,1\n");
  EXPECT_THROW(read_coefficient_tables(missing), std::runtime_error);
  std::istringstream header("deg,a,b,e\n");
  EXPECT_THROW(read_coefficient_tables(header), std::runtime_error);
}

TEST(FormatReal, SeventeenSignificantDigits) {
  EXPECT_EQ(format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(format_real(1.0), "1");
}
