#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <sstream>

#include "ier/config.hpp"
#include "ier/errors.hpp"
#include "ier/format.hpp"

using namespace ier;

TEST(Format, DoublesRoundTrip) {
  std::mt19937_64 gen(9);
  for (int i = 0; i < 20000; ++i) {
    std::uint64_t bits = gen();
    double x;
    std::memcpy(&x, &bits, sizeof x);
    if (!std::isfinite(x)) continue;
    const auto text = format_double(x);
    EXPECT_EQ(std::strtod(text.c_str(), nullptr), x) << text;
  }
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 5e-324, 1.7976931348623157e308, -0.0})
    EXPECT_EQ(std::strtod(format_double(x).c_str(), nullptr), x);
  EXPECT_EQ(format_double(2.5), "2.5");
  EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
}

TEST(Format, ComplexTextRoundTrip) {
  std::mt19937 gen(4);
  std::normal_distribution<double> g(0.0, 10.0);
  for (int i = 0; i < 500; ++i) {
    const std::complex<double> z{g(gen), g(gen)};
    EXPECT_EQ(parse_complex(format_complex(z)), z);
  }
}

TEST(Format, ParseComplexForms) {
  EXPECT_EQ(parse_complex("1+3i"), std::complex<double>(1.0, 3.0));
  EXPECT_EQ(parse_complex("-0.5-2i"), std::complex<double>(-0.5, -2.0));
  EXPECT_EQ(parse_complex("2i"), std::complex<double>(0.0, 2.0));
  EXPECT_EQ(parse_complex("2j"), std::complex<double>(0.0, 2.0));
  EXPECT_EQ(parse_complex("4"), std::complex<double>(4.0, 0.0));
  EXPECT_EQ(parse_complex("1e-3+1e2i"), std::complex<double>(1e-3, 100.0));
  EXPECT_EQ(parse_complex("i"), std::complex<double>(0.0, 1.0));
  EXPECT_EQ(parse_complex("1-i"), std::complex<double>(1.0, -1.0));
  for (const char* bad : {"", "1+", "abc", "1+2", "1+2ix", "2e+i"}) EXPECT_THROW(parse_complex(bad), ConfigError) << bad;
}

TEST(Format, Fnv1aReferenceVectors) {
  EXPECT_EQ(hex64(fnv1a("")), "cbf29ce484222325");
  EXPECT_EQ(hex64(fnv1a("a")), "af63dc4c8601ec8c");
  EXPECT_EQ(hex64(fnv1a("foobar")), "85944171f73967e8");
}

TEST(Format, CsvWriters) {
  std::ostringstream os;
  write_comment_header(os, {{"seed", "3"}, {"config_hash", "00ff"}});
  write_columns_csv(os, {"x", "y"}, {{1.0, 2.0}, {0.5, -1.0}});
  EXPECT_EQ(os.str(), "# seed: 3\n# config_hash: 00ff\nx,y\n1,0.5\n2,-1\n");
  EXPECT_THROW(write_columns_csv(os, {"x", "y"}, {{1.0}, {}}), DomainError);
}

TEST(Config, ParsesEverySection) {
  const auto c = parse_config(R"({
    "kernel": {"variant": "rank1", "r": {"kind": "saturating", "scale": 2, "exponent": 1}},
    "weights": {"law": "discrete", "atoms": [0.5, 1.5], "probs": [0.25, 0.75]},
    "ensemble": {"n": 300, "lambda": 4, "variant": "generic_ier", "seed": 11, "zero_diagonal": true},
    "solver": {"z": "0.5+3i", "panels": 8},
    "moments": {"k_max": 6},
    "spectrum": {"backend": "lapack", "bins": 40, "replicates": 2},
    "density": {"x_min": -1, "x_max": 2, "points": 7, "eta": 0.1, "method": "dense"}
  })");
  EXPECT_DOUBLE_EQ(c.kernel(1.0, 3.0), (2.0 * 1.0 / 2.0) * (2.0 * 3.0 / 4.0));
  EXPECT_EQ(c.weights.nodes(), (std::vector<double>{0.5, 1.5}));
  EXPECT_EQ(c.ensemble.n, 300u);
  EXPECT_EQ(c.ensemble.seed, 11u);
  EXPECT_TRUE(c.ensemble.zero_diagonal);
  EXPECT_EQ(c.solver.z, std::complex<double>(0.5, 3.0));
  EXPECT_DOUBLE_EQ(c.solver.lambda, 4.0);
  EXPECT_EQ(c.solver.panels, 8);
  EXPECT_EQ(c.k_max, 6);
  EXPECT_EQ(c.spectrum.backend, EigenBackend::lapack);
  EXPECT_EQ(c.spectrum.bins, std::optional<std::size_t>{40});
  EXPECT_EQ(c.density.method, DensityMethod::dense);
  EXPECT_EQ(c.density.points, 7);
  // the ensemble samples from the same model as the limit
  EXPECT_DOUBLE_EQ(c.ensemble.kernel(1.0, 3.0), c.kernel(1.0, 3.0));
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  for (const char* bad : {R"({"bogus": 1})", R"({"kernel": {"variant": "grg", "extra": 0}})",
                          R"({"solver": {"z": [0, 2], "tolerance": 1}})", R"({"weights": {"law": "cauchy"}})",
                          R"({"kernel": {"variant": "rank1", "r": {"kind": "cubic"}}})", R"({"ensemble": {"n": "ten"}})",
                          R"({"solver": {"z": [0, 1, 2]}})", R"({"density": {"method": "fast"}})", "{not json",
                          "[1, 2]"})
    EXPECT_THROW(parse_config(bad), ConfigError) << bad;
  EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError);
}

TEST(Config, HashIgnoresKeyOrderAndWhitespace) {
  const auto a = parse_config(R"({"ensemble": {"n": 10, "lambda": 2}, "kernel": {"variant": "grg"}})");
  const auto b = parse_config("{\"kernel\":{\"variant\":\"grg\"},\n  \"ensemble\":{\"lambda\":2,\"n\":10}}");
  const auto c = parse_config(R"({"ensemble": {"n": 11, "lambda": 2}, "kernel": {"variant": "grg"}})");
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_NE(config_hash(a), config_hash(c));
  EXPECT_EQ(config_hash(a).size(), 16u);
  EXPECT_EQ(default_config().canonical, "{}");
  EXPECT_EQ(config_hash(default_config()), hex64(fnv1a("{}")));
}
