#include "doctest.h"
#include "prionkit/errors.hpp"
#include "prionkit/strain_fit.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

using namespace prionkit;

namespace {

const char* kBundledCsv = PRIONKIT_SOURCE_DIR "/data/strains.csv";

std::vector<StrainRecord> bundled() { return load_strains_file(kBundledCsv); }

// Noise-free data drawn from the model itself at the panel's growth rates.
std::vector<StrainRecord> synthetic(double nu, double mu0, double A, double b) {
  const double rs[8] = {0.05, 0.024, 0.015, 0.11, 0.18, 0.07, 0.17, 0.07};
  std::vector<StrainRecord> recs;
  for (int i = 0; i < 8; ++i)
    recs.push_back({"s" + std::to_string(i), rs[i],
                    predict_G(rs[i], nu, mu0, A, b)});
  return recs;
}

double sse_of(const std::vector<StrainRecord>& recs, const FitResult& f) {
  double s = 0.0;
  for (const auto& rec : recs) {
    const double res = rec.G - predict_G(rec.r, f.nu, f.mu0, f.A, f.b);
    s += res * res;
  }
  return s;
}

}  // namespace

TEST_SUITE("strain_fit") {

TEST_CASE("bundled panel loads with the expected measurements") {
  const auto recs = bundled();
  REQUIRE(recs.size() == 8);
  auto find = [&](const std::string& name) -> const StrainRecord& {
    for (const auto& r : recs)
      if (r.name == name) return r;
    FAIL("strain not found: ", name);
    return recs.front();
  };
  CHECK(find("RML").r == doctest::Approx(0.18));
  CHECK(find("RML").G == doctest::Approx(1.7));
  CHECK(find("ME7").r == doctest::Approx(0.024));
  CHECK(find("ME7").G == doctest::Approx(2.9));
  CHECK(find("BSE").r == doctest::Approx(0.015));
  CHECK(find("Chandler Scrapie").G == doctest::Approx(2.2));
}

TEST_CASE("loader: header mapping, comments, and whitespace") {
  std::istringstream in(
      "# comment\n"
      "\n"
      "G_molar, name ,extra,r_per_day\n"
      " 2.0 , strain A ,x, 0.05 \n"
      "# interleaved comment\n"
      "1.5,strain B,y,0.11\n");
  const auto recs = load_strains(in);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].name == "strain A");
  CHECK(recs[0].r == doctest::Approx(0.05));
  CHECK(recs[0].G == doctest::Approx(2.0));
  CHECK(recs[1].name == "strain B");
  CHECK(recs[1].G == doctest::Approx(1.5));
}

TEST_CASE("loader: malformed input names the offending row") {
  auto expect_parse_error = [](const std::string& text,
                               const std::string& needle) {
    std::istringstream in(text);
    try {
      load_strains(in);
      FAIL("expected ParseError for: ", text);
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  expect_parse_error("", "empty input");
  expect_parse_error("name,r_per_day,G_molar\n", "no data rows");
  expect_parse_error("name,rate,G_molar\nA,0.1,2\n", "r_per_day");
  expect_parse_error("name,r_per_day,G_molar\nA,0.1\n", "missing columns");
  expect_parse_error("name,r_per_day,G_molar\nME7,abc,2\n", "ME7");
  expect_parse_error("name,r_per_day,G_molar\nME7,0.1,2extra\n", "G_molar");
  expect_parse_error("name,r_per_day,G_molar\n,nope,2\n", "row 1");
  expect_parse_error("name,r_per_day,G_molar\nA,-0.1,2\n",
                     "growth rate must be positive");
  expect_parse_error("name,r_per_day,G_molar\nA,0.1,0\n",
                     "stability must be positive");

  CHECK_THROWS_AS(load_strains_file("/nonexistent/strains.csv"), IoError);
}

TEST_CASE("prediction formula: hand-computed points and preconditions") {
  // 0.083 * 0.05^(1/(-0.482-1)) + 1.54
  CHECK(predict_G(0.05, -0.482, 0.0, 0.083, 1.54) ==
        doctest::Approx(2.166564923788957).epsilon(1e-12));
  // 0.01 * (0.024+0.023)^(1/(0.316-1)) + 1.69
  CHECK(predict_G(0.024, 0.316, 0.023, 0.01, 1.69) ==
        doctest::Approx(2.563730307753196).epsilon(1e-12));
  // zero amplitude means the stability is flat at b
  CHECK(predict_G(0.18, -0.5, 0.0, 0.0, 1.7) == 1.7);

  CHECK_THROWS_AS(predict_G(0.1, 1.0, 0.0, 0.1, 1.0), DomainError);
  CHECK_THROWS_AS(predict_G(0.0, -0.5, 0.0, 0.1, 1.0), DomainError);
  CHECK_THROWS_AS(predict_G(-0.2, -0.5, 0.1, 0.1, 1.0), DomainError);
  CHECK_THROWS_AS(predict_G(0.1, -0.5, 0.0, -0.1, 1.0), DomainError);
}

TEST_CASE("pinned-death fit of the bundled panel") {
  const auto recs = bundled();
  const FitResult f = fit(recs, FitVariant::Mu0Zero);
  CHECK(f.converged);
  CHECK(f.variant == FitVariant::Mu0Zero);
  CHECK(f.mu0 == 0.0);
  CHECK(f.starts_tried == 6);

  CHECK(f.nu == doctest::Approx(-0.481910).epsilon(1e-3));
  CHECK(f.A == doctest::Approx(0.082909).epsilon(1e-2));
  CHECK(f.b == doctest::Approx(1.535400).epsilon(1e-3));
  CHECK(f.sse == doctest::Approx(0.47679084).epsilon(1e-6));
  CHECK(f.r_squared == doctest::Approx(0.70334).epsilon(2e-5));
  CHECK(f.r_squared >= 0.67);

  // at least as good as the baseline parameter set (nu=-0.482, A=0.083,
  // b=1.54), whose sse on this panel is 0.4770078182
  CHECK(f.sse <= 0.4770078182 + 1e-9);

  // the reported sse matches a direct recomputation through predict_G
  CHECK(sse_of(recs, f) == doctest::Approx(f.sse).epsilon(1e-12));
}

TEST_CASE("free-death fit of the bundled panel") {
  const auto recs = bundled();
  const FitResult f = fit(recs, FitVariant::Mu0Free);
  CHECK(f.converged);
  CHECK(f.mu0 >= 0.0);
  CHECK(f.mu0 <= kFitMu0High);
  CHECK(f.nu <= kFitNuHigh + 1e-12);
  CHECK(f.nu >= kFitNuLow - 1e-12);

  // dominates the baseline free-death parameter set (nu=0.316, mu0=0.023,
  // A=0.01, b=1.69), whose sse on this panel is 0.4505407861
  CHECK(f.sse <= 0.4505407861 + 1e-9);
  CHECK(f.r_squared >= 0.69);
  CHECK(f.sse == doctest::Approx(0.40333814).epsilon(5e-3));

  // the free variant nests the pinned one, so it can only fit better
  const FitResult f0 = fit(recs, FitVariant::Mu0Zero);
  CHECK(f.sse <= f0.sse + 1e-12);
}

TEST_CASE("noise-free recovery: decreasing branch, pinned death") {
  const auto recs = synthetic(-0.5, 0.0, 0.1, 1.5);
  const FitResult f = fit(recs, FitVariant::Mu0Zero);
  CHECK(f.sse <= 1e-10);
  CHECK(f.r_squared >= 1.0 - 1e-10);
  CHECK(f.nu == doctest::Approx(-0.5).epsilon(1e-3));
  CHECK(f.A == doctest::Approx(0.1).epsilon(1e-2));
  CHECK(f.b == doctest::Approx(1.5).epsilon(1e-3));
}

TEST_CASE("noise-free recovery: free death rate") {
  const auto recs = synthetic(0.3, 0.02, 0.01, 1.7);
  const FitResult f = fit(recs, FitVariant::Mu0Free);
  CHECK(f.sse <= 1e-10);
  CHECK(f.r_squared >= 1.0 - 1e-10);
  CHECK(f.nu == doctest::Approx(0.3).epsilon(1e-3));
  CHECK(f.mu0 == doctest::Approx(0.02).epsilon(1e-2));
}

TEST_CASE("noise-free recovery: death rate far outside the coarse grid") {
  // mu0 = 0.1 exceeds min(r) = 0.015, so every coarse-scan start is far off
  // and the local refinement has to travel; the restart pass rescues it.
  const auto recs = synthetic(-2.0, 0.1, 0.05, 2.0);
  const FitResult f = fit(recs, FitVariant::Mu0Free);
  CHECK(f.sse <= 1e-10);
  CHECK(f.r_squared >= 1.0 - 1e-10);
  CHECK(f.nu == doctest::Approx(-2.0).epsilon(1e-3));
  CHECK(f.mu0 == doctest::Approx(0.1).epsilon(1e-2));
}

TEST_CASE("noise-free recovery: increasing branch behind the option flag") {
  FitOptions opts;
  opts.allow_nu_above_one = true;

  const auto recs = synthetic(2.5, 0.0, 0.5, 1.2);
  const FitResult f = fit(recs, FitVariant::Mu0Zero, opts);
  CHECK(f.starts_tried == 12);  // both branches were searched
  CHECK(f.sse <= 1e-10);
  CHECK(f.nu == doctest::Approx(2.5).epsilon(1e-3));

  const auto recs2 = synthetic(3.0, 0.05, 0.3, 1.0);
  const FitResult f2 = fit(recs2, FitVariant::Mu0Free, opts);
  CHECK(f2.sse <= 1e-10);
  CHECK(f2.r_squared >= 1.0 - 1e-10);
  CHECK(f2.nu == doctest::Approx(3.0).epsilon(1e-3));
  CHECK(f2.mu0 == doctest::Approx(0.05).epsilon(1e-2));

  // without the flag the increasing-branch data gets a decreasing-branch fit
  const FitResult capped = fit(recs, FitVariant::Mu0Zero);
  CHECK(capped.nu <= kFitNuHigh + 1e-12);
  CHECK(capped.sse >= f.sse);
}

TEST_CASE("amplitude and offset are exactly optimal given the exponent") {
  const auto recs = bundled();
  const FitResult f = fit(recs, FitVariant::Mu0Zero);
  const double base = sse_of(recs, f);
  for (double dA : {-1e-3, 1e-3})
    for (double db : {-1e-3, 0.0, 1e-3}) {
      if (f.A + dA < 0.0) continue;
      FitResult g = f;
      g.A += dA;
      g.b += db;
      CHECK(sse_of(recs, g) >= base - 1e-12);
    }
}

TEST_CASE("fitted curves decrease in the growth rate") {
  const auto recs = bundled();
  for (const FitVariant v : {FitVariant::Mu0Zero, FitVariant::Mu0Free}) {
    const FitResult f = fit(recs, v);
    double prev = predict_G(0.01, f.nu, f.mu0, f.A, f.b);
    for (int k = 1; k <= 24; ++k) {
      const double r = 0.01 + (0.2 - 0.01) * k / 24.0;
      const double g = predict_G(r, f.nu, f.mu0, f.A, f.b);
      CHECK(g < prev);
      prev = g;
    }
  }
}

TEST_CASE("fit preconditions") {
  auto recs = bundled();

  std::vector<StrainRecord> three(recs.begin(), recs.begin() + 3);
  CHECK_THROWS_AS(fit(three, FitVariant::Mu0Zero), DomainError);
  std::vector<StrainRecord> four(recs.begin(), recs.begin() + 4);
  CHECK_THROWS_AS(fit(four, FitVariant::Mu0Free), DomainError);
  CHECK_NOTHROW(fit(four, FitVariant::Mu0Zero));

  auto bad = recs;
  bad[2].r = -0.1;
  CHECK_THROWS_AS(fit(bad, FitVariant::Mu0Zero), DomainError);

  std::vector<StrainRecord> same_r;
  for (int i = 0; i < 6; ++i)
    same_r.push_back({"s", 0.1, 1.0 + 0.1 * i});
  CHECK_THROWS_AS(fit(same_r, FitVariant::Mu0Zero), ValidationError);

  std::vector<StrainRecord> same_G;
  for (int i = 0; i < 6; ++i)
    same_G.push_back({"s", 0.1 + 0.01 * i, 2.0});
  CHECK_THROWS_AS(fit(same_G, FitVariant::Mu0Zero), ValidationError);
}

TEST_CASE("coefficient of determination") {
  std::vector<StrainRecord> recs{{"a", 0.1, 1.0}, {"b", 0.2, 2.0},
                                 {"c", 0.3, 3.0}};
  CHECK(r_squared(recs, {1.0, 2.0, 3.0}) == doctest::Approx(1.0));
  CHECK(r_squared(recs, {2.0, 2.0, 2.0}) ==
        doctest::Approx(0.0).epsilon(1e-15));
  CHECK(r_squared(recs, {3.0, 2.0, 1.0}) < 0.0);  // worse than the mean

  CHECK_THROWS_AS(r_squared({{"a", 0.1, 1.0}}, {1.0}), DomainError);
  CHECK_THROWS_AS(r_squared(recs, {1.0, 2.0}), DomainError);
  std::vector<StrainRecord> flat{{"a", 0.1, 2.0}, {"b", 0.2, 2.0}};
  CHECK_THROWS_AS(r_squared(flat, {2.0, 2.0}), DomainError);
}

}  // TEST_SUITE
