#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace prionkit {

// One strain's measured growth rate (1/day) and denaturation stability (M).
struct StrainRecord {
  std::string name;
  double r = 0.0;
  double G = 0.0;
};

// Reduced stability-vs-growth model G(r) = A*(r + mu0)^{1/(nu-1)} + b,
// fitted either with mu0 pinned at zero or left free.
enum class FitVariant { Mu0Zero, Mu0Free };

struct FitResult {
  FitVariant variant = FitVariant::Mu0Zero;
  double nu = 0.0;
  double mu0 = 0.0;
  double A = 0.0;
  double b = 0.0;
  double sse = 0.0;        // sum of squared residuals on G (M^2)
  double r_squared = 0.0;  // 1 - sse / total sum of squares
  int starts_tried = 0;
  bool converged = false;
};

struct FitOptions {
  // The nu > 1 branch of the exponent is off by default (it needs
  // gamma > nu - 1 to be admissible and gives increasing curves);
  // enabling it searches both branches and reports the global best.
  bool allow_nu_above_one = false;
};

// Search bounds. nu stays clear of the singular exponent at nu = 1;
// mu0 (a death rate) is capped at 1/day.
inline constexpr double kFitNuLow = -3.0;
inline constexpr double kFitNuHigh = 0.95;
inline constexpr double kFitNuUpperBranchLow = 1.05;
inline constexpr double kFitNuUpperBranchHigh = 4.0;
inline constexpr double kFitMu0High = 1.0;

// Reads delimited text with a header naming columns (name, r_per_day,
// G_molar). Rejects rows with nonpositive r or G, naming the row.
std::vector<StrainRecord> load_strains(std::istream& in);
std::vector<StrainRecord> load_strains_file(const std::string& path);

// A*(r+mu0)^{1/(nu-1)} + b. Requires r+mu0 > 0, nu != 1, A >= 0.
double predict_G(double r, double nu, double mu0, double A, double b);

// Ordinary least squares on G by multi-start local optimization: a coarse
// grid over nu (and mu0 in [0, min r) for Mu0Free) with (A, b) solved in
// closed form at each point — the model is linear in them — then the best
// grid cells refined by Nelder-Mead within the bounds above. Equal-sse
// optima are broken deterministically toward the smallest |nu|, then the
// smallest mu0. Needs >= 4 records (Mu0Zero) or >= 5 (Mu0Free) and at
// least two distinct growth rates.
FitResult fit(const std::vector<StrainRecord>& records, FitVariant variant,
              const FitOptions& options = {});

// 1 - sum (G - Ghat)^2 / sum (G - mean G)^2. Needs >= 2 records with
// nonconstant G.
double r_squared(const std::vector<StrainRecord>& records,
                 const std::vector<double>& predictions);

}  // namespace prionkit
