#include "prionkit/strain_fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>

#include "prionkit/errors.hpp"

namespace prionkit {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

double parse_number(const std::string& s, const std::string& row,
                    const char* column) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError("load_strains: row '" + row + "': column " + column +
                     " is not a number: '" + s + "'");
  }
}

// ---- fit internals ---------------------------------------------------------

struct Objective {
  const std::vector<double>& r;
  const std::vector<double>& G;
  double sum_G, sst, mean_G;

  Objective(const std::vector<double>& rr, const std::vector<double>& GG)
      : r(rr), G(GG) {
    sum_G = 0.0;
    for (double g : G) sum_G += g;
    mean_G = sum_G / static_cast<double>(G.size());
    sst = 0.0;
    for (double g : G) sst += (g - mean_G) * (g - mean_G);
  }

  // Exact least-squares (A, b) for fixed (nu, mu0); A clamped to >= 0
  // (a negative amplitude flips the curve's direction and is out of model).
  // Returns sse; falls back to the flat model on numerical breakdown.
  double inner(double nu, double mu0, double* A_out = nullptr,
               double* b_out = nullptr) const {
    const std::size_t n = r.size();
    const double expo = 1.0 / (nu - 1.0);
    double sp = 0.0, spp = 0.0, spg = 0.0;
    bool bad = false;
    std::vector<double> phi(n);
    for (std::size_t i = 0; i < n; ++i) {
      phi[i] = std::pow(r[i] + mu0, expo);
      if (!std::isfinite(phi[i])) bad = true;
      sp += phi[i];
      spp += phi[i] * phi[i];
      spg += phi[i] * G[i];
    }
    const double nn = static_cast<double>(n);
    const double det = nn * spp - sp * sp;
    double A, b;
    if (bad || !(det > 1e-300) || !std::isfinite(det)) {
      A = 0.0;
      b = mean_G;
    } else {
      A = (nn * spg - sp * sum_G) / det;
      b = (sum_G - A * sp) / nn;
      if (A < 0.0) {
        A = 0.0;
        b = mean_G;
      }
    }
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double res = G[i] - A * phi[i] - b;
      sse += res * res;
    }
    if (!std::isfinite(sse)) {
      A = 0.0;
      b = mean_G;
      sse = sst;
    }
    if (A_out) *A_out = A;
    if (b_out) *b_out = b;
    return sse;
  }
};

struct NmPoint {
  std::array<double, 2> x;
  double f;
};

// Nelder-Mead (standard reflection/expansion/contraction/shrink
// coefficients 1, 2, 1/2, 1/2) over dim = 1 or 2 with a clamping box.
template <typename F>
NmPoint nelder_mead(F&& f, std::array<double, 2> x0,
                    std::array<double, 2> step, std::array<double, 2> lo,
                    std::array<double, 2> hi, int dim, int max_iter = 600) {
  const auto clamp_pt = [&](std::array<double, 2> p) {
    for (int d = 0; d < dim; ++d) p[d] = std::clamp(p[d], lo[d], hi[d]);
    return p;
  };

  std::vector<NmPoint> simplex;
  simplex.push_back({x0, f(clamp_pt(x0))});
  for (int d = 0; d < dim; ++d) {
    std::array<double, 2> q = x0;
    q[d] += step[d];
    if (q[d] > hi[d]) q[d] = x0[d] - step[d];
    simplex.push_back({q, f(clamp_pt(q))});
  }
  const int m = dim + 1;

  for (int it = 0; it < max_iter; ++it) {
    std::stable_sort(simplex.begin(), simplex.end(),
                     [](const NmPoint& a, const NmPoint& b) { return a.f < b.f; });
    double diam = 0.0;
    for (int v = 1; v < m; ++v)
      for (int d = 0; d < dim; ++d)
        diam = std::max(diam, std::abs(simplex[v].x[d] - simplex[0].x[d]));
    if (diam < 1e-11 && simplex[m - 1].f - simplex[0].f < 1e-15) break;

    std::array<double, 2> c = {0.0, 0.0};  // centroid of all but the worst
    for (int v = 0; v + 1 < m; ++v)
      for (int d = 0; d < dim; ++d) c[d] += simplex[v].x[d] / (m - 1);

    const auto along = [&](double coef) {
      std::array<double, 2> p = c;
      for (int d = 0; d < dim; ++d)
        p[d] += coef * (c[d] - simplex[m - 1].x[d]);
      return p;
    };

    const std::array<double, 2> xr = along(1.0);
    const double fr = f(clamp_pt(xr));
    if (fr < simplex[0].f) {
      const std::array<double, 2> xe = along(2.0);
      const double fe = f(clamp_pt(xe));
      simplex[m - 1] = fe < fr ? NmPoint{xe, fe} : NmPoint{xr, fr};
    } else if (fr < simplex[m - 2].f) {
      simplex[m - 1] = {xr, fr};
    } else {
      const std::array<double, 2> xc = along(fr < simplex[m - 1].f ? 0.5 : -0.5);
      const double fc = f(clamp_pt(xc));
      if (fc < std::min(fr, simplex[m - 1].f)) {
        simplex[m - 1] = {xc, fc};
      } else {
        for (int v = 1; v < m; ++v) {
          for (int d = 0; d < dim; ++d)
            simplex[v].x[d] =
                simplex[0].x[d] + 0.5 * (simplex[v].x[d] - simplex[0].x[d]);
          simplex[v].f = f(clamp_pt(simplex[v].x));
        }
      }
    }
  }
  std::stable_sort(simplex.begin(), simplex.end(),
                   [](const NmPoint& a, const NmPoint& b) { return a.f < b.f; });
  return {clamp_pt(simplex[0].x), simplex[0].f};
}

struct Candidate {
  double sse, nu, mu0;
};

bool better_tiebreak(const Candidate& a, const Candidate& b) {
  // Strictly better sse wins; near-ties prefer small |nu| then small mu0.
  const double tie = 1e-9 * (1.0 + std::min(a.sse, b.sse));
  if (a.sse < b.sse - tie) return true;
  if (a.sse > b.sse + tie) return false;
  if (std::abs(a.nu) != std::abs(b.nu)) return std::abs(a.nu) < std::abs(b.nu);
  return a.mu0 < b.mu0;
}

}  // namespace

std::vector<StrainRecord> load_strains(std::istream& in) {
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    header = split_csv(t);
    break;
  }
  if (header.empty())
    throw ParseError("load_strains: empty input, expected a header row");

  long i_name = -1, i_r = -1, i_G = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "name") i_name = static_cast<long>(i);
    if (header[i] == "r_per_day") i_r = static_cast<long>(i);
    if (header[i] == "G_molar") i_G = static_cast<long>(i);
  }
  if (i_name < 0 || i_r < 0 || i_G < 0)
    throw ParseError(
        "load_strains: header must provide columns name, r_per_day, G_molar");

  std::vector<StrainRecord> records;
  std::size_t row_no = 0;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    ++row_no;
    const std::vector<std::string> fields = split_csv(t);
    const std::size_t needed = static_cast<std::size_t>(
        std::max({i_name, i_r, i_G})) + 1;
    std::ostringstream row_id;
    row_id << "row " << row_no;
    if (fields.size() < needed)
      throw ParseError("load_strains: " + row_id.str() +
                       ": missing columns");
    StrainRecord rec;
    rec.name = fields[static_cast<std::size_t>(i_name)];
    const std::string label = rec.name.empty() ? row_id.str() : rec.name;
    rec.r = parse_number(fields[static_cast<std::size_t>(i_r)], label,
                         "r_per_day");
    rec.G = parse_number(fields[static_cast<std::size_t>(i_G)], label,
                         "G_molar");
    if (!(rec.r > 0.0))
      throw ParseError("load_strains: row '" + label +
                       "': growth rate must be positive");
    if (!(rec.G > 0.0))
      throw ParseError("load_strains: row '" + label +
                       "': stability must be positive");
    records.push_back(std::move(rec));
  }
  if (records.empty())
    throw ParseError("load_strains: no data rows after the header");
  return records;
}

std::vector<StrainRecord> load_strains_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("load_strains: cannot open '" + path + "'");
  return load_strains(in);
}

double predict_G(double r, double nu, double mu0, double A, double b) {
  if (nu == 1.0)
    throw DomainError("predict_G: nu = 1 makes the exponent singular");
  if (!(r + mu0 > 0.0))
    throw DomainError("predict_G: requires r + mu0 > 0");
  if (A < 0.0) throw DomainError("predict_G: amplitude A must be >= 0");
  return A * std::pow(r + mu0, 1.0 / (nu - 1.0)) + b;
}

FitResult fit(const std::vector<StrainRecord>& records, FitVariant variant,
              const FitOptions& options) {
  const std::size_t min_records = variant == FitVariant::Mu0Zero ? 4 : 5;
  if (records.size() < min_records) {
    std::ostringstream os;
    os << "fit: need at least " << min_records << " records for this variant, got "
       << records.size();
    throw DomainError(os.str());
  }

  std::vector<double> r(records.size()), G(records.size());
  double r_min = std::numeric_limits<double>::infinity();
  double r_max = -r_min;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!(records[i].r > 0.0) || !(records[i].G > 0.0))
      throw DomainError("fit: records must have positive r and G");
    r[i] = records[i].r;
    G[i] = records[i].G;
    r_min = std::min(r_min, r[i]);
    r_max = std::max(r_max, r[i]);
  }
  if (!(r_max > r_min))
    throw ValidationError(
        "fit: degenerate design, all growth rates are equal");

  const Objective obj(r, G);
  if (!(obj.sst > 0.0))
    throw ValidationError("fit: degenerate data, all stabilities are equal");

  const bool free_mu0 = variant == FitVariant::Mu0Free;
  std::vector<double> mu_grid{0.0};
  if (free_mu0) {
    mu_grid.clear();
    const int n_mu = 8;
    for (int j = 0; j < n_mu; ++j) mu_grid.push_back(j * r_min / n_mu);
  }

  std::vector<std::pair<double, double>> branches{{kFitNuLow, kFitNuHigh}};
  if (options.allow_nu_above_one)
    branches.push_back({kFitNuUpperBranchLow, kFitNuUpperBranchHigh});

  Candidate best{std::numeric_limits<double>::infinity(), 0.0, 0.0};
  bool have_best = false;
  int starts = 0;

  for (const auto& [nu_lo, nu_hi] : branches) {
    // Coarse scan with the exact inner solve, then refine the leaders.
    const int n_nu = 141;
    std::vector<Candidate> cells;
    cells.reserve(static_cast<std::size_t>(n_nu) * mu_grid.size());
    for (int i = 0; i < n_nu; ++i) {
      const double nu = nu_lo + (nu_hi - nu_lo) * i / (n_nu - 1);
      for (double mu0 : mu_grid)
        cells.push_back({obj.inner(nu, mu0), nu, mu0});
    }
    std::stable_sort(cells.begin(), cells.end(),
                     [](const Candidate& a, const Candidate& b) {
                       if (a.sse != b.sse) return a.sse < b.sse;
                       if (std::abs(a.nu) != std::abs(b.nu))
                         return std::abs(a.nu) < std::abs(b.nu);
                       return a.mu0 < b.mu0;
                     });

    const std::array<double, 2> lo{nu_lo, 0.0};
    const std::array<double, 2> hi{nu_hi, kFitMu0High};
    const std::array<double, 2> step{0.08, 0.01};
    const int dim = free_mu0 ? 2 : 1;
    const auto objective = [&](std::array<double, 2> p) {
      return obj.inner(p[0], free_mu0 ? p[1] : 0.0);
    };

    const std::size_t top_k = std::min<std::size_t>(6, cells.size());
    for (std::size_t s = 0; s < top_k; ++s) {
      ++starts;
      NmPoint res = nelder_mead(objective, {cells[s].nu, cells[s].mu0}, step,
                                lo, hi, dim);
      // Restart once from the endpoint: a fresh simplex escapes the
      // occasional premature collapse along a curved valley.
      const NmPoint res2 = nelder_mead(objective, res.x, step, lo, hi, dim);
      if (res2.f < res.f) res = res2;

      const Candidate cand{res.f, res.x[0], free_mu0 ? res.x[1] : 0.0};
      if (!have_best || better_tiebreak(cand, best)) {
        best = cand;
        have_best = true;
      }
    }
  }

  if (!have_best || !std::isfinite(best.sse))
    throw ConvergenceError("fit: every start produced a non-finite objective",
                           starts, best.nu, best.sse, {});

  FitResult out;
  out.variant = variant;
  out.nu = best.nu;
  out.mu0 = best.mu0;
  out.sse = obj.inner(best.nu, best.mu0, &out.A, &out.b);
  out.r_squared = 1.0 - out.sse / obj.sst;
  out.starts_tried = starts;
  out.converged = true;
  return out;
}

double r_squared(const std::vector<StrainRecord>& records,
                 const std::vector<double>& predictions) {
  if (records.size() < 2)
    throw DomainError("r_squared: need at least two records");
  if (predictions.size() != records.size())
    throw DomainError("r_squared: one prediction per record required");
  double mean = 0.0;
  for (const auto& rec : records) mean += rec.G;
  mean /= static_cast<double>(records.size());
  double sst = 0.0, sse = 0.0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    sst += (records[i].G - mean) * (records[i].G - mean);
    sse += (records[i].G - predictions[i]) * (records[i].G - predictions[i]);
  }
  if (!(sst > 0.0))
    throw DomainError("r_squared: undefined for a constant stability column");
  return 1.0 - sse / sst;
}

}  // namespace prionkit
