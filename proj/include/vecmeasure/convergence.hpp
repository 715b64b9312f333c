#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vecmeasure/measures.hpp"
#include "vecmeasure/norms.hpp"

namespace vecmeasure {

/// A finite sequence mu_1, ..., mu_N with its declared limit.
struct Scenario {
  std::string name;
  std::vector<VectorMeasure> sequence;
  VectorMeasure limit;
  Seminorm norm;
};

/// Validates that all measures share space_dim and dim; throws DimError.
void validate_scenario(const Scenario& s);

enum class Verdict { Converging, NotConverging, Inconclusive };

std::string_view to_string(Verdict v) noexcept;

struct Verdicts {
  Verdict wide;
  Verdict mass;
  Verdict strict;     // wide and mass
  Verdict range;
  Verdict projected;  // all projected-gap columns together
  Verdict range_lsc;
};

struct DiagnosticsRow {
  std::size_t n;
  double wide_proxy;
  double mass;
  double mass_gap;
  double range_dh;
  double range_lsc_deficiency;
  std::vector<double> projected_gaps;
};

struct DiagnosticsOptions {
  std::size_t directions = 64;
  double resolution = 1.0;
  std::size_t window = 0;  // 0: the whole sequence
  double tol = 1e-9;
};

struct DiagnosticsReport {
  std::string name;
  std::string norm;
  double limit_mass;
  std::vector<DualVec> directions;
  std::vector<DiagnosticsRow> rows;
  DiagnosticsOptions options;
  Verdicts verdicts;
};

/// Compactly supported test functions: tensor-product hats of half-width
/// `resolution` on the grid resolution * Z^m clipped to `window`, plus one hat
/// centred at each site of the limit. Returns the largest Euclidean norm of
/// int phi dmu_n - int phi dmu over this dictionary. A probe, not a
/// certificate of wide convergence.
double wide_proxy(const VectorMeasure& mu_n, const VectorMeasure& mu, double resolution, const Box& window);

/// Same with the window taken as the bounding box of both measures' sites.
double wide_proxy(const VectorMeasure& mu_n, const VectorMeasure& mu, double resolution);

/// Trend rule for one column: converging if the last `window` values are all
/// <= tol or decrease monotonically by a total factor >= 10; not-converging
/// if their minimum exceeds tol and their relative spread is below 10%;
/// inconclusive otherwise.
Verdict classify_column(std::span<const double> column, std::size_t window, double tol);

Verdicts verdicts(const DiagnosticsReport& report, std::size_t window, double tol);

/// Fills every row. The dictionary window for the wide proxy is fixed across
/// n: the bounding box of the sites of mu_1 and the limit, padded by one
/// resolution step.
DiagnosticsReport run_diagnostics(const Scenario& s, const DiagnosticsOptions& options = {});

struct ScenarioParams {
  std::optional<Vec> v;
  std::optional<Vec> w;
  std::optional<Site> u;  // direction of approach in X
  std::optional<Site> x;  // base site in X
  std::optional<Seminorm> norm;
};

/// dirac_split: v d_x + w d_{x+u/n} -> (v + w) d_x
/// aligned_merge: v d_x + v d_{x+u/n} -> 2v d_x
/// cancelling_pair: v d_x - v d_{x+u/n} -> 0
/// mass_escape: v d_{n u} -> 0
/// Defaults: v = e1, w = e2 in R^2, X = R^1, u = 1, x = 0, Euclidean norm.
Scenario builtin_scenario(std::string_view name, const ScenarioParams& params, std::size_t count);

std::span<const std::string_view> builtin_scenario_names();

/// mu_n = sum_i (1 + rate_i / n) v_i d_{x_i} -> sum_i v_i d_{x_i}: every atom
/// value moves by rate_i v_i / n.
Scenario radial_perturbation_scenario(std::string name, const VectorMeasure& limit, std::span<const double> rates,
                                      std::size_t count, Seminorm norm);

}  // namespace vecmeasure
