#pragma once

// Generic coadjoint orbits of GL(N): sampling, Gelfand-Zetlin charts (γ, θ)
// and the Kirillov-Kostant bracket.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gztower/numeric.hpp"

namespace gztower {

struct OrbitPoint {
  CMatrix u;
  std::vector<cplx> spectrum;

  int n() const { return static_cast<int>(u.rows()); }
};

struct SampleOptions {
  double min_gap = 1e-6;
  int max_retries = 100;
  double condition_cap = 1e6;
};

/// u = h·diag(spectrum)·h⁻¹ with h complex Gaussian, resampled until h is
/// well conditioned and u is regular with a nonsingular chart.
OrbitPoint sample_orbit(const std::vector<cplx>& spectrum, std::uint64_t seed,
                        const SampleOptions& options = {});

/// Smallest root gap over all levels, both within A_n and between A_n and A_{n−1}.
double regularity_gap(const CMatrix& u);
bool is_regular(const CMatrix& u, double min_gap = 1e-6);

/// Ĉ_n is ±(minor of λ−u on rows {1..n−1, n+1}, cols {1..n}); the transposed
/// variant swaps the row and column sets.
struct ChartConvention {
  int sign = 1;
  bool transposed = false;

  std::string name() const;
};

/// A_n(λ) = det(λ − u)_n, the n-th leading principal minor; A_0 = 1.
ComplexPoly principal_minor(const CMatrix& u, int n);

/// Ĉ_n(λ) for 1 ≤ n ≤ N−1; degree n−1 in λ.
ComplexPoly lowering_minor(const CMatrix& u, int n, const ChartConvention& conv = {});

struct GZChart {
  int n = 0;
  /// gamma[m−1] holds γ_{m,1..m}, m = 1..N.
  std::vector<std::vector<cplx>> gamma;
  /// theta[m−1] holds θ_{m,1..m}, m = 1..N−1.
  std::vector<std::vector<cplx>> theta;
};

inline constexpr double kChartFloor = 1e-12;

/// Roots of the principal minors and θ_{nj} = log(−Ĉ_n(γ_{nj}) / A_{n−1}(γ_{nj})),
/// principal branch. Throws SingularChart below kChartFloor.
GZChart gz_forward(const CMatrix& u, const ChartConvention& conv = {});
inline GZChart gz_forward(const OrbitPoint& pt, const ChartConvention& conv = {}) {
  return gz_forward(pt.u, conv);
}

/// Chart at a point near the one where `reference` was computed: roots are
/// put in the reference order and θ is taken on the branch nearest the
/// reference. Throws TrackingAmbiguous when roots are closer than
/// `min_separation` or the nearest-neighbour assignment is not a bijection.
GZChart gz_forward_tracked(const CMatrix& u, const GZChart& reference, const ChartConvention& conv,
                           double min_separation);

struct ChartResiduals {
  /// max |∏(λ − γ_{nj}) − det(λ − u)_n| over sample λ and all levels, coefficientwise.
  double minor = 0.0;
  /// max |Ĉ_n(γ_{nj}) + A_{n−1}(γ_{nj}) e^{θ_{nj}}|.
  double c_relation = 0.0;
};

ChartResiduals chart_residuals(const CMatrix& u, const GZChart& chart, const ChartConvention& conv = {});

/// Flattened chart coordinates: γ for levels 1..N, then θ for levels 1..N−1.
struct ChartCoordinate {
  char kind;  // 'g' or 't'
  int level;
  int index;

  std::string label() const;
};
std::vector<ChartCoordinate> chart_coordinates(int n);
std::vector<cplx> flatten(const GZChart& chart);

using MatrixFunction = std::function<cplx(const CMatrix&)>;
using VectorMatrixFunction = std::function<std::vector<cplx>(const CMatrix&)>;

/// (∇f)_{ij} = ∂f/∂u_{ji} by central differences of step `step` along each entry.
CMatrix lie_poisson_gradient(const MatrixFunction& f, const CMatrix& u, double step = 1e-6);

/// Gradients of every component of a vector-valued function in one stencil pass.
std::vector<CMatrix> lie_poisson_gradients(const VectorMatrixFunction& f, const CMatrix& u,
                                           double step = 1e-6);

/// {f,h}(u) = tr(u·[∇h, ∇f]), oriented so that {u_{12}, u_{21}} = u_{11} − u_{22}.
cplx kk_bracket_from_gradients(const CMatrix& u, const CMatrix& grad_f, const CMatrix& grad_h);
cplx kk_bracket(const MatrixFunction& f, const MatrixFunction& h, const CMatrix& u, double step = 1e-6);

struct CanonicalChartReport {
  ChartConvention convention;
  std::vector<ChartCoordinate> coordinates;
  /// brackets(a, b) = {coordinate a, coordinate b}.
  CMatrix brackets;
  CMatrix expected;
  double max_defect = 0.0;
  bool ok = false;
  std::string witness;
};

/// Full bracket table of the chart coordinates: {θ_{nj}, γ_{ml}} = δδ, all
/// others zero, level-N γ Casimir.
CanonicalChartReport verify_canonical_chart(const CMatrix& u, const ChartConvention& conv = {},
                                            double tolerance = 1e-5, double step = 1e-5);

/// Runs verify_canonical_chart for the four Ĉ_n variants.
std::vector<CanonicalChartReport> sweep_chart_conventions(const CMatrix& u, double tolerance = 1e-5,
                                                          double step = 1e-5);

// Residue form of the symplectic structure.

struct ResidueConventionResult {
  std::string name;
  int orientation = 1;
  double max_defect = 0.0;
  bool ok = false;
};

struct ResidueFormReport {
  int pairs = 0;
  std::vector<ResidueConventionResult> conventions;
  /// Conventions that match on every pair.
  std::vector<std::string> winners;
  /// Kirillov-Kostant values tr(u·[x,y]) per pair.
  std::vector<cplx> kk_values;
  bool ok = false;
};

struct TangentPair {
  CMatrix x;
  CMatrix y;
};

/// Per-convention values of the residue form on one tangent pair; the
/// reference value is tr(u·[x,y]).
std::vector<std::pair<std::string, cplx>> residue_form_values(const CMatrix& u, const TangentPair& pair,
                                                              const ChartConvention& conv = {},
                                                              double step = 1e-6);

ResidueFormReport residue_form_check(const CMatrix& u, const std::vector<TangentPair>& pairs,
                                     double tolerance = 1e-4, const ChartConvention& conv = {},
                                     double step = 1e-6);

std::vector<TangentPair> random_tangent_pairs(int n, int count, std::uint64_t seed);

}  // namespace gztower
