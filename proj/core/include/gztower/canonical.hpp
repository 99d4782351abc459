#pragma once

// Numerical realization of T*GL(N) in canonical coordinates (g, p) with
// {g_{ij}, p_{kl}} = δ_{ik} δ_{jl}. This is the independent oracle against
// which the exact bracket engine is checked.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gztower/poisson.hpp"

namespace gztower {

class CanonicalPoint {
 public:
  static constexpr double kDefaultDetThreshold = 1e-8;

  /// Validates |det g| > det_threshold.
  CanonicalPoint(CMatrix g, CMatrix p, double det_threshold = kDefaultDetThreshold);

  /// Skips validation; used for finite-difference stencils around a valid point.
  static CanonicalPoint unchecked(CMatrix g, CMatrix p);

  int n() const { return static_cast<int>(g_.rows()); }
  const CMatrix& g() const { return g_; }
  const CMatrix& p() const { return p_; }

 private:
  CanonicalPoint() = default;
  CMatrix g_;
  CMatrix p_;
};

/// Left momentum map u^{ij} = Σ_k p_{ki} g_{kj}, i.e. u = pᵀg.
CMatrix u_as_canonical(const CanonicalPoint& pt);

/// Right momentum map ũ^{ij} = −Σ_k g_{ik} p_{jk}, i.e. ũ = −g pᵀ.
CMatrix utilde_as_canonical(const CanonicalPoint& pt);

/// ũ = kConjugationSign · g u g⁻¹ for the adopted realization.
inline constexpr int kConjugationSign = -1;

SymbolValues symbol_values(const CanonicalPoint& pt, cplx lambda = {}, cplx mu = {});

cplx evaluate(const PoissonPoly& poly, const CanonicalPoint& pt, cplx lambda = {}, cplx mu = {});

using PointFunction = std::function<cplx(const CanonicalPoint&)>;

/// {f,h} = Σ ∂f/∂g ∂h/∂p − ∂f/∂p ∂h/∂g by central differences with step
/// rel_step · max(1, |coordinate|). Throws NonFinite on non-finite values.
cplx canonical_bracket(const PointFunction& f, const PointFunction& h, const CanonicalPoint& pt,
                       double rel_step = 1e-6);

/// Function evaluating a polynomial at a canonical point.
PointFunction as_point_function(const PoissonPoly& poly, cplx lambda = {}, cplx mu = {});

/// Entries standard complex Gaussian; g resampled until |det g| exceeds the threshold.
CanonicalPoint random_canonical_point(int n, std::mt19937_64& rng,
                                      double det_threshold = CanonicalPoint::kDefaultDetThreshold);

CMatrix random_complex_matrix(int rows, int cols, std::mt19937_64& rng);

/// One candidate pair of momentum-map formulas in the realization sweep.
struct RealizationCandidate {
  std::string u_formula;
  std::string utilde_formula;
  /// Largest |oracle bracket − exact bracket| over all generator pairs and points.
  double max_defect = 0.0;
  bool satisfies_relations = false;
  /// +1 or −1 when ũ = ±g u g⁻¹ holds for the candidate, 0 otherwise.
  int conjugation_sign = 0;
};

/// Tries u ∈ {±gᵀp, ±pᵀg} against ũ ∈ {±g pᵀ, ±p gᵀ} and reports, for each
/// combination, whether every generator bracket of the exact engine is
/// reproduced by the canonical oracle.
std::vector<RealizationCandidate> realization_sweep(int n, std::uint64_t seed, int points = 3,
                                                    double tolerance = 1e-6);

}  // namespace gztower
