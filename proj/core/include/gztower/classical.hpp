#pragma once

// Classical commuting families on T*GL(N): Gelfand-Zetlin principal and
// corner minors, the Mishchenko-Fomenko shift-of-argument family and the
// trivial family built from g⁻¹ and the momentum maps.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gztower/canonical.hpp"
#include "gztower/poisson.hpp"

namespace gztower {

enum class FamilyKind { GzPrincipal, GzCorner, MfShift, Trivial };
enum class Side { Left, Right, Both };
enum class MatrixSide { U, UTilde };

std::string to_string(FamilyKind kind);
std::string to_string(Side side);

struct FamilySpec {
  FamilyKind kind = FamilyKind::GzPrincipal;
  int n = 2;
  Side side = Side::Both;
  /// Row-major n×n exact shift matrix; present iff kind == MfShift.
  std::optional<std::vector<Rational>> shift_matrix;

  /// Throws InvalidArgument when the shift-matrix presence rule is violated.
  void validate() const;
};

struct FamilyMember {
  std::string label;
  PoissonPoly poly;
  // Minor families: which minor (side 'L', 'R' or 'N', size k) and the power
  // of λ. MF: the (λ, μ) bi-degree with k unused.
  char side = 'L';
  int k = 0;
  int lambda_power = 0;
  int mu_power = 0;
};

struct CommutingFamily {
  FamilySpec spec;
  std::vector<FamilyMember> members;
  /// Set for the trivial family, whose members are rational in g and are only
  /// checked numerically.
  bool numeric_only = false;
};

/// det of the k×k principal (rows/cols 1..k) or left-lower corner (rows
/// N−k+1..N, cols 1..k) submatrix of (λ − M); λ enters where row == col.
PoissonPoly char_minor(int n, MatrixSide side, int k, bool corner);

/// det(u − μA − λ) expanded over λ and μ.
PoissonPoly mf_polynomial(int n, const std::vector<Rational>& shift_matrix);

CommutingFamily build_family(const FamilySpec& spec);

struct CommuteReport {
  std::size_t pairs_checked = 0;
  std::size_t max_nonzero_terms = 0;
  bool ok = true;
  /// First nonzero bracket found, if any.
  std::optional<std::string> witness_pair;
  std::optional<std::string> witness_terms;
};

/// Exact pairwise brackets; a nonzero bracket is reported, not thrown.
CommuteReport verify_commutes(const CommutingFamily& family);

/// I^u_{ij} = Σ_m (g⁻¹)_{im} M_{mj} for M = u or ũ.
cplx trivial_function(const CanonicalPoint& pt, int i, int j, MatrixSide side);

struct TrivialReport {
  int n = 0;
  int points = 0;
  double max_abs_bracket = 0.0;
  double tolerance = 1e-5;
  bool ok = false;
  MatrixSide side = MatrixSide::UTilde;
};

/// Pairwise canonical brackets of the N² trivial functions at random points.
/// Under the adopted realization g⁻¹ũ = −pᵀ commutes while g⁻¹u does not.
TrivialReport verify_trivial_numeric(int n, int pt_count, std::uint64_t seed,
                                     MatrixSide side = MatrixSide::UTilde, double tolerance = 1e-5);

/// Numerical rank (singular values above rel_threshold × largest) of the
/// Jacobian of the family with respect to the 2N² coordinates (g, p).
int independence_rank(const CommutingFamily& family, const CanonicalPoint& pt,
                      double rel_threshold = 1e-8);

/// Random rational matrix with entries p/q, |p| ≤ 9, 1 ≤ q ≤ 5.
std::vector<Rational> random_rational_matrix(int n, std::mt19937_64& rng);

}  // namespace gztower
