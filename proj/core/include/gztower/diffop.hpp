#pragma once

// First-order differential operators on Q[g_{ij}] and the left/right
// differentiation realization of the momentum maps:
//   ∇_L^{ij} = Σ_k g_{ki} ∂/∂g_{kj},   ∇_R^{ij} = −Σ_k g_{jk} ∂/∂g_{ik}.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gztower/poisson.hpp"

namespace gztower {

class PolyDiffOp {
 public:
  using Term = std::pair<PoissonPoly, Symbol>;  // coefficient · ∂/∂(symbol)

  explicit PolyDiffOp(int n) : n_(n) {}

  void add(PoissonPoly coefficient, Symbol g_entry);

  int ambient_size() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }

  PoissonPoly apply(const PoissonPoly& f) const;

 private:
  int n_;
  std::vector<Term> terms_;
};

PolyDiffOp nabla_left(int n, int i, int j);
PolyDiffOp nabla_right(int n, int i, int j);

/// [X, Y] f = X(Y f) − Y(X f).
PoissonPoly apply_commutator(const PolyDiffOp& x, const PolyDiffOp& y, const PoissonPoly& f);

/// Random polynomial in the g entries with total degree ≤ max_degree and
/// small rational coefficients.
PoissonPoly random_g_polynomial(int n, int max_degree, int terms, std::mt19937_64& rng);

struct DiffOpReport {
  int n = 0;
  int trials = 0;
  std::size_t relations_checked = 0;
  bool ok = true;
  std::string witness;
};

/// Checks [∇^{ij}, ∇^{kl}] = δ_{jk}∇^{il} − δ_{li}∇^{kj} for both copies and
/// [∇_L, ∇_R] = 0 on random polynomials, exactly.
DiffOpReport diffop_realization_check(int n, int trials, std::uint64_t seed);

}  // namespace gztower
