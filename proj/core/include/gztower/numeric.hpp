#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace gztower {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// Polynomial with complex coefficients; c[k] multiplies λ^k.
struct ComplexPoly {
  std::vector<cplx> c;

  int degree() const;
  cplx operator()(cplx z) const;
  ComplexPoly derivative() const;
  cplx leading() const;
};

ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b);
ComplexPoly operator+(const ComplexPoly& a, const ComplexPoly& b);
ComplexPoly operator-(const ComplexPoly& a, const ComplexPoly& b);

/// Faddeev-LeVerrier: det(λ − M) = Σ_k coeffs[k] λ^{n−k} with coeffs[0] = 1,
/// and adj(λ − M) = Σ_{k=1..n} adj[k−1] λ^{n−k}. Hence
/// ∂coeffs[k]/∂M_{ab} = −adj[k−1](b, a).
struct CharPoly {
  std::vector<cplx> coeffs;
  std::vector<CMatrix> adj;

  ComplexPoly as_poly() const;
};

CharPoly characteristic_polynomial(const CMatrix& m);

/// Roots as eigenvalues of the companion matrix, each polished by Newton steps.
std::vector<cplx> polynomial_roots(const ComplexPoly& p);

/// det of (λ·[rows[r] == cols[c]] − m(rows[r], cols[c])) as a polynomial in λ.
ComplexPoly lambda_minor(const CMatrix& m, std::span<const int> rows, std::span<const int> cols);

double min_pairwise_distance(std::span<const cplx> pts);
double min_cross_distance(std::span<const cplx> a, std::span<const cplx> b);

/// Assigns each point of `current` to a distinct point of `reference` by
/// nearest neighbour; returns `current` permuted into reference order, or an
/// empty vector when the assignment is not a bijection.
std::vector<cplx> match_to_reference(std::span<const cplx> reference, std::span<const cplx> current);

/// log z on the branch closest to `reference`.
cplx log_near(cplx z, cplx reference);

/// The branch of `value` + 2πi·m closest to `reference`.
cplx unwrap_2pi_i(cplx value, cplx reference);

}  // namespace gztower
