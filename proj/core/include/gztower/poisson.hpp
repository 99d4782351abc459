#pragma once

// Exact polynomial Poisson algebra on the coordinates (u, ũ, g) of T*GL(N).
//
// Polynomials carry big-rational coefficients and live over the alphabet
// {u^{ij}, ũ^{ij}, g_{ij}} plus two central formal variables λ and μ. The
// bracket is the Leibniz extension of the generator relations
//
//   {u^{ij}, u^{kl}} = δ_{jk} u^{il} − δ_{li} u^{kj}
//   {ũ^{ij}, ũ^{kl}} = δ_{jk} ũ^{il} − δ_{li} ũ^{kj}
//   {u^{ij}, ũ^{kl}} = 0
//   {u^{ij}, g_{kl}} = −δ_{il} g_{kj}
//   {ũ^{ij}, g_{kl}} = δ_{jk} g_{il}
//   {g_{ij}, g_{kl}} = 0
//
// The sign of {u, g} is the one for which the Jacobi identity holds together
// with the gl_N relation for u; it is realized by u = pᵀg, ũ = −g pᵀ in
// canonical coordinates (see canonical.hpp).

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

namespace gztower {

using Rational = mpq_class;
using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

enum class SymbolKind : std::uint8_t { U = 0, UTilde = 1, G = 2, Lambda = 3, Mu = 4 };

/// A generator u^{ij}, ũ^{ij}, g_{ij} (1-based indices) or one of the central
/// variables λ, μ. Packed so that integer order is (kind, row, col) order.
class Symbol {
 public:
  constexpr Symbol() = default;
  constexpr Symbol(SymbolKind kind, int row, int col)
      : code_((static_cast<std::uint32_t>(kind) << 16) |
              (static_cast<std::uint32_t>(row) << 8) | static_cast<std::uint32_t>(col)) {}

  static constexpr Symbol u(int i, int j) { return {SymbolKind::U, i, j}; }
  static constexpr Symbol utilde(int i, int j) { return {SymbolKind::UTilde, i, j}; }
  static constexpr Symbol g(int i, int j) { return {SymbolKind::G, i, j}; }
  static constexpr Symbol lambda() { return {SymbolKind::Lambda, 0, 0}; }
  static constexpr Symbol mu() { return {SymbolKind::Mu, 0, 0}; }

  constexpr SymbolKind kind() const { return static_cast<SymbolKind>(code_ >> 16); }
  constexpr int row() const { return static_cast<int>((code_ >> 8) & 0xffu); }
  constexpr int col() const { return static_cast<int>(code_ & 0xffu); }
  constexpr std::uint32_t code() const { return code_; }
  constexpr bool is_central() const {
    return kind() == SymbolKind::Lambda || kind() == SymbolKind::Mu;
  }

  friend constexpr bool operator==(Symbol a, Symbol b) { return a.code_ == b.code_; }
  friend constexpr bool operator<(Symbol a, Symbol b) { return a.code_ < b.code_; }

  std::string to_string() const;

 private:
  std::uint32_t code_ = 0;
};

/// Commutative monomial: symbols sorted ascending, each with a positive power.
class Monomial {
 public:
  using Factor = std::pair<Symbol, std::uint32_t>;

  Monomial() = default;
  explicit Monomial(Symbol s, std::uint32_t power = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  std::uint32_t degree() const { return degree_; }
  std::uint32_t power_of(Symbol s) const;
  bool is_one() const { return factors_.empty(); }

  Monomial operator*(const Monomial& other) const;
  /// Divides by one power of `s`; `s` must occur.
  Monomial without_one(Symbol s) const;
  /// Removes `s` entirely.
  Monomial without(Symbol s) const;

  /// Graded lexicographic order on (kind, row, col).
  friend bool operator<(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.factors_ == b.factors_;
  }

  std::string to_string() const;

 private:
  std::vector<Factor> factors_;
  std::uint32_t degree_ = 0;
};

/// Numerical values substituted by `evaluate`.
struct SymbolValues {
  CMatrix u;
  CMatrix utilde;
  CMatrix g;
  cplx lambda{0.0, 0.0};
  cplx mu{0.0, 0.0};

  cplx value(Symbol s) const;
};

class PoissonPoly {
 public:
  using TermMap = std::map<Monomial, Rational>;

  explicit PoissonPoly(int ambient_size = 1);

  static PoissonPoly constant(int n, const Rational& c);
  static PoissonPoly symbol(int n, Symbol s);

  int ambient_size() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::uint32_t degree() const;

  void add_term(const Monomial& m, const Rational& c);

  PoissonPoly& operator+=(const PoissonPoly& other);
  PoissonPoly& operator-=(const PoissonPoly& other);
  PoissonPoly& operator*=(const Rational& c);
  PoissonPoly operator-() const;

  friend PoissonPoly operator+(PoissonPoly a, const PoissonPoly& b) { return a += b; }
  friend PoissonPoly operator-(PoissonPoly a, const PoissonPoly& b) { return a -= b; }
  friend PoissonPoly operator*(const PoissonPoly& a, const PoissonPoly& b);
  friend PoissonPoly operator*(PoissonPoly a, const Rational& c) { return a *= c; }
  friend PoissonPoly operator*(const Rational& c, PoissonPoly a) { return a *= c; }
  friend bool operator==(const PoissonPoly& a, const PoissonPoly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  PoissonPoly derivative(Symbol s) const;

  /// Coefficients of the powers of a central variable: result[k] multiplies s^k.
  std::vector<PoissonPoly> coefficients_in(Symbol s) const;

  /// Part of total degree `d` in the non-central generators.
  PoissonPoly homogeneous_part(std::uint32_t d) const;

  cplx evaluate(const SymbolValues& values) const;

  std::string to_string() const;

 private:
  int n_;
  TermMap terms_;
};

/// Bracket of two generators as a linear combination of generators.
std::vector<std::pair<int, Symbol>> symbol_bracket(Symbol a, Symbol b);

/// Leibniz extension of `symbol_bracket`; exact.
PoissonPoly bracket(const PoissonPoly& a, const PoissonPoly& b);

/// Matrix whose (i,j) entry is the generator of `kind` with indices (i+1, j+1).
std::vector<std::vector<PoissonPoly>> symbol_matrix(int n, SymbolKind kind);

/// Exact determinant by Laplace expansion with memoized column subsets.
PoissonPoly determinant(const std::vector<std::vector<PoissonPoly>>& m);

}  // namespace gztower
