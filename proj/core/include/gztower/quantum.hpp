#pragma once

// PBW-normal-ordered arithmetic in U(gl_N) ⊗ U(gl_N) with coefficients in
// Q[λ], quantum determinants and the nested quantum Gelfand-Zetlin family.
//
// Generators E^L_{ij}, E^R_{ij} obey [E_{ij}, E_{kl}] = δ_{jk} E_{il} − δ_{li} E_{kj}
// inside each copy; the two copies commute. A word is in normal form when its
// letters are weakly increasing in (copy, i, j).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "gztower/poisson.hpp"

namespace gztower {

enum class Copy : std::uint8_t { L = 0, R = 1 };

/// Letter E^{copy}_{ij}, packed so integer order is PBW order.
class QGen {
 public:
  constexpr QGen() = default;
  constexpr QGen(Copy copy, int i, int j)
      : code_(static_cast<std::uint16_t>((static_cast<unsigned>(copy) << 12) |
                                         (static_cast<unsigned>(i) << 6) |
                                         static_cast<unsigned>(j))) {}

  constexpr Copy copy() const { return static_cast<Copy>(code_ >> 12); }
  constexpr int i() const { return (code_ >> 6) & 0x3f; }
  constexpr int j() const { return code_ & 0x3f; }
  constexpr std::uint16_t code() const { return code_; }

  friend constexpr bool operator==(QGen a, QGen b) { return a.code_ == b.code_; }
  friend constexpr bool operator<(QGen a, QGen b) { return a.code_ < b.code_; }
  friend constexpr bool operator>(QGen a, QGen b) { return b < a; }

  std::string to_string() const;

 private:
  std::uint16_t code_ = 0;
};

using Word = std::vector<QGen>;

/// Dense polynomial in λ over Q; coefficient k multiplies λ^k, trailing zeros trimmed.
class LambdaPoly {
 public:
  LambdaPoly() = default;
  explicit LambdaPoly(const Rational& c);
  static LambdaPoly lambda();

  const std::vector<Rational>& coefficients() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Rational coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }

  LambdaPoly& operator+=(const LambdaPoly& o);
  LambdaPoly& operator-=(const LambdaPoly& o);
  friend LambdaPoly operator+(LambdaPoly a, const LambdaPoly& b) { return a += b; }
  friend LambdaPoly operator-(LambdaPoly a, const LambdaPoly& b) { return a -= b; }
  friend LambdaPoly operator*(const LambdaPoly& a, const LambdaPoly& b);
  friend LambdaPoly operator*(LambdaPoly a, const Rational& s);
  friend bool operator==(const LambdaPoly& a, const LambdaPoly& b) { return a.c_ == b.c_; }

  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Rational linear combination of normal-ordered words.
using WordExpansion = std::map<Word, Rational>;

/// Rewrites a word to PBW normal form. Results are cached per thread; the
/// cache maps each word to its unique normal form, so sharing is idempotent.
const WordExpansion& normal_order(const Word& word);

class NCPoly {
 public:
  using TermMap = std::map<Word, LambdaPoly>;

  explicit NCPoly(int ambient_size = 1);

  static NCPoly constant(int n, const LambdaPoly& c);
  static NCPoly generator(int n, Copy copy, int i, int j);

  int ambient_size() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds c · word after normal ordering `word`.
  void add_word(const Word& word, const LambdaPoly& c);

  NCPoly& operator+=(const NCPoly& o);
  NCPoly& operator-=(const NCPoly& o);
  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator*(NCPoly a, const Rational& s);
  friend bool operator==(const NCPoly& a, const NCPoly& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  /// Coefficients of λ^k (each free of λ).
  std::vector<NCPoly> lambda_coefficients() const;

  /// Every stored word is weakly increasing.
  bool is_normal_ordered() const;

  /// Commutative image: E^L → u, E^R → ũ, λ kept.
  PoissonPoly classical_image() const;

  std::string to_string() const;

 private:
  void add_normal(const Word& word, const LambdaPoly& c);

  int n_;
  TermMap terms_;
};

/// Product rewritten to PBW normal form.
NCPoly nc_mul(const NCPoly& a, const NCPoly& b);

NCPoly commutator(const NCPoly& a, const NCPoly& b);

/// ρ^{(m)}_c = (m − 2c + 1)/2.
Rational rho_shift(int m, int c);

enum class RhoConvention {
  /// The k×k minor uses ρ^{(k)}.
  Local,
  /// The k×k minor uses ρ^{(N)} restricted to its first k indices.
  Ambient,
};

std::string to_string(RhoConvention c);

/// Σ_{p∈S_k} sign(p) ∏_{c=1..k} (λ − ρ_c − E)_{p(c),c}, factors in increasing
/// column order, on the top-left k×k block of the chosen copy.
NCPoly qdet(int n, Copy copy, int k, RhoConvention convention = RhoConvention::Local);

struct QuantumMember {
  std::string label;
  NCPoly poly;
  char side = 'L';
  int k = 0;
  int lambda_power = 0;
};

/// λ-coefficients of qdet(L,k), qdet(R,k) for k < N and qdet(L,N), constants dropped.
std::vector<QuantumMember> quantum_family(int n, RhoConvention convention = RhoConvention::Local);

struct QuantumConventionResult {
  RhoConvention convention = RhoConvention::Local;
  bool centrality_ok = false;
  bool family_ok = false;
  std::size_t centrality_checks = 0;
  std::size_t pairs_checked = 0;
  std::optional<std::string> witness;
};

struct QuantumReport {
  int n = 0;
  std::vector<QuantumConventionResult> conventions;
  /// First convention under which every check passed.
  std::optional<RhoConvention> validated;
  bool ok = false;
};

struct QuantumOptions {
  /// N ≥ 4 is refused unless set; PBW rewriting cost grows steeply.
  bool allow_large = false;
  /// Try the ambient convention even when the local one validates.
  bool sweep_all = true;
};

/// Centrality of the full qdet coefficients against every E_{ij} of their
/// copy, plus pairwise commutativity of the nested family.
QuantumReport verify_quantum_commutes(int n, const QuantumOptions& options = {});

}  // namespace gztower
