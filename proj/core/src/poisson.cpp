#include "gztower/poisson.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "gztower/error.hpp"

namespace gztower {

std::string Symbol::to_string() const {
  std::ostringstream os;
  switch (kind()) {
    case SymbolKind::U: os << "u" << row() << col(); break;
    case SymbolKind::UTilde: os << "ut" << row() << col(); break;
    case SymbolKind::G: os << "g" << row() << col(); break;
    case SymbolKind::Lambda: os << "lambda"; break;
    case SymbolKind::Mu: os << "mu"; break;
  }
  return os.str();
}

Monomial::Monomial(Symbol s, std::uint32_t power) {
  if (power > 0) {
    factors_.emplace_back(s, power);
    degree_ = power;
  }
}

std::uint32_t Monomial::power_of(Symbol s) const {
  for (const auto& [sym, p] : factors_) {
    if (sym == s) return p;
  }
  return 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  r.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() && b != other.factors_.end()) {
    if (a->first < b->first) {
      r.factors_.push_back(*a++);
    } else if (b->first < a->first) {
      r.factors_.push_back(*b++);
    } else {
      r.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  r.factors_.insert(r.factors_.end(), a, factors_.end());
  r.factors_.insert(r.factors_.end(), b, other.factors_.end());
  r.degree_ = degree_ + other.degree_;
  return r;
}

Monomial Monomial::without_one(Symbol s) const {
  Monomial r = *this;
  for (auto it = r.factors_.begin(); it != r.factors_.end(); ++it) {
    if (it->first == s) {
      if (--it->second == 0) r.factors_.erase(it);
      --r.degree_;
      return r;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "symbol not present in monomial");
}

Monomial Monomial::without(Symbol s) const {
  Monomial r;
  for (const auto& f : factors_) {
    if (!(f.first == s)) {
      r.factors_.push_back(f);
      r.degree_ += f.second;
    }
  }
  return r;
}

bool operator<(const Monomial& a, const Monomial& b) {
  if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
  const std::size_t n = std::min(a.factors_.size(), b.factors_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& fa = a.factors_[i];
    const auto& fb = b.factors_[i];
    if (fa.first == fb.first) {
      if (fa.second != fb.second) return fa.second < fb.second;
      continue;
    }
    // The earlier variable carries positive weight only in the monomial that
    // has it, which makes that monomial the larger one.
    return fb.first < fa.first;
  }
  return false;
}

std::string Monomial::to_string() const {
  if (factors_.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) s += "*";
    s += factors_[i].first.to_string();
    if (factors_[i].second > 1) s += "^" + std::to_string(factors_[i].second);
  }
  return s;
}

cplx SymbolValues::value(Symbol s) const {
  switch (s.kind()) {
    case SymbolKind::U: return u(s.row() - 1, s.col() - 1);
    case SymbolKind::UTilde: return utilde(s.row() - 1, s.col() - 1);
    case SymbolKind::G: return g(s.row() - 1, s.col() - 1);
    case SymbolKind::Lambda: return lambda;
    case SymbolKind::Mu: return mu;
  }
  return {};
}

PoissonPoly::PoissonPoly(int ambient_size) : n_(ambient_size) {
  if (ambient_size < 1 || ambient_size > 255) {
    throw Error(ErrorCode::InvalidArgument, "ambient size must be in 1..255");
  }
}

PoissonPoly PoissonPoly::constant(int n, const Rational& c) {
  PoissonPoly p(n);
  p.add_term(Monomial{}, c);
  return p;
}

PoissonPoly PoissonPoly::symbol(int n, Symbol s) {
  if (!s.is_central() && (s.row() < 1 || s.row() > n || s.col() < 1 || s.col() > n)) {
    throw Error(ErrorCode::InvalidArgument, "generator index outside 1..N");
  }
  PoissonPoly p(n);
  p.add_term(Monomial(s), Rational(1));
  return p;
}

std::uint32_t PoissonPoly::degree() const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

void PoissonPoly::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

static void check_sizes(const PoissonPoly& a, const PoissonPoly& b) {
  if (a.ambient_size() != b.ambient_size()) {
    throw Error(ErrorCode::MismatchedAmbientSize,
                "ambient sizes " + std::to_string(a.ambient_size()) + " and " +
                    std::to_string(b.ambient_size()));
  }
}

PoissonPoly& PoissonPoly::operator+=(const PoissonPoly& other) {
  check_sizes(*this, other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

PoissonPoly& PoissonPoly::operator-=(const PoissonPoly& other) {
  check_sizes(*this, other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

PoissonPoly& PoissonPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

PoissonPoly PoissonPoly::operator-() const {
  PoissonPoly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

PoissonPoly operator*(const PoissonPoly& a, const PoissonPoly& b) {
  check_sizes(a, b);
  PoissonPoly r(a.n_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  }
  return r;
}

PoissonPoly PoissonPoly::derivative(Symbol s) const {
  PoissonPoly r(n_);
  for (const auto& [m, c] : terms_) {
    const std::uint32_t p = m.power_of(s);
    if (p == 0) continue;
    r.add_term(m.without_one(s), c * p);
  }
  return r;
}

std::vector<PoissonPoly> PoissonPoly::coefficients_in(Symbol s) const {
  std::vector<PoissonPoly> out;
  for (const auto& [m, c] : terms_) {
    const std::uint32_t p = m.power_of(s);
    while (out.size() <= p) out.emplace_back(n_);
    out[p].add_term(m.without(s), c);
  }
  if (out.empty()) out.emplace_back(n_);
  return out;
}

PoissonPoly PoissonPoly::homogeneous_part(std::uint32_t d) const {
  PoissonPoly r(n_);
  for (const auto& [m, c] : terms_) {
    std::uint32_t deg = 0;
    for (const auto& [s, p] : m.factors()) {
      if (!s.is_central()) deg += p;
    }
    if (deg == d) r.add_term(m, c);
  }
  return r;
}

cplx PoissonPoly::evaluate(const SymbolValues& values) const {
  cplx total{0.0, 0.0};
  for (const auto& [m, c] : terms_) {
    cplx t{c.get_d(), 0.0};
    for (const auto& [s, p] : m.factors()) {
      const cplx v = values.value(s);
      for (std::uint32_t k = 0; k < p; ++k) t *= v;
    }
    total += t;
  }
  return total;
}

std::string PoissonPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    if (!first) s += sgn(c) < 0 ? " - " : " + ";
    else if (sgn(c) < 0) s += "-";
    first = false;
    const Rational a = abs(c);
    if (m.is_one()) {
      s += a.get_str();
    } else {
      if (a != 1) s += a.get_str() + "*";
      s += m.to_string();
    }
  }
  return s;
}

std::vector<std::pair<int, Symbol>> symbol_bracket(Symbol a, Symbol b) {
  std::vector<std::pair<int, Symbol>> out;
  if (a.is_central() || b.is_central()) return out;
  const SymbolKind ka = a.kind();
  const SymbolKind kb = b.kind();
  const int i = a.row(), j = a.col(), k = b.row(), l = b.col();

  if (ka == kb && (ka == SymbolKind::U || ka == SymbolKind::UTilde)) {
    if (j == k) out.emplace_back(1, Symbol(ka, i, l));
    if (l == i) out.emplace_back(-1, Symbol(ka, k, j));
    return out;
  }
  if (ka == SymbolKind::U && kb == SymbolKind::G) {
    if (i == l) out.emplace_back(-1, Symbol::g(k, j));
    return out;
  }
  if (ka == SymbolKind::G && kb == SymbolKind::U) {
    for (auto& [c, s] : symbol_bracket(b, a)) out.emplace_back(-c, s);
    return out;
  }
  if (ka == SymbolKind::UTilde && kb == SymbolKind::G) {
    if (j == k) out.emplace_back(1, Symbol::g(i, l));
    return out;
  }
  if (ka == SymbolKind::G && kb == SymbolKind::UTilde) {
    for (auto& [c, s] : symbol_bracket(b, a)) out.emplace_back(-c, s);
    return out;
  }
  return out;
}

PoissonPoly bracket(const PoissonPoly& a, const PoissonPoly& b) {
  check_sizes(a, b);
  PoissonPoly r(a.ambient_size());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      for (const auto& [x, ex] : ma.factors()) {
        if (x.is_central()) continue;
        const Monomial rest_a = ma.without_one(x);
        for (const auto& [y, ey] : mb.factors()) {
          const auto lin = symbol_bracket(x, y);
          if (lin.empty()) continue;
          const Monomial rest = rest_a * mb.without_one(y);
          const Rational scale = ca * cb * ex * ey;
          for (const auto& [c, s] : lin) r.add_term(rest * Monomial(s), scale * c);
        }
      }
    }
  }
  return r;
}

std::vector<std::vector<PoissonPoly>> symbol_matrix(int n, SymbolKind kind) {
  std::vector<std::vector<PoissonPoly>> m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i].push_back(PoissonPoly::symbol(n, Symbol(kind, i + 1, j + 1)));
  }
  return m;
}

namespace {

class LaplaceExpansion {
 public:
  explicit LaplaceExpansion(const std::vector<std::vector<PoissonPoly>>& m) : m_(m) {}

  // Determinant of rows [row, size) against the columns in `mask`.
  PoissonPoly minor(std::size_t row, std::uint32_t mask) {
    const int n = m_[0][0].ambient_size();
    if (row == m_.size()) return PoissonPoly::constant(n, 1);
    if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
    PoissonPoly total(n);
    int sign = 1;
    for (std::size_t c = 0; c < m_.size(); ++c) {
      if (!(mask & (1u << c))) continue;  // sign alternates over remaining columns only
      const PoissonPoly& entry = m_[row][c];
      if (!entry.is_zero()) {
        PoissonPoly term = entry * minor(row + 1, mask & ~(1u << c));
        if (sign > 0) total += term;
        else total -= term;
      }
      sign = -sign;
    }
    memo_.emplace(mask, total);
    return total;
  }

 private:
  const std::vector<std::vector<PoissonPoly>>& m_;
  std::unordered_map<std::uint32_t, PoissonPoly> memo_;
};

}  // namespace

PoissonPoly determinant(const std::vector<std::vector<PoissonPoly>>& m) {
  if (m.empty()) throw Error(ErrorCode::InvalidArgument, "empty matrix");
  for (const auto& row : m) {
    if (row.size() != m.size()) throw Error(ErrorCode::InvalidArgument, "matrix not square");
  }
  if (m.size() > 16) throw Error(ErrorCode::InvalidArgument, "matrix too large for Laplace expansion");
  LaplaceExpansion expansion(m);
  return expansion.minor(0, (1u << m.size()) - 1);
}

}  // namespace gztower
