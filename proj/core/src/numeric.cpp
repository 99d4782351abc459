#include "gztower/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_map>

#include <Eigen/Eigenvalues>

#include "gztower/error.hpp"

namespace gztower {

int ComplexPoly::degree() const {
  for (std::size_t k = c.size(); k-- > 0;) {
    if (c[k] != cplx(0.0, 0.0)) return static_cast<int>(k);
  }
  return -1;
}

cplx ComplexPoly::operator()(cplx z) const {
  cplx acc{0.0, 0.0};
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
  return acc;
}

ComplexPoly ComplexPoly::derivative() const {
  ComplexPoly d;
  for (std::size_t k = 1; k < c.size(); ++k) d.c.push_back(c[k] * static_cast<double>(k));
  return d;
}

cplx ComplexPoly::leading() const {
  const int d = degree();
  return d < 0 ? cplx{} : c[static_cast<std::size_t>(d)];
}

ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b) {
  ComplexPoly r;
  if (a.c.empty() || b.c.empty()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, cplx{});
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  }
  return r;
}

ComplexPoly operator+(const ComplexPoly& a, const ComplexPoly& b) {
  ComplexPoly r;
  r.c.assign(std::max(a.c.size(), b.c.size()), cplx{});
  for (std::size_t k = 0; k < a.c.size(); ++k) r.c[k] += a.c[k];
  for (std::size_t k = 0; k < b.c.size(); ++k) r.c[k] += b.c[k];
  return r;
}

ComplexPoly operator-(const ComplexPoly& a, const ComplexPoly& b) {
  ComplexPoly r;
  r.c.assign(std::max(a.c.size(), b.c.size()), cplx{});
  for (std::size_t k = 0; k < a.c.size(); ++k) r.c[k] += a.c[k];
  for (std::size_t k = 0; k < b.c.size(); ++k) r.c[k] -= b.c[k];
  return r;
}

ComplexPoly CharPoly::as_poly() const {
  const std::size_t n = coeffs.size() - 1;
  ComplexPoly p;
  p.c.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) p.c[n - k] = coeffs[k];
  return p;
}

CharPoly characteristic_polynomial(const CMatrix& m) {
  const Eigen::Index n = m.rows();
  CharPoly out;
  out.coeffs.push_back(cplx(1.0, 0.0));
  CMatrix mk = CMatrix::Zero(n, n);
  const CMatrix id = CMatrix::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    mk = m * mk + out.coeffs.back() * id;
    out.adj.push_back(mk);
    out.coeffs.push_back(-(m * mk).trace() / static_cast<double>(k));
  }
  return out;
}

std::vector<cplx> polynomial_roots(const ComplexPoly& p) {
  const int d = p.degree();
  if (d < 0) throw Error(ErrorCode::InvalidArgument, "zero polynomial has no isolated roots");
  if (d == 0) return {};
  const cplx lead = p.c[static_cast<std::size_t>(d)];
  CMatrix companion = CMatrix::Zero(d, d);
  for (int k = 1; k < d; ++k) companion(k, k - 1) = 1.0;
  for (int k = 0; k < d; ++k) companion(k, d - 1) = -p.c[static_cast<std::size_t>(k)] / lead;
  Eigen::ComplexEigenSolver<CMatrix> solver(companion, false);
  std::vector<cplx> roots(solver.eigenvalues().data(), solver.eigenvalues().data() + d);

  const ComplexPoly dp = p.derivative();
  for (cplx& z : roots) {
    double last = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 8; ++it) {
      const cplx dv = dp(z);
      if (std::abs(dv) == 0.0) break;
      const cplx step = p(z) / dv;
      if (!(std::abs(step) < last)) break;
      last = std::abs(step);
      z -= step;
      if (last <= 1e-16 * std::max(1.0, std::abs(z))) break;
    }
  }
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

namespace {

class MinorExpansion {
 public:
  MinorExpansion(const CMatrix& m, std::span<const int> rows, std::span<const int> cols)
      : m_(m), rows_(rows), cols_(cols) {}

  ComplexPoly minor(std::size_t r, std::uint32_t mask) {
    if (r == rows_.size()) return ComplexPoly{{cplx(1.0, 0.0)}};
    if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
    ComplexPoly total{{cplx{}}};
    double sign = 1.0;
    for (std::size_t c = 0; c < cols_.size(); ++c) {
      if (!(mask & (1u << c))) continue;
      ComplexPoly entry{{-m_(rows_[r], cols_[c])}};
      if (rows_[r] == cols_[c]) entry.c.push_back(cplx(1.0, 0.0));
      ComplexPoly term = entry * minor(r + 1, mask & ~(1u << c));
      for (auto& v : term.c) v *= sign;
      total = total + term;
      sign = -sign;
    }
    memo_.emplace(mask, total);
    return total;
  }

 private:
  const CMatrix& m_;
  std::span<const int> rows_;
  std::span<const int> cols_;
  std::unordered_map<std::uint32_t, ComplexPoly> memo_;
};

}  // namespace

ComplexPoly lambda_minor(const CMatrix& m, std::span<const int> rows, std::span<const int> cols) {
  if (rows.size() != cols.size()) throw Error(ErrorCode::InvalidArgument, "minor must be square");
  if (rows.empty()) return ComplexPoly{{cplx(1.0, 0.0)}};
  MinorExpansion e(m, rows, cols);
  ComplexPoly p = e.minor(0, (1u << cols.size()) - 1);
  while (p.c.size() > 1 && p.c.back() == cplx{}) p.c.pop_back();
  return p;
}

double min_pairwise_distance(std::span<const cplx> pts) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) best = std::min(best, std::abs(pts[a] - pts[b]));
  }
  return best;
}

double min_cross_distance(std::span<const cplx> a, std::span<const cplx> b) {
  double best = std::numeric_limits<double>::infinity();
  for (cplx x : a) {
    for (cplx y : b) best = std::min(best, std::abs(x - y));
  }
  return best;
}

std::vector<cplx> match_to_reference(std::span<const cplx> reference, std::span<const cplx> current) {
  if (reference.size() != current.size()) return {};
  std::vector<cplx> out(reference.size());
  std::vector<bool> used(reference.size(), false);
  for (cplx z : current) {
    std::size_t best = reference.size();
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < reference.size(); ++k) {
      const double d = std::abs(z - reference[k]);
      if (d < dist) {
        dist = d;
        best = k;
      }
    }
    if (best == reference.size() || used[best]) return {};
    used[best] = true;
    out[best] = z;
  }
  return out;
}

cplx unwrap_2pi_i(cplx value, cplx reference) {
  const double two_pi = 2.0 * std::numbers::pi;
  const double m = std::round((reference.imag() - value.imag()) / two_pi);
  return value + cplx(0.0, two_pi * m);
}

cplx log_near(cplx z, cplx reference) { return unwrap_2pi_i(std::log(z), reference); }

}  // namespace gztower
