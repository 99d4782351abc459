#include "gztower/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "gztower/error.hpp"

namespace gztower {

CanonicalPoint::CanonicalPoint(CMatrix g, CMatrix p, double det_threshold)
    : g_(std::move(g)), p_(std::move(p)) {
  if (g_.rows() != g_.cols() || p_.rows() != g_.rows() || p_.cols() != g_.cols() || g_.rows() < 1) {
    throw Error(ErrorCode::InvalidArgument, "g and p must be square matrices of equal size");
  }
  if (std::abs(g_.determinant()) <= det_threshold) {
    throw Error(ErrorCode::DegenerateGroupElement, "|det g| below threshold");
  }
}

CanonicalPoint CanonicalPoint::unchecked(CMatrix g, CMatrix p) {
  CanonicalPoint pt;
  pt.g_ = std::move(g);
  pt.p_ = std::move(p);
  return pt;
}

CMatrix u_as_canonical(const CanonicalPoint& pt) { return pt.p().transpose() * pt.g(); }

CMatrix utilde_as_canonical(const CanonicalPoint& pt) { return -pt.g() * pt.p().transpose(); }

SymbolValues symbol_values(const CanonicalPoint& pt, cplx lambda, cplx mu) {
  return SymbolValues{u_as_canonical(pt), utilde_as_canonical(pt), pt.g(), lambda, mu};
}

cplx evaluate(const PoissonPoly& poly, const CanonicalPoint& pt, cplx lambda, cplx mu) {
  if (poly.ambient_size() != pt.n()) {
    throw Error(ErrorCode::MismatchedAmbientSize, "polynomial and point sizes differ");
  }
  return poly.evaluate(symbol_values(pt, lambda, mu));
}

PointFunction as_point_function(const PoissonPoly& poly, cplx lambda, cplx mu) {
  return [poly, lambda, mu](const CanonicalPoint& pt) { return evaluate(poly, pt, lambda, mu); };
}

namespace {

struct Gradient {
  CMatrix dg;
  CMatrix dp;
};

Gradient canonical_gradient(const PointFunction& f, const CanonicalPoint& pt, double rel_step) {
  const int n = pt.n();
  Gradient grad{CMatrix::Zero(n, n), CMatrix::Zero(n, n)};
  for (int which = 0; which < 2; ++which) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        CMatrix g = pt.g();
        CMatrix p = pt.p();
        CMatrix& coord = which == 0 ? g : p;
        const double h = rel_step * std::max(1.0, std::abs(coord(i, j)));
        const cplx base = coord(i, j);
        coord(i, j) = base + h;
        const cplx plus = f(CanonicalPoint::unchecked(g, p));
        coord(i, j) = base - h;
        const cplx minus = f(CanonicalPoint::unchecked(g, p));
        const cplx d = (plus - minus) / (2.0 * h);
        if (!std::isfinite(d.real()) || !std::isfinite(d.imag())) {
          throw Error(ErrorCode::NonFinite, "non-finite derivative in canonical_bracket");
        }
        (which == 0 ? grad.dg : grad.dp)(i, j) = d;
      }
    }
  }
  return grad;
}

}  // namespace

cplx canonical_bracket(const PointFunction& f, const PointFunction& h, const CanonicalPoint& pt,
                       double rel_step) {
  const Gradient gf = canonical_gradient(f, pt, rel_step);
  const Gradient gh = canonical_gradient(h, pt, rel_step);
  return (gf.dg.cwiseProduct(gh.dp) - gf.dp.cwiseProduct(gh.dg)).sum();
}

CMatrix random_complex_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = cplx(re, im) / std::sqrt(2.0);
    }
  }
  return m;
}

CanonicalPoint random_canonical_point(int n, std::mt19937_64& rng, double det_threshold) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    CMatrix g = random_complex_matrix(n, n, rng);
    CMatrix p = random_complex_matrix(n, n, rng);
    if (std::abs(g.determinant()) > det_threshold) return CanonicalPoint(std::move(g), std::move(p));
  }
  throw Error(ErrorCode::RetryExhausted, "could not sample a non-degenerate group element");
}

namespace {

using Realization = std::function<CMatrix(const CMatrix& g, const CMatrix& p)>;

struct NamedRealization {
  std::string name;
  Realization map;
};

std::vector<NamedRealization> u_candidates() {
  return {
      {"g^T p", [](const CMatrix& g, const CMatrix& p) -> CMatrix { return g.transpose() * p; }},
      {"-g^T p", [](const CMatrix& g, const CMatrix& p) -> CMatrix { return -(g.transpose() * p); }},
      {"p^T g", [](const CMatrix& g, const CMatrix& p) -> CMatrix { return p.transpose() * g; }},
      {"-p^T g", [](const CMatrix& g, const CMatrix& p) -> CMatrix { return -(p.transpose() * g); }},
  };
}

std::vector<NamedRealization> utilde_candidates() {
  return {
      {"g p^T", [](const CMatrix& g, const CMatrix& p) -> CMatrix { return g * p.transpose(); }},
      {"-g p^T", [](const CMatrix& g, const CMatrix& p) -> CMatrix { return -(g * p.transpose()); }},
      {"p g^T", [](const CMatrix& g, const CMatrix& p) -> CMatrix { return p * g.transpose(); }},
      {"-p g^T", [](const CMatrix& g, const CMatrix& p) -> CMatrix { return -(p * g.transpose()); }},
  };
}

}  // namespace

std::vector<RealizationCandidate> realization_sweep(int n, std::uint64_t seed, int points,
                                                    double tolerance) {
  std::mt19937_64 rng(seed);
  std::vector<CanonicalPoint> pts;
  for (int k = 0; k < points; ++k) pts.push_back(random_canonical_point(n, rng));

  std::vector<Symbol> gens;
  for (SymbolKind kind : {SymbolKind::U, SymbolKind::UTilde, SymbolKind::G}) {
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) gens.emplace_back(kind, i, j);
    }
  }

  std::vector<RealizationCandidate> out;
  for (const auto& uc : u_candidates()) {
    for (const auto& tc : utilde_candidates()) {
      RealizationCandidate cand{uc.name, tc.name};
      auto value_of = [&](Symbol s, const CanonicalPoint& pt) -> cplx {
        const int i = s.row() - 1, j = s.col() - 1;
        switch (s.kind()) {
          case SymbolKind::U: return uc.map(pt.g(), pt.p())(i, j);
          case SymbolKind::UTilde: return tc.map(pt.g(), pt.p())(i, j);
          case SymbolKind::G: return pt.g()(i, j);
          default: return {};
        }
      };
      for (const auto& pt : pts) {
        const CMatrix u = uc.map(pt.g(), pt.p());
        const CMatrix ut = tc.map(pt.g(), pt.p());
        const SymbolValues values{u, ut, pt.g(), {}, {}};
        for (std::size_t a = 0; a < gens.size(); ++a) {
          for (std::size_t b = a + 1; b < gens.size(); ++b) {
            const Symbol x = gens[a], y = gens[b];
            const PoissonPoly exact =
                bracket(PoissonPoly::symbol(n, x), PoissonPoly::symbol(n, y));
            const cplx numeric = canonical_bracket(
                [&](const CanonicalPoint& q) { return value_of(x, q); },
                [&](const CanonicalPoint& q) { return value_of(y, q); }, pt);
            cand.max_defect = std::max(cand.max_defect, std::abs(numeric - exact.evaluate(values)));
          }
        }
        const CMatrix conj = pt.g() * u * pt.g().inverse();
        const double scale = std::max(1.0, ut.norm());
        const bool plus = (ut - conj).norm() < 1e-10 * scale;
        const bool minus = (ut + conj).norm() < 1e-10 * scale;
        const int sign = plus ? 1 : (minus ? -1 : 0);
        if (&pt == &pts.front()) cand.conjugation_sign = sign;
        else if (cand.conjugation_sign != sign) cand.conjugation_sign = 0;
      }
      cand.satisfies_relations = cand.max_defect < tolerance;
      out.push_back(std::move(cand));
    }
  }
  return out;
}

}  // namespace gztower
