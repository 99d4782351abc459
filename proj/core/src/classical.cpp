#include "gztower/classical.hpp"

#include <algorithm>
#include <cmath>

#include "gztower/error.hpp"

namespace gztower {

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::GzPrincipal: return "gz";
    case FamilyKind::GzCorner: return "corner";
    case FamilyKind::MfShift: return "mf";
    case FamilyKind::Trivial: return "trivial";
  }
  return "?";
}

std::string to_string(Side side) {
  switch (side) {
    case Side::Left: return "left";
    case Side::Right: return "right";
    case Side::Both: return "both";
  }
  return "?";
}

void FamilySpec::validate() const {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "ambient size must be positive");
  const bool is_mf = kind == FamilyKind::MfShift;
  if (is_mf != shift_matrix.has_value()) {
    throw Error(ErrorCode::InvalidArgument, "shift matrix must be present iff the family is MF");
  }
  if (shift_matrix && shift_matrix->size() != static_cast<std::size_t>(n * n)) {
    throw Error(ErrorCode::InvalidArgument, "shift matrix must have n*n entries");
  }
}

PoissonPoly char_minor(int n, MatrixSide side, int k, bool corner) {
  if (k < 1 || k > n) throw Error(ErrorCode::InvalidArgument, "minor size must be in 1..N");
  const SymbolKind kind = side == MatrixSide::U ? SymbolKind::U : SymbolKind::UTilde;
  const int row0 = corner ? n - k : 0;
  std::vector<std::vector<PoissonPoly>> m(k);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) {
      const int gi = row0 + r + 1;
      const int gj = c + 1;
      PoissonPoly entry = -PoissonPoly::symbol(n, Symbol(kind, gi, gj));
      if (gi == gj) entry += PoissonPoly::symbol(n, Symbol::lambda());
      m[r].push_back(std::move(entry));
    }
  }
  return determinant(m);
}

PoissonPoly mf_polynomial(int n, const std::vector<Rational>& shift_matrix) {
  if (shift_matrix.size() != static_cast<std::size_t>(n * n)) {
    throw Error(ErrorCode::InvalidArgument, "shift matrix must have n*n entries");
  }
  const PoissonPoly lambda = PoissonPoly::symbol(n, Symbol::lambda());
  const PoissonPoly mu = PoissonPoly::symbol(n, Symbol::mu());
  std::vector<std::vector<PoissonPoly>> m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      PoissonPoly entry = PoissonPoly::symbol(n, Symbol::u(i + 1, j + 1));
      entry -= mu * shift_matrix[i * n + j];
      if (i == j) entry -= lambda;
      m[i].push_back(std::move(entry));
    }
  }
  return determinant(m);
}

namespace {

bool is_constant(const PoissonPoly& p) {
  return p.is_zero() || (p.size() == 1 && p.terms().begin()->first.is_one());
}

void append_minor_coefficients(std::vector<FamilyMember>& out, const PoissonPoly& minor, char side,
                               int k) {
  const auto coeffs = minor.coefficients_in(Symbol::lambda());
  for (std::size_t power = 0; power < coeffs.size(); ++power) {
    if (is_constant(coeffs[power])) continue;
    FamilyMember m{std::string("I") + side + "[" + std::to_string(k) + "," +
                       std::to_string(power) + "]",
                   coeffs[power], side, k, static_cast<int>(power), 0};
    out.push_back(std::move(m));
  }
}

}  // namespace

CommutingFamily build_family(const FamilySpec& spec) {
  spec.validate();
  CommutingFamily fam{spec, {}, false};
  const int n = spec.n;
  switch (spec.kind) {
    case FamilyKind::GzPrincipal:
    case FamilyKind::GzCorner: {
      const bool corner = spec.kind == FamilyKind::GzCorner;
      if (spec.side != Side::Right) {
        for (int k = 1; k < n; ++k) {
          append_minor_coefficients(fam.members, char_minor(n, MatrixSide::U, k, corner), 'L', k);
        }
      }
      if (spec.side != Side::Left) {
        for (int k = 1; k < n; ++k) {
          append_minor_coefficients(fam.members, char_minor(n, MatrixSide::UTilde, k, corner), 'R',
                                    k);
        }
      }
      append_minor_coefficients(fam.members, char_minor(n, MatrixSide::U, n, false), 'N', n);
      break;
    }
    case FamilyKind::MfShift: {
      const PoissonPoly poly = mf_polynomial(n, *spec.shift_matrix);
      const auto by_lambda = poly.coefficients_in(Symbol::lambda());
      for (std::size_t lp = 0; lp < by_lambda.size(); ++lp) {
        const auto by_mu = by_lambda[lp].coefficients_in(Symbol::mu());
        for (std::size_t mp = 0; mp < by_mu.size(); ++mp) {
          if (is_constant(by_mu[mp])) continue;
          fam.members.push_back(FamilyMember{
              "IA[" + std::to_string(lp) + "," + std::to_string(mp) + "]", by_mu[mp], 'A', 0,
              static_cast<int>(lp), static_cast<int>(mp)});
        }
      }
      break;
    }
    case FamilyKind::Trivial:
      fam.numeric_only = true;
      break;
  }
  return fam;
}

CommuteReport verify_commutes(const CommutingFamily& family) {
  if (family.numeric_only) {
    throw Error(ErrorCode::InvalidArgument,
                "the trivial family is checked by verify_trivial_numeric");
  }
  CommuteReport report;
  const auto& ms = family.members;
  for (std::size_t a = 0; a < ms.size(); ++a) {
    for (std::size_t b = a + 1; b < ms.size(); ++b) {
      const PoissonPoly br = bracket(ms[a].poly, ms[b].poly);
      ++report.pairs_checked;
      report.max_nonzero_terms = std::max(report.max_nonzero_terms, br.size());
      if (!br.is_zero() && report.ok) {
        report.ok = false;
        report.witness_pair = "{" + ms[a].label + ", " + ms[b].label + "}";
        report.witness_terms = br.to_string();
      }
    }
  }
  return report;
}

cplx trivial_function(const CanonicalPoint& pt, int i, int j, MatrixSide side) {
  const CMatrix m = side == MatrixSide::U ? u_as_canonical(pt) : utilde_as_canonical(pt);
  return (pt.g().inverse() * m)(i, j);
}

TrivialReport verify_trivial_numeric(int n, int pt_count, std::uint64_t seed, MatrixSide side,
                                     double tolerance) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  TrivialReport report{n, pt_count, 0.0, tolerance, true, side};
  std::mt19937_64 rng(seed);
  for (int k = 0; k < pt_count; ++k) {
    // Well-conditioned g keeps the finite differences of g⁻¹ accurate.
    CanonicalPoint pt = random_canonical_point(n, rng);
    while (pt.g().jacobiSvd().singularValues().minCoeff() < 0.2) pt = random_canonical_point(n, rng);
    for (int a = 0; a < n * n; ++a) {
      for (int b = a + 1; b < n * n; ++b) {
        const cplx v = canonical_bracket(
            [&](const CanonicalPoint& q) { return trivial_function(q, a / n, a % n, side); },
            [&](const CanonicalPoint& q) { return trivial_function(q, b / n, b % n, side); }, pt);
        report.max_abs_bracket = std::max(report.max_abs_bracket, std::abs(v));
      }
    }
  }
  report.ok = report.max_abs_bracket < tolerance;
  return report;
}

namespace {

// Row of the Jacobian of a polynomial in (u, ũ, g) with respect to (g, p),
// via the chain rule through u = pᵀg and ũ = −g pᵀ.
Eigen::RowVectorXcd polynomial_jacobian_row(const PoissonPoly& poly, const CanonicalPoint& pt) {
  const int n = pt.n();
  const SymbolValues values = symbol_values(pt);
  CMatrix pu = CMatrix::Zero(n, n), pt_ = CMatrix::Zero(n, n), pg = CMatrix::Zero(n, n);
  for (int a = 1; a <= n; ++a) {
    for (int b = 1; b <= n; ++b) {
      pu(a - 1, b - 1) = poly.derivative(Symbol::u(a, b)).evaluate(values);
      pt_(a - 1, b - 1) = poly.derivative(Symbol::utilde(a, b)).evaluate(values);
      pg(a - 1, b - 1) = poly.derivative(Symbol::g(a, b)).evaluate(values);
    }
  }
  const CMatrix& g = pt.g();
  const CMatrix& p = pt.p();
  const CMatrix dg = p * pu - pt_ * p + pg;
  const CMatrix dp = g * pu.transpose() - pt_.transpose() * g;
  Eigen::RowVectorXcd row(2 * n * n);
  for (int c = 0; c < n; ++c) {
    for (int d = 0; d < n; ++d) {
      row(c * n + d) = dg(c, d);
      row(n * n + c * n + d) = dp(c, d);
    }
  }
  return row;
}

Eigen::RowVectorXcd numeric_jacobian_row(const PointFunction& f, const CanonicalPoint& pt) {
  const int n = pt.n();
  Eigen::RowVectorXcd row(2 * n * n);
  for (int which = 0; which < 2; ++which) {
    for (int c = 0; c < n; ++c) {
      for (int d = 0; d < n; ++d) {
        CMatrix g = pt.g(), p = pt.p();
        CMatrix& coord = which == 0 ? g : p;
        const double h = 1e-6 * std::max(1.0, std::abs(coord(c, d)));
        const cplx base = coord(c, d);
        coord(c, d) = base + h;
        const cplx plus = f(CanonicalPoint::unchecked(g, p));
        coord(c, d) = base - h;
        const cplx minus = f(CanonicalPoint::unchecked(g, p));
        row(which * n * n + c * n + d) = (plus - minus) / (2.0 * h);
      }
    }
  }
  return row;
}

}  // namespace

int independence_rank(const CommutingFamily& family, const CanonicalPoint& pt,
                      double rel_threshold) {
  const int n = pt.n();
  if (family.spec.n != n) throw Error(ErrorCode::MismatchedAmbientSize, "family and point sizes differ");
  std::vector<Eigen::RowVectorXcd> rows;
  if (family.numeric_only) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        rows.push_back(numeric_jacobian_row(
            [i, j](const CanonicalPoint& q) { return trivial_function(q, i, j, MatrixSide::U); },
            pt));
      }
    }
  } else {
    for (const auto& m : family.members) rows.push_back(polynomial_jacobian_row(m.poly, pt));
  }
  if (rows.empty()) return 0;
  CMatrix jac(static_cast<Eigen::Index>(rows.size()), 2 * n * n);
  for (std::size_t r = 0; r < rows.size(); ++r) jac.row(static_cast<Eigen::Index>(r)) = rows[r];
  const Eigen::VectorXd sv = jac.jacobiSvd().singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > rel_threshold * sv(0)) ++rank;
  }
  return rank;
}

std::vector<Rational> random_rational_matrix(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(n * n));
  for (int k = 0; k < n * n; ++k) {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

}  // namespace gztower
