#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "gztower/canonical.hpp"
#include "gztower/orbit.hpp"

namespace gztower {

namespace {

using PolyOfMatrix = std::function<ComplexPoly(const CMatrix&)>;

/// Coefficientwise d/dε of p(u + ε ξ) at ε = 0.
ComplexPoly variation(const PolyOfMatrix& p, const CMatrix& u, const CMatrix& xi, double step) {
  ComplexPoly plus = p(u + step * xi);
  ComplexPoly minus = p(u - step * xi);
  const std::size_t size = std::max(plus.c.size(), minus.c.size());
  plus.c.resize(size);
  minus.c.resize(size);
  ComplexPoly d = plus - minus;
  for (auto& c : d.c) c /= 2.0 * step;
  return d;
}

/// Σ over simple zeros z of (δ_x P δ_y Q − δ_y P δ_x Q)(z) / (d_a(z) d_b(z)),
/// i.e. residues of δlog P ∧ δlog Q when d_a·d_b is the derivative of P·Q at z.
cplx wedge_residues(const std::vector<cplx>& points, const ComplexPoly& dxp, const ComplexPoly& dyp,
                    const ComplexPoly& dxq, const ComplexPoly& dyq, const ComplexPoly& denominator_a,
                    const ComplexPoly& denominator_b) {
  cplx total{};
  for (cplx z : points) {
    total += (dxp(z) * dyq(z) - dyp(z) * dxq(z)) / (denominator_a(z) * denominator_b(z));
  }
  return total;
}

}  // namespace

std::vector<std::pair<std::string, cplx>> residue_form_values(const CMatrix& u, const TangentPair& pair,
                                                              const ChartConvention& conv, double step) {
  const int n = static_cast<int>(u.rows());
  const CMatrix xi_x = pair.x * u - u * pair.x;
  const CMatrix xi_y = pair.y * u - u * pair.y;

  cplx r1_c{}, r1_a{}, r2_prev{}, r2_cur{};
  for (int m = 1; m <= n; ++m) {
    const PolyOfMatrix a_cur = [m](const CMatrix& v) { return principal_minor(v, m); };
    const PolyOfMatrix a_prev = [m](const CMatrix& v) { return principal_minor(v, m - 1); };
    const ComplexPoly am = a_cur(u);
    const ComplexPoly dx_am = variation(a_cur, u, xi_x, step);
    const ComplexPoly dy_am = variation(a_cur, u, xi_y, step);
    const std::vector<cplx> gamma = polynomial_roots(am);

    if (m < n) {
      const PolyOfMatrix c_poly = [m, conv](const CMatrix& v) { return lowering_minor(v, m, conv); };
      const ComplexPoly c = c_poly(u);
      const ComplexPoly dx_c = variation(c_poly, u, xi_x, step);
      const ComplexPoly dy_c = variation(c_poly, u, xi_y, step);
      const std::vector<cplx> e = polynomial_roots(c);
      r1_c += wedge_residues(e, dx_c, dy_c, dx_am, dy_am, c.derivative(), am);
      r1_a += wedge_residues(gamma, dx_c, dy_c, dx_am, dy_am, c, am.derivative());
    }
    if (m >= 2) {
      const ComplexPoly ap = a_prev(u);
      const ComplexPoly dx_ap = variation(a_prev, u, xi_x, step);
      const ComplexPoly dy_ap = variation(a_prev, u, xi_y, step);
      r2_prev += wedge_residues(polynomial_roots(ap), dx_ap, dy_ap, dx_am, dy_am, ap.derivative(), am);
      r2_cur += wedge_residues(gamma, dx_ap, dy_ap, dx_am, dy_am, ap, am.derivative());
    }
  }
  return {
      {"C zeros", r1_c - r2_prev},
      {"C zeros and infinity", -r1_a - r2_prev},
      {"A_n zeros", r1_a - r2_cur},
      {"A_n zeros, A_{n-1} second term", r1_a - r2_prev},
  };
}

ResidueFormReport residue_form_check(const CMatrix& u, const std::vector<TangentPair>& pairs, double tolerance,
                                     const ChartConvention& conv, double step) {
  ResidueFormReport report;
  report.pairs = static_cast<int>(pairs.size());
  for (const TangentPair& pair : pairs) {
    const cplx kk = (u * (pair.x * pair.y - pair.y * pair.x)).trace();
    report.kk_values.push_back(kk);
    const auto values = residue_form_values(u, pair, conv, step);
    if (report.conventions.empty()) {
      for (const auto& [name, v] : values) {
        for (int orientation : {1, -1}) report.conventions.push_back({name, orientation, 0.0, false});
      }
    }
    for (auto& conv_result : report.conventions) {
      const auto it = std::find_if(values.begin(), values.end(),
                                   [&](const auto& nv) { return nv.first == conv_result.name; });
      const double defect =
          std::abs(static_cast<double>(conv_result.orientation) * it->second - kk) / std::max(1.0, std::abs(kk));
      conv_result.max_defect = std::max(conv_result.max_defect, defect);
    }
  }
  for (auto& c : report.conventions) {
    c.ok = !pairs.empty() && c.max_defect <= tolerance;
    if (c.ok) report.winners.push_back((c.orientation > 0 ? "+" : "-") + c.name);
  }
  report.ok = !report.winners.empty();
  return report;
}

std::vector<TangentPair> random_tangent_pairs(int n, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<TangentPair> out;
  for (int k = 0; k < count; ++k) {
    CMatrix x = random_complex_matrix(n, n, rng);
    CMatrix y = random_complex_matrix(n, n, rng);
    out.push_back({std::move(x), std::move(y)});
  }
  return out;
}

}  // namespace gztower
