#include "gztower/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/SVD>

#include "gztower/canonical.hpp"
#include "gztower/error.hpp"

namespace gztower {

namespace {

std::vector<cplx> level_roots(const CMatrix& u, int m) {
  return polynomial_roots(principal_minor(u, m));
}

bool chart_is_nonsingular(const CMatrix& u) {
  try {
    gz_forward(u);
    return true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularChart) return false;
    throw;
  }
}

}  // namespace

std::string ChartConvention::name() const {
  std::string s = sign > 0 ? "+" : "-";
  s += transposed ? "transposed" : "rows";
  return s;
}

OrbitPoint sample_orbit(const std::vector<cplx>& spectrum, std::uint64_t seed, const SampleOptions& options) {
  const int n = static_cast<int>(spectrum.size());
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "spectrum must be nonempty");
  for (cplx z : spectrum) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorCode::InvalidArgument, "spectrum entries must be finite");
    }
  }
  if (min_pairwise_distance(spectrum) < options.min_gap) {
    throw Error(ErrorCode::InvalidArgument, "spectrum entries must be distinct");
  }
  if (n == 1) return OrbitPoint{CMatrix::Constant(1, 1, spectrum[0]), spectrum};

  std::mt19937_64 rng(seed);
  CMatrix lambda = CMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) lambda(k, k) = spectrum[static_cast<std::size_t>(k)];
  for (int attempt = 0; attempt < options.max_retries; ++attempt) {
    const CMatrix h = random_complex_matrix(n, n, rng);
    Eigen::JacobiSVD<CMatrix> svd(h);
    const auto& sv = svd.singularValues();
    if (sv(n - 1) == 0.0 || sv(0) / sv(n - 1) > options.condition_cap) continue;
    CMatrix u = h * lambda * h.inverse();
    if (!is_regular(u, options.min_gap) || !chart_is_nonsingular(u)) continue;
    return OrbitPoint{std::move(u), spectrum};
  }
  throw Error(ErrorCode::RetryExhausted,
              "no regular orbit point after " + std::to_string(options.max_retries) + " attempts");
}

double regularity_gap(const CMatrix& u) {
  double gap = std::numeric_limits<double>::infinity();
  std::vector<cplx> previous;
  for (int m = 1; m <= u.rows(); ++m) {
    std::vector<cplx> roots = level_roots(u, m);
    gap = std::min({gap, min_pairwise_distance(roots), min_cross_distance(roots, previous)});
    previous = std::move(roots);
  }
  return gap;
}

bool is_regular(const CMatrix& u, double min_gap) { return regularity_gap(u) >= min_gap; }

ComplexPoly principal_minor(const CMatrix& u, int n) {
  if (n < 0 || n > u.rows()) throw Error(ErrorCode::InvalidArgument, "minor size out of range");
  if (n == 0) return ComplexPoly{{cplx(1.0, 0.0)}};
  return characteristic_polynomial(u.topLeftCorner(n, n)).as_poly();
}

ComplexPoly lowering_minor(const CMatrix& u, int n, const ChartConvention& conv) {
  if (n < 1 || n >= u.rows()) throw Error(ErrorCode::InvalidArgument, "lowering minor needs 1 <= n <= N-1");
  std::vector<int> shifted, straight;
  for (int k = 0; k < n - 1; ++k) shifted.push_back(k);
  shifted.push_back(n);
  for (int k = 0; k < n; ++k) straight.push_back(k);
  ComplexPoly p = conv.transposed ? lambda_minor(u, straight, shifted) : lambda_minor(u, shifted, straight);
  if (conv.sign < 0) {
    for (auto& c : p.c) c = -c;
  }
  return p;
}

namespace {

std::vector<cplx> theta_from_roots(const CMatrix& u, int m, const std::vector<cplx>& gamma,
                                   const ChartConvention& conv) {
  const ComplexPoly c = lowering_minor(u, m, conv);
  const ComplexPoly a_prev = principal_minor(u, m - 1);
  std::vector<cplx> theta;
  for (cplx g : gamma) {
    const cplx cv = c(g);
    const cplx av = a_prev(g);
    if (std::abs(cv) < kChartFloor || std::abs(av) < kChartFloor) {
      throw Error(ErrorCode::SingularChart, "level " + std::to_string(m) + " chart degenerates");
    }
    theta.push_back(std::log(-cv / av));
  }
  return theta;
}

}  // namespace

GZChart gz_forward(const CMatrix& u, const ChartConvention& conv) {
  const int n = static_cast<int>(u.rows());
  GZChart chart;
  chart.n = n;
  for (int m = 1; m <= n; ++m) {
    chart.gamma.push_back(level_roots(u, m));
    if (m < n) chart.theta.push_back(theta_from_roots(u, m, chart.gamma.back(), conv));
  }
  return chart;
}

GZChart gz_forward_tracked(const CMatrix& u, const GZChart& reference, const ChartConvention& conv,
                           double min_separation) {
  const int n = static_cast<int>(u.rows());
  if (reference.n != n) throw Error(ErrorCode::MismatchedAmbientSize, "reference chart size differs");
  GZChart chart;
  chart.n = n;
  for (int m = 1; m <= n; ++m) {
    const std::vector<cplx> roots = level_roots(u, m);
    if (min_pairwise_distance(roots) < min_separation) {
      throw Error(ErrorCode::TrackingAmbiguous, "level " + std::to_string(m) + " roots collide");
    }
    std::vector<cplx> matched = match_to_reference(reference.gamma[static_cast<std::size_t>(m - 1)], roots);
    if (matched.empty()) {
      throw Error(ErrorCode::TrackingAmbiguous, "level " + std::to_string(m) + " root matching is not a bijection");
    }
    chart.gamma.push_back(std::move(matched));
    if (m < n) {
      std::vector<cplx> theta = theta_from_roots(u, m, chart.gamma.back(), conv);
      const auto& ref = reference.theta[static_cast<std::size_t>(m - 1)];
      for (std::size_t j = 0; j < theta.size(); ++j) theta[j] = unwrap_2pi_i(theta[j], ref[j]);
      chart.theta.push_back(std::move(theta));
    }
  }
  return chart;
}

ChartResiduals chart_residuals(const CMatrix& u, const GZChart& chart, const ChartConvention& conv) {
  ChartResiduals r;
  for (int m = 1; m <= chart.n; ++m) {
    ComplexPoly prod{{cplx(1.0, 0.0)}};
    for (cplx g : chart.gamma[static_cast<std::size_t>(m - 1)]) prod = prod * ComplexPoly{{-g, cplx(1.0, 0.0)}};
    const ComplexPoly diff = prod - principal_minor(u, m);
    for (cplx c : diff.c) r.minor = std::max(r.minor, std::abs(c));
    if (m == chart.n) continue;
    const ComplexPoly c = lowering_minor(u, m, conv);
    const ComplexPoly a_prev = principal_minor(u, m - 1);
    const auto& gamma = chart.gamma[static_cast<std::size_t>(m - 1)];
    const auto& theta = chart.theta[static_cast<std::size_t>(m - 1)];
    for (std::size_t j = 0; j < gamma.size(); ++j) {
      r.c_relation = std::max(r.c_relation, std::abs(c(gamma[j]) + a_prev(gamma[j]) * std::exp(theta[j])));
    }
  }
  return r;
}

std::string ChartCoordinate::label() const {
  return std::string(kind == 'g' ? "gamma" : "theta") + "[" + std::to_string(level) + "," +
         std::to_string(index) + "]";
}

std::vector<ChartCoordinate> chart_coordinates(int n) {
  std::vector<ChartCoordinate> out;
  for (int m = 1; m <= n; ++m) {
    for (int j = 1; j <= m; ++j) out.push_back({'g', m, j});
  }
  for (int m = 1; m < n; ++m) {
    for (int j = 1; j <= m; ++j) out.push_back({'t', m, j});
  }
  return out;
}

std::vector<cplx> flatten(const GZChart& chart) {
  std::vector<cplx> out;
  for (const auto& level : chart.gamma) out.insert(out.end(), level.begin(), level.end());
  for (const auto& level : chart.theta) out.insert(out.end(), level.begin(), level.end());
  return out;
}

std::vector<CMatrix> lie_poisson_gradients(const VectorMatrixFunction& f, const CMatrix& u, double step) {
  const Eigen::Index n = u.rows();
  std::vector<CMatrix> grads;
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      CMatrix up = u, um = u;
      up(a, b) += step;
      um(a, b) -= step;
      const std::vector<cplx> fp = f(up);
      const std::vector<cplx> fm = f(um);
      if (grads.empty()) grads.assign(fp.size(), CMatrix::Zero(n, n));
      for (std::size_t c = 0; c < fp.size(); ++c) {
        const cplx d = (fp[c] - fm[c]) / (2.0 * step);
        if (!std::isfinite(d.real()) || !std::isfinite(d.imag())) {
          throw Error(ErrorCode::NonFinite, "non-finite derivative");
        }
        grads[c](b, a) = d;
      }
    }
  }
  return grads;
}

CMatrix lie_poisson_gradient(const MatrixFunction& f, const CMatrix& u, double step) {
  return lie_poisson_gradients([&f](const CMatrix& m) { return std::vector<cplx>{f(m)}; }, u, step).front();
}

cplx kk_bracket_from_gradients(const CMatrix& u, const CMatrix& grad_f, const CMatrix& grad_h) {
  return (u * (grad_h * grad_f - grad_f * grad_h)).trace();
}

cplx kk_bracket(const MatrixFunction& f, const MatrixFunction& h, const CMatrix& u, double step) {
  return kk_bracket_from_gradients(u, lie_poisson_gradient(f, u, step), lie_poisson_gradient(h, u, step));
}

CanonicalChartReport verify_canonical_chart(const CMatrix& u, const ChartConvention& conv, double tolerance,
                                            double step) {
  const int n = static_cast<int>(u.rows());
  CanonicalChartReport report;
  report.convention = conv;
  report.coordinates = chart_coordinates(n);
  const GZChart base = gz_forward(u, conv);
  const auto grads = lie_poisson_gradients(
      [&](const CMatrix& m) { return flatten(gz_forward_tracked(m, base, conv, 10.0 * step)); }, u, step);

  const auto count = static_cast<Eigen::Index>(report.coordinates.size());
  report.brackets = CMatrix::Zero(count, count);
  report.expected = CMatrix::Zero(count, count);
  for (Eigen::Index a = 0; a < count; ++a) {
    for (Eigen::Index b = 0; b < count; ++b) {
      const auto& ca = report.coordinates[static_cast<std::size_t>(a)];
      const auto& cb = report.coordinates[static_cast<std::size_t>(b)];
      report.brackets(a, b) = kk_bracket_from_gradients(u, grads[static_cast<std::size_t>(a)],
                                                        grads[static_cast<std::size_t>(b)]);
      if (ca.level == cb.level && ca.index == cb.index && ca.kind != cb.kind) {
        report.expected(a, b) = ca.kind == 't' ? 1.0 : -1.0;
      }
      const double defect = std::abs(report.brackets(a, b) - report.expected(a, b));
      if (defect > report.max_defect) {
        report.max_defect = defect;
        std::ostringstream os;
        os << "{" << ca.label() << ", " << cb.label() << "} = " << report.brackets(a, b);
        report.witness = os.str();
      }
    }
  }
  report.ok = report.max_defect <= tolerance;
  return report;
}

std::vector<CanonicalChartReport> sweep_chart_conventions(const CMatrix& u, double tolerance, double step) {
  std::vector<CanonicalChartReport> out;
  for (bool transposed : {false, true}) {
    for (int sign : {1, -1}) out.push_back(verify_canonical_chart(u, {sign, transposed}, tolerance, step));
  }
  return out;
}

}  // namespace gztower
