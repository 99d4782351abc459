#include "gztower/diffop.hpp"

#include <random>

#include "gztower/error.hpp"

namespace gztower {

void PolyDiffOp::add(PoissonPoly coefficient, Symbol g_entry) {
  if (g_entry.kind() != SymbolKind::G) {
    throw Error(ErrorCode::InvalidArgument, "differential operators act on g entries only");
  }
  if (coefficient.ambient_size() != n_) {
    throw Error(ErrorCode::MismatchedAmbientSize, "coefficient size differs from operator size");
  }
  terms_.emplace_back(std::move(coefficient), g_entry);
}

PoissonPoly PolyDiffOp::apply(const PoissonPoly& f) const {
  if (f.ambient_size() != n_) throw Error(ErrorCode::MismatchedAmbientSize, "operand size differs");
  PoissonPoly out(n_);
  for (const auto& [coeff, s] : terms_) {
    const PoissonPoly d = f.derivative(s);
    if (!d.is_zero()) out += coeff * d;
  }
  return out;
}

PolyDiffOp nabla_left(int n, int i, int j) {
  PolyDiffOp op(n);
  for (int k = 1; k <= n; ++k) op.add(PoissonPoly::symbol(n, Symbol::g(k, i)), Symbol::g(k, j));
  return op;
}

PolyDiffOp nabla_right(int n, int i, int j) {
  PolyDiffOp op(n);
  for (int k = 1; k <= n; ++k) op.add(-PoissonPoly::symbol(n, Symbol::g(j, k)), Symbol::g(i, k));
  return op;
}

PoissonPoly apply_commutator(const PolyDiffOp& x, const PolyDiffOp& y, const PoissonPoly& f) {
  return x.apply(y.apply(f)) - y.apply(x.apply(f));
}

PoissonPoly random_g_polynomial(int n, int max_degree, int terms, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> entry(1, n);
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<int> num(-7, 7);
  std::uniform_int_distribution<int> den(1, 4);
  PoissonPoly p(n);
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) m = m * Monomial(Symbol::g(entry(rng), entry(rng)));
    Rational c(num(rng), den(rng));
    c.canonicalize();
    p.add_term(m, c);
  }
  return p;
}

DiffOpReport diffop_realization_check(int n, int trials, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  DiffOpReport report{n, trials, 0, true, {}};
  std::mt19937_64 rng(seed);

  std::vector<PolyDiffOp> left, right;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      left.push_back(nabla_left(n, i, j));
      right.push_back(nabla_right(n, i, j));
    }
  }
  auto at = [n](const std::vector<PolyDiffOp>& ops, int i, int j) -> const PolyDiffOp& {
    return ops[static_cast<std::size_t>((i - 1) * n + (j - 1))];
  };

  auto record = [&](const PoissonPoly& defect, const std::string& what) {
    ++report.relations_checked;
    if (!defect.is_zero() && report.ok) {
      report.ok = false;
      report.witness = what + " leaves " + defect.to_string();
    }
  };

  for (int t = 0; t < trials; ++t) {
    const PoissonPoly f = random_g_polynomial(n, 3, 4, rng);
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        for (int k = 1; k <= n; ++k) {
          for (int l = 1; l <= n; ++l) {
            const std::string idx = std::to_string(i) + std::to_string(j) + "," +
                                    std::to_string(k) + std::to_string(l);
            for (const auto* ops : {&left, &right}) {
              PoissonPoly expected(n);
              if (j == k) expected += at(*ops, i, l).apply(f);
              if (l == i) expected -= at(*ops, k, j).apply(f);
              record(apply_commutator(at(*ops, i, j), at(*ops, k, l), f) - expected,
                     std::string(ops == &left ? "[nablaL" : "[nablaR") + idx + "]");
            }
            record(apply_commutator(at(left, i, j), at(right, k, l), f),
                   "[nablaL" + std::to_string(i) + std::to_string(j) + ", nablaR" +
                       std::to_string(k) + std::to_string(l) + "]");
          }
        }
      }
    }
  }
  return report;
}

}  // namespace gztower
