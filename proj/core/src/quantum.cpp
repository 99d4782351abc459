#include "gztower/quantum.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "gztower/error.hpp"

namespace gztower {

std::string QGen::to_string() const {
  return std::string("E") + (copy() == Copy::L ? "L" : "R") + std::to_string(i()) +
         std::to_string(j());
}

// ---------------------------------------------------------------- LambdaPoly

LambdaPoly::LambdaPoly(const Rational& c) {
  if (sgn(c) != 0) c_.push_back(c);
}

LambdaPoly LambdaPoly::lambda() {
  LambdaPoly p;
  p.c_ = {Rational(0), Rational(1)};
  return p;
}

void LambdaPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

LambdaPoly& LambdaPoly::operator+=(const LambdaPoly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

LambdaPoly& LambdaPoly::operator-=(const LambdaPoly& o) {
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

LambdaPoly operator*(const LambdaPoly& a, const LambdaPoly& b) {
  LambdaPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
  }
  r.trim();
  return r;
}

LambdaPoly operator*(LambdaPoly a, const Rational& s) {
  for (auto& c : a.c_) c *= s;
  a.trim();
  return a;
}

std::string LambdaPoly::to_string() const {
  if (c_.empty()) return "0";
  std::string s;
  for (std::size_t k = c_.size(); k-- > 0;) {
    if (sgn(c_[k]) == 0) continue;
    if (!s.empty()) s += " + ";
    s += "(" + c_[k].get_str() + ")";
    if (k > 0) s += "*lambda" + (k > 1 ? "^" + std::to_string(k) : std::string());
  }
  return s;
}

// ------------------------------------------------------------ normal ordering

namespace {

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (QGen g : w) {
      h ^= g.code();
      h *= 1099511628211ull;
    }
    return h;
  }
};

void accumulate(WordExpansion& into, const WordExpansion& from, const Rational& scale) {
  for (const auto& [w, c] : from) {
    auto [it, inserted] = into.try_emplace(w, c * scale);
    if (!inserted) {
      it->second += c * scale;
      if (sgn(it->second) == 0) into.erase(it);
    }
  }
}

// [E_{ij}, E_{kl}] = δ_{jk} E_{il} − δ_{li} E_{kj} within one copy.
std::vector<std::pair<int, QGen>> letter_commutator(QGen a, QGen b) {
  std::vector<std::pair<int, QGen>> out;
  if (a.copy() != b.copy()) return out;
  if (a.j() == b.i()) out.emplace_back(1, QGen(a.copy(), a.i(), b.j()));
  if (b.j() == a.i()) out.emplace_back(-1, QGen(a.copy(), b.i(), a.j()));
  return out;
}

WordExpansion compute_normal_order(const Word& word) {
  Word sorted_copies = word;
  std::stable_partition(sorted_copies.begin(), sorted_copies.end(),
                        [](QGen g) { return g.copy() == Copy::L; });
  if (sorted_copies != word) return normal_order(sorted_copies);

  std::size_t pos = word.size();
  for (std::size_t i = 0; i + 1 < word.size(); ++i) {
    if (word[i] > word[i + 1]) {
      pos = i;
      break;
    }
  }
  WordExpansion out;
  if (pos == word.size()) {
    out.emplace(word, Rational(1));
    return out;
  }
  // ab = ba + [a, b]
  Word swapped = word;
  std::swap(swapped[pos], swapped[pos + 1]);
  accumulate(out, normal_order(swapped), Rational(1));
  for (const auto& [c, g] : letter_commutator(word[pos], word[pos + 1])) {
    Word shorter(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(pos));
    shorter.push_back(g);
    shorter.insert(shorter.end(), word.begin() + static_cast<std::ptrdiff_t>(pos + 2), word.end());
    accumulate(out, normal_order(shorter), Rational(c));
  }
  return out;
}

}  // namespace

const WordExpansion& normal_order(const Word& word) {
  thread_local std::unordered_map<Word, WordExpansion, WordHash> cache;
  if (auto it = cache.find(word); it != cache.end()) return it->second;
  WordExpansion result = compute_normal_order(word);
  return cache.emplace(word, std::move(result)).first->second;
}

// -------------------------------------------------------------------- NCPoly

NCPoly::NCPoly(int ambient_size) : n_(ambient_size) {
  if (ambient_size < 1 || ambient_size > 63) {
    throw Error(ErrorCode::InvalidArgument, "ambient size must be in 1..63");
  }
}

NCPoly NCPoly::constant(int n, const LambdaPoly& c) {
  NCPoly p(n);
  p.add_normal(Word{}, c);
  return p;
}

NCPoly NCPoly::generator(int n, Copy copy, int i, int j) {
  if (i < 1 || i > n || j < 1 || j > n) {
    throw Error(ErrorCode::InvalidArgument, "generator index outside 1..N");
  }
  NCPoly p(n);
  p.add_normal(Word{QGen(copy, i, j)}, LambdaPoly(Rational(1)));
  return p;
}

void NCPoly::add_normal(const Word& word, const LambdaPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(word, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void NCPoly::add_word(const Word& word, const LambdaPoly& c) {
  if (c.is_zero()) return;
  for (const auto& [w, r] : normal_order(word)) add_normal(w, c * r);
}

static void check_sizes(const NCPoly& a, const NCPoly& b) {
  if (a.ambient_size() != b.ambient_size()) {
    throw Error(ErrorCode::MismatchedAmbientSize, "NCPoly ambient sizes differ");
  }
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
  check_sizes(*this, o);
  for (const auto& [w, c] : o.terms_) add_normal(w, c);
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
  check_sizes(*this, o);
  for (const auto& [w, c] : o.terms_) add_normal(w, c * Rational(-1));
  return *this;
}

NCPoly operator*(NCPoly a, const Rational& s) {
  NCPoly r(a.n_);
  for (const auto& [w, c] : a.terms_) r.add_normal(w, c * s);
  return r;
}

std::vector<NCPoly> NCPoly::lambda_coefficients() const {
  std::vector<NCPoly> out;
  for (const auto& [w, c] : terms_) {
    const auto& coeffs = c.coefficients();
    while (out.size() < coeffs.size()) out.emplace_back(n_);
    for (std::size_t k = 0; k < coeffs.size(); ++k) out[k].add_normal(w, LambdaPoly(coeffs[k]));
  }
  if (out.empty()) out.emplace_back(n_);
  return out;
}

bool NCPoly::is_normal_ordered() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) {
    return std::is_sorted(t.first.begin(), t.first.end());
  });
}

PoissonPoly NCPoly::classical_image() const {
  PoissonPoly out(n_);
  for (const auto& [w, c] : terms_) {
    Monomial m;
    for (QGen g : w) {
      const Symbol s = g.copy() == Copy::L ? Symbol::u(g.i(), g.j()) : Symbol::utilde(g.i(), g.j());
      m = m * Monomial(s);
    }
    const auto& coeffs = c.coefficients();
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      out.add_term(m * Monomial(Symbol::lambda(), static_cast<std::uint32_t>(k)), coeffs[k]);
    }
  }
  return out;
}

std::string NCPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [w, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += "[" + c.to_string() + "]";
    for (QGen g : w) s += "*" + g.to_string();
  }
  return s;
}

NCPoly nc_mul(const NCPoly& a, const NCPoly& b) {
  check_sizes(a, b);
  NCPoly r(a.ambient_size());
  Word w;
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      w.assign(wa.begin(), wa.end());
      w.insert(w.end(), wb.begin(), wb.end());
      r.add_word(w, ca * cb);
    }
  }
  return r;
}

NCPoly commutator(const NCPoly& a, const NCPoly& b) { return nc_mul(a, b) - nc_mul(b, a); }

// ------------------------------------------------------- quantum determinants

Rational rho_shift(int m, int c) {
  Rational r(m - 2 * c + 1, 2);
  r.canonicalize();
  return r;
}

std::string to_string(RhoConvention c) {
  return c == RhoConvention::Local ? "rho(k) on the k-th minor" : "rho(N) restricted to the k-th minor";
}

namespace {

int permutation_sign(const std::vector<int>& p) {
  int inversions = 0;
  for (std::size_t a = 0; a < p.size(); ++a) {
    for (std::size_t b = a + 1; b < p.size(); ++b) {
      if (p[a] > p[b]) ++inversions;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

NCPoly qdet(int n, Copy copy, int k, RhoConvention convention) {
  if (k < 1 || k > n) throw Error(ErrorCode::InvalidArgument, "minor size must be in 1..N");
  const int shift_size = convention == RhoConvention::Local ? k : n;
  std::vector<NCPoly> diagonal;
  for (int c = 1; c <= k; ++c) {
    NCPoly d = NCPoly::constant(n, LambdaPoly::lambda() - LambdaPoly(rho_shift(shift_size, c)));
    d -= NCPoly::generator(n, copy, c, c);
    diagonal.push_back(std::move(d));
  }
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 1);
  NCPoly total(n);
  do {
    NCPoly product = NCPoly::constant(n, LambdaPoly(Rational(1)));
    for (int c = 1; c <= k; ++c) {
      const int r = perm[static_cast<std::size_t>(c - 1)];
      const NCPoly factor =
          r == c ? diagonal[static_cast<std::size_t>(c - 1)]
                 : NCPoly::generator(n, copy, r, c) * Rational(-1);
      product = nc_mul(product, factor);
    }
    if (permutation_sign(perm) > 0) total += product;
    else total -= product;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

namespace {

bool is_constant(const NCPoly& p) {
  return p.is_zero() || (p.size() == 1 && p.terms().begin()->first.empty());
}

void append_coefficients(std::vector<QuantumMember>& out, const NCPoly& q, char side, int k) {
  const auto coeffs = q.lambda_coefficients();
  for (std::size_t power = 0; power < coeffs.size(); ++power) {
    if (is_constant(coeffs[power])) continue;
    out.push_back(QuantumMember{std::string("Q") + side + "[" + std::to_string(k) + "," +
                                    std::to_string(power) + "]",
                                coeffs[power], side, k, static_cast<int>(power)});
  }
}

}  // namespace

std::vector<QuantumMember> quantum_family(int n, RhoConvention convention) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  std::vector<QuantumMember> out;
  for (int k = 1; k < n; ++k) append_coefficients(out, qdet(n, Copy::L, k, convention), 'L', k);
  for (int k = 1; k < n; ++k) append_coefficients(out, qdet(n, Copy::R, k, convention), 'R', k);
  append_coefficients(out, qdet(n, Copy::L, n, convention), 'N', n);
  return out;
}

namespace {

QuantumConventionResult check_convention(int n, RhoConvention convention) {
  QuantumConventionResult res{convention, true, true, 0, 0, std::nullopt};
  for (Copy copy : {Copy::L, Copy::R}) {
    const auto coeffs = qdet(n, copy, n, convention).lambda_coefficients();
    for (std::size_t power = 0; power < coeffs.size(); ++power) {
      if (is_constant(coeffs[power])) continue;
      for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
          ++res.centrality_checks;
          const NCPoly c = commutator(coeffs[power], NCPoly::generator(n, copy, i, j));
          if (!c.is_zero() && res.centrality_ok) {
            res.centrality_ok = false;
            res.witness = "[qdet coefficient lambda^" + std::to_string(power) + ", " +
                          QGen(copy, i, j).to_string() + "] = " + c.to_string();
          }
        }
      }
    }
  }
  const auto family = quantum_family(n, convention);
  for (std::size_t a = 0; a < family.size(); ++a) {
    for (std::size_t b = a + 1; b < family.size(); ++b) {
      ++res.pairs_checked;
      const NCPoly c = commutator(family[a].poly, family[b].poly);
      if (!c.is_zero() && res.family_ok) {
        res.family_ok = false;
        if (!res.witness) {
          res.witness = "[" + family[a].label + ", " + family[b].label + "] = " + c.to_string();
        }
      }
    }
  }
  return res;
}

}  // namespace

QuantumReport verify_quantum_commutes(int n, const QuantumOptions& options) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  if (n >= 4 && !options.allow_large) {
    throw Error(ErrorCode::InvalidArgument,
                "N >= 4 requires the opt-in flag; PBW rewriting cost grows steeply");
  }
  QuantumReport report;
  report.n = n;
  for (RhoConvention conv : {RhoConvention::Local, RhoConvention::Ambient}) {
    if (report.validated && !options.sweep_all) break;
    QuantumConventionResult r = check_convention(n, conv);
    if (r.centrality_ok && r.family_ok && !report.validated) report.validated = conv;
    report.conventions.push_back(std::move(r));
  }
  report.ok = report.validated.has_value();
  return report;
}

}  // namespace gztower
