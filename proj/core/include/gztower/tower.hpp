#pragma once

// Action-angle variables and the spectral tower of a regular orbit point.
// Level n carries the punctured line Σ_n = CP¹ \ {γ_{n1..nn}} with
// differentials Ω_n^{(k)} = λ^{k−1} dλ / A_n(λ).

#include <optional>
#include <string>
#include <vector>

#include "gztower/orbit.hpp"
#include "gztower/poisson.hpp"

namespace gztower {

/// Partial fractions λ^{k−1}/A_n(λ) = Σ_j r[j][k−1]/(λ − γ_j), k = 1..n.
struct ResidueTable {
  std::vector<cplx> gamma;
  std::vector<std::vector<cplx>> r;

  /// Σ_j r[j][k−1], which equals δ_{kn}.
  std::vector<cplx> column_sums() const;
  /// Σ_j r[j][k−1] log(λ − γ_j), principal branch.
  cplx antiderivative(int k, cplx lambda) const;
};

/// Throws SquareFreeViolation if two punctures are closer than `min_gap`.
ResidueTable differentials(const std::vector<cplx>& gamma, double min_gap = 1e-10);

/// Same table in exact arithmetic for rational punctures.
std::vector<std::vector<Rational>> differentials_exact(const std::vector<Rational>& gamma);

inline constexpr double kDeflectionRadius = 1e-3;
inline constexpr double kEndpointClearance = 1e-8;

struct PathLog {
  /// ∫ dλ/(λ − p) along the segment a → b.
  cplx value;
  bool deflected = false;
};

/// Integral of dλ/(λ − p) along the straight segment a → b. When p lies
/// within kDeflectionRadius of the segment interior the path passes it on
/// a semicircle that keeps p on its left. Throws PathThroughPuncture when
/// an endpoint lies within kEndpointClearance of p or the path runs through
/// p with no room to deflect.
PathLog path_log(cplx a, cplx b, cplx p);

enum class AngleConvention { Literal, Augmented };
std::string to_string(AngleConvention c);

struct BranchRecord {
  char endpoint_kind;  // 'e' for a zero of Ĉ_n, 'g' for γ_{n−1,i}
  int endpoint;
  int puncture;
  cplx value;
  bool deflected = false;
};

struct TowerLevel {
  int n = 0;
  std::vector<cplx> gamma;
  /// h[k] for k = 0..n with A_n(λ) = Σ_k h[k] λ^{n−k}; h[0] = 1.
  std::vector<cplx> h;
  /// Zeros of Ĉ_n; empty at the top level.
  std::vector<cplx> e;
  /// Leading coefficient of Ĉ_n (top level: 0).
  cplx c_lead{};
  /// τ_{n1..nn}; empty at the top level.
  std::vector<cplx> tau;
  cplx base_point{};
  std::vector<BranchRecord> branches;
  ResidueTable residues;
  /// J_{nj} = ∏_i (e_i − γ_j)/(γ_{n−1,i} − γ_j) ∈ C*.
  std::vector<cplx> jacobian;
  /// Zero section ρ_n^{(k)} = Σ_j ∫_{λ₀}^{γ_{n−1,j}} Ω_n^{(k)}, k = 1..n.
  std::vector<cplx> zero_section;
};

struct TowerOptions {
  cplx base_point{0.37, 1.91};
  AngleConvention convention = AngleConvention::Augmented;
  ChartConvention chart;
};

/// Angle variables τ_{nk} = Σ_i ∫_{λ₀}^{e_i} Ω_n^{(n−k+1)} − Σ_i ∫_{λ₀}^{γ_{n−1,i}} Ω_n^{(n−k+1)},
/// plus log c_lead in τ_{n1} for the augmented convention. With a
/// reference level every log term is put on the branch nearest the
/// reference value; e and γ are matched to the reference order first.
void compute_angles(TowerLevel& level, const std::vector<cplx>& lower_gamma, AngleConvention convention,
                    const TowerLevel* reference = nullptr);

struct TowerDescriptor {
  int n = 0;
  TowerOptions options;
  std::vector<TowerLevel> levels;
};

TowerDescriptor build_tower(const CMatrix& u, const TowerOptions& options = {});

/// Tower at a nearby point, continuous with `reference`. Throws
/// TrackingAmbiguous when roots cannot be matched unambiguously.
TowerDescriptor build_tower_tracked(const CMatrix& u, const TowerDescriptor& reference, double min_separation);

/// Σ_i ∫_{λ₀}^{plus_i} Ω^{(k)} − Σ_i ∫_{λ₀}^{minus_i} Ω^{(k)} on the curve punctured at gamma.
cplx abel_map(const ResidueTable& table, int k, const std::vector<cplx>& plus, const std::vector<cplx>& minus,
              cplx base_point);

/// All h_{mk}, then all τ_{mk}, for levels where they exist; labels follow
/// the same order.
std::vector<cplx> action_angle_values(const TowerDescriptor& tower);
std::vector<std::string> action_angle_labels(int n);

struct PairingReport {
  AngleConvention convention;
  int min_level = 1;
  std::vector<std::string> labels;
  /// pairing(a, b) = {h_a, τ_b}; hh(a, b) = {h_a, h_b}.
  CMatrix pairing;
  CMatrix hh;
  double max_defect = 0.0;
  bool ok = false;
  std::string witness;
};

/// {h_{nk}, τ_{ml}} against δ_{nm}δ_{kl} and {h, h} against 0, over levels
/// min_level ≤ n, m ≤ N−1.
PairingReport verify_action_angle(const CMatrix& u, AngleConvention convention, int min_level = 2,
                                  double tolerance = 1e-4, double step = 1e-5,
                                  const TowerOptions& options = {});

}  // namespace gztower
