#pragma once

// JSON encodings. Complex scalars are [re, im]; matrices are row-major lists
// of complex scalars.

#include <nlohmann/json.hpp>

#include "gztower/canonical.hpp"
#include "gztower/classical.hpp"
#include "gztower/diffop.hpp"
#include "gztower/flow.hpp"
#include "gztower/orbit.hpp"
#include "gztower/quantum.hpp"
#include "gztower/tower.hpp"

namespace gztower {

using json = nlohmann::json;

json as_json(cplx z);
json as_json(const std::vector<cplx>& v);
json as_json(const CMatrix& m);

cplx complex_from_json(const json& j);
/// Row-major n×n matrix; throws InvalidArgument on shape errors.
CMatrix matrix_from_json(const json& j, int n);

json as_json(const CanonicalPoint& pt);
CanonicalPoint canonical_point_from_json(const json& j);

json as_json(const OrbitPoint& pt);
OrbitPoint orbit_point_from_json(const json& j);

json as_json(const GZChart& chart);
json as_json(const ChartResiduals& r);
json as_json(const RealizationCandidate& c);
json as_json(const FamilySpec& spec);
json as_json(const CommuteReport& r);
json as_json(const TrivialReport& r);
json as_json(const QuantumReport& r);
json as_json(const DiffOpReport& r);
json as_json(const CanonicalChartReport& r);
json as_json(const ResidueFormReport& r);
json as_json(const TowerLevel& level);
json as_json(const TowerDescriptor& tower);
json as_json(const PairingReport& r);
json as_json(const ConservationReport& r);
json as_json(const LinearizationReport& r);

/// One JSON-lines trajectory record {t, u, h, tau, branch_flags}.
json trajectory_record(const CMatrix& u, const AngleSample& sample);

}  // namespace gztower
