#pragma once

#include <json.hpp>

#include "goodsemi/apery.hpp"
#include "goodsemi/hn.hpp"
#include "goodsemi/plane_sequence.hpp"
#include "goodsemi/semigroup.hpp"
#include "goodsemi/series.hpp"
#include "goodsemi/tree.hpp"
#include "goodsemi/valuation.hpp"

// All numeric payloads are serialized as strings so that exact rationals and
// the "inf" marker share one representation; readers accept plain numbers too.

namespace goodsemi {

using json = nlohmann::json;

json semigroup_to_json(const GoodSemigroup& S);
GoodSemigroup semigroup_from_json(const json& j);
// raw pieces, without running the axiom check (for `good check`)
std::pair<Point, PointSet> semigroup_parts_from_json(const json& j);

json levels_to_json(const LevelPartition& P);
LevelPartition levels_from_json(const json& j);

json sequence_to_json(const PlaneSequence& e);
PlaneSequence sequence_from_json(const json& j);

json htype_to_json(const HType& H);
HType htype_from_json(const json& j);

json series_to_json(const TruncatedSeries& s);
TruncatedSeries series_from_json(const json& j);

json branch_to_json(const BranchParam& b);
BranchParam branch_from_json(const json& j);

json curve_to_json(const CurveParam& c);
CurveParam curve_from_json(const json& j);

json hn_to_json(const HNExpansion& h);
HNExpansion hn_from_json(const json& j);

json tree_to_json(const MultiplicityTree& T);
MultiplicityTree tree_from_json(const json& j);

json splitting_to_json(const SplittingData& D);
SplittingData splitting_from_json(const json& j);

json verify_report_to_json(const VerifyReport& r);

}  // namespace goodsemi
