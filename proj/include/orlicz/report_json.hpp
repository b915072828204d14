#pragma once

#include <json.hpp>

#include "orlicz/criteria.hpp"
#include "orlicz/indices.hpp"
#include "orlicz/io.hpp"
#include "orlicz/mc_sim.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/span_builder.hpp"

namespace orlicz {

inline const char* to_string(EquivVerdict v) {
  switch (v) {
    case EquivVerdict::Equivalent: return "equivalent";
    case EquivVerdict::LhsDominated: return "lhs_dominated";
    case EquivVerdict::RhsDominated: return "rhs_dominated";
    default: return "inconclusive";
  }
}

inline const char* to_string(NormFlag f) {
  switch (f) {
    case NormFlag::Ok: return "ok";
    case NormFlag::Zero: return "zero";
    default: return "not_in_space";
  }
}

inline nlohmann::json to_json(const NormResult& r) {
  return {{"value", r.value},
          {"residual", r.residual},
          {"flag", to_string(r.flag)}};
}

inline nlohmann::json to_json(const EquivalenceReport& r) {
  return {{"param", r.param},
          {"lhs", r.lhs},
          {"rhs", r.rhs},
          {"ratio_min", r.ratio_min},
          {"ratio_max", r.ratio_max},
          {"trend_slope", r.trend_slope},
          {"band_limit", r.band_limit},
          {"slope_tol", r.slope_tol},
          {"verdict", to_string(r.verdict)}};
}

inline nlohmann::json to_json(const IndexEstimate& e) {
  return {{"point", e.point},
          {"rigorous_bound", e.rigorous_bound},
          {"bound_side", e.side == BoundSide::Lower ? "lower" : "upper"},
          {"decades_used", e.decades_used},
          {"fit_residual", e.fit_residual},
          {"degenerate", e.degenerate}};
}

inline nlohmann::json to_json(const IndexPair& p) {
  return {{"alpha", to_json(p.alpha)}, {"beta", to_json(p.beta)}};
}

inline nlohmann::json to_json(const SubmultResult& s) {
  return {{"holds", s.holds},
          {"C", s.C},
          {"growth", s.growth},
          {"witness_s", s.witness_s},
          {"witness_t", s.witness_t}};
}

inline nlohmann::json to_json(const Delta2Result& d) {
  return {{"value", d.value}, {"argmax", d.argmax}, {"unbounded", d.unbounded}};
}

inline nlohmann::json to_json(const PConvexityResult& p) {
  return {{"holds", p.holds},
          {"C", p.C},
          {"growth", p.growth},
          {"witness_s", p.witness_s},
          {"witness_t", p.witness_t}};
}

inline nlohmann::json to_json(const CriteriaVerdict& v) {
  return {{"strongly_embedded", to_string(v.strongly_embedded)},
          {"equicontinuous", to_string(v.equicontinuous)},
          {"index_gap", v.index_gap},
          {"gap_uncertainty", v.gap_uncertainty},
          {"membership", to_string(v.membership)},
          {"psi_indices", to_json(v.psi_indices)},
          {"M_indices", to_json(v.M_indices)},
          {"dilation", to_json(v.dilation)},
          {"submultiplicative", to_json(v.submult)},
          {"hypothesis_gate", v.hypothesis_gate},
          {"reason", v.reason}};
}

inline nlohmann::json to_json(const EmpiricalNorm& e) {
  return {{"value", e.norm.value},
          {"flag", to_string(e.norm.flag)},
          {"bootstrap_se", e.se},
          {"tail_loss", e.tail_loss}};
}

}  // namespace orlicz
