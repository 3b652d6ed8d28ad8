#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "chart.hpp"
#include "complex.hpp"
#include "higgs.hpp"

namespace simpson {

using json = nlohmann::json;

// RingElt: array of power-basis coefficients (floor = e), or {"coeffs": [...], "floor": f}.
json to_json(const RingElt& x);
RingElt ring_elt_from_json(const Ring& R, const json& j);
json to_json(const Mat& m);
Mat mat_from_json(const Ring& R, const json& j);

json to_json(const CyclotomicParams& p);
CyclotomicParams cyclotomic_from_json(const json& j);
json to_json(const ChartParams& c);
ChartParams chart_from_json(const json& j);

json to_json(const FreeComplex& C);
json to_json(const ModuleProfile& m);
json to_json(const CohomologyProfile& p);

// {"ring", "chart", "rank", "theta"} or {"ring", "chart", "rank", "gamma", "witness"?}
struct Instance {
  CyclotomicParams ring;
  ChartParams chart;
  std::optional<HiggsModule> higgs;
  std::optional<GammaRep> rep;
  json stamp;  // round-trip verification record, null when absent
};
Instance instance_from_json(const json& j);
Instance instance_from_text(const std::string& text);
json to_json(const Instance& inst);

// FNV-1a over the compact dump, as 16 hex digits
std::string digest(const json& j);

}  // namespace simpson
