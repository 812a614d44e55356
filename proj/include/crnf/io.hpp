#ifndef CRNF_IO_HPP
#define CRNF_IO_HPP

#include <json.hpp>
#include <utility>

#include "crnf/hypersurface.hpp"
#include "crnf/normalform.hpp"

namespace crnf {

using json = nlohmann::ordered_json;

/// Jet document: {n, eps, max_weight, terms: [{z, zbar, u, coeff}]}.
json jet_to_json(const HypersurfaceJet& m);
HypersurfaceJet jet_from_json(const json& j, LeviPolicy policy = LeviPolicy::require_diagonal);

/// Same document shape, without hypersurface validation (decompose input).
json series_to_json(const PuSeries& p, const Signature& sig);
std::pair<PuSeries, Signature> series_from_json(const json& j);

/// Map document: {n, max_weight, f: [[{z, w, coeff}], ...], g: [{z, w, coeff}]}.
json map_to_json(const MapJet& h);
MapJet map_from_json(const json& j);

/// Spec document: {"preset": name} or {"custom": [{kind, k, l, m, mp, ...}]}.
json spec_to_json(const NormalFormSpec& s);
NormalFormSpec spec_from_json(const json& j, int max_weight);

/// Parse text into json, converting library exceptions into parse_error.
json parse_json_text(const std::string& text);

}  // namespace crnf

#endif
