#include "crnf/io.hpp"

namespace crnf {

namespace {

std::vector<int> multiindex_from_json(const json& j, int n, const char* what) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        throw parse_error(std::string(what) + ": expected an array of " + std::to_string(n) + " exponents");
    std::vector<int> v;
    for (auto& e : j) {
        if (!e.is_number_integer() || e.get<long>() < 0)
            throw parse_error(std::string(what) + ": exponents must be nonnegative integers");
        v.push_back(e.get<int>());
    }
    return v;
}

int int_field(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number_integer())
        throw parse_error(std::string("missing or non-integer field '") + key + "'");
    return j.at(key).get<int>();
}

json terms_to_json_pu(const PuSeries& p) {
    json terms = json::array();
    for (auto& [m, c] : p.terms()) {
        json t;
        t["z"] = m.alpha;
        t["zbar"] = m.beta;
        t["u"] = m.l;
        t["coeff"] = format_coeff(c);
        terms.push_back(std::move(t));
    }
    return terms;
}

json terms_to_json_holo(const HoloSeries& s) {
    json terms = json::array();
    for (auto& [m, c] : s.terms()) {
        json t;
        t["z"] = m.alpha;
        t["w"] = m.l;
        t["coeff"] = format_coeff(c);
        terms.push_back(std::move(t));
    }
    return terms;
}

HoloSeries holo_from_json(const json& terms, int n, int w, const char* what) {
    if (!terms.is_array()) throw parse_error(std::string(what) + ": expected an array of terms");
    HoloSeries s(n, w);
    for (auto& t : terms) {
        HoloMonomial m{multiindex_from_json(t.at("z"), n, what), int_field(t, "w")};
        if (m.l < 0) throw parse_error(std::string(what) + ": negative w exponent");
        if (m.weight() > w)
            throw validation_error(std::string(what) + ": term exceeds max_weight");
        s.add_term(m, parse_coeff(t.at("coeff").get<std::string>()));
    }
    return s;
}

}  // namespace

json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
}

json series_to_json(const PuSeries& p, const Signature& sig) {
    json j;
    j["n"] = p.n();
    j["eps"] = sig.eps;
    j["max_weight"] = p.max_weight();
    j["terms"] = terms_to_json_pu(p);
    return j;
}

std::pair<PuSeries, Signature> series_from_json(const json& j) {
    try {
        int n = int_field(j, "n");
        int w = int_field(j, "max_weight");
        if (n < 1) throw parse_error("n must be >= 1");
        if (!j.contains("eps") || !j.at("eps").is_array())
            throw parse_error("missing or non-array field 'eps'");
        std::vector<int> eps;
        for (auto& e : j.at("eps")) eps.push_back(e.get<int>());
        Signature sig(std::move(eps));
        if (sig.n() != n) throw validation_error("eps length must equal n");
        if (!j.contains("terms") || !j.at("terms").is_array())
            throw parse_error("missing or non-array field 'terms'");
        PuSeries p(n, w);
        for (auto& t : j.at("terms")) {
            Monomial m{multiindex_from_json(t.at("z"), n, "term z"),
                       multiindex_from_json(t.at("zbar"), n, "term zbar"), int_field(t, "u")};
            if (m.l < 0) throw parse_error("term u: negative exponent");
            if (m.weight() > w) throw validation_error("term exceeds max_weight");
            p.add_term(m, parse_coeff(t.at("coeff").get<std::string>()));
        }
        return {std::move(p), std::move(sig)};
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("malformed jet document: ") + e.what());
    }
}

json jet_to_json(const HypersurfaceJet& m) { return series_to_json(m.phi(), m.sig()); }

HypersurfaceJet jet_from_json(const json& j, LeviPolicy policy) {
    auto [p, sig] = series_from_json(j);
    return HypersurfaceJet::validate(p, sig, policy);
}

json map_to_json(const MapJet& h) {
    json j;
    j["n"] = h.n();
    j["max_weight"] = h.max_weight();
    json f = json::array();
    for (int i = 0; i < h.n(); ++i) f.push_back(terms_to_json_holo(h.f(i)));
    j["f"] = std::move(f);
    j["g"] = terms_to_json_holo(h.g());
    return j;
}

MapJet map_from_json(const json& j) {
    try {
        int n = int_field(j, "n");
        int w = int_field(j, "max_weight");
        if (n < 1) throw parse_error("n must be >= 1");
        if (!j.contains("f") || !j.at("f").is_array() || static_cast<int>(j.at("f").size()) != n)
            throw parse_error("field 'f' must be an array of n term-lists");
        std::vector<HoloSeries> f;
        for (auto& fj : j.at("f")) f.push_back(holo_from_json(fj, n, w, "f"));
        if (!j.contains("g")) throw parse_error("missing field 'g'");
        return MapJet::validate(std::move(f), holo_from_json(j.at("g"), n, w, "g"));
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("malformed map document: ") + e.what());
    }
}

namespace {

const char* kind_name(LineKind k) {
    switch (k) {
        case LineKind::k_ge2: return "k>=2";
        case LineKind::k_eq1: return "k=1";
        case LineKind::k_eq0: return "k=0";
    }
    return "";
}

}  // namespace

json spec_to_json(const NormalFormSpec& s) {
    json j;
    if (s.tag()) {
        j["preset"] = preset_name(*s.tag());
        return j;
    }
    json lines = json::array();
    for (auto& [key, c] : s.table()) {
        json e;
        e["kind"] = kind_name(c.kind);
        e["k"] = c.k;
        e["l"] = c.l;
        e["m"] = c.m;
        if (c.kind == LineKind::k_ge2 || c.kind == LineKind::k_eq1 || c.kind == LineKind::k_eq0)
            e["mp"] = c.mp;
        if (c.kind == LineKind::k_eq1) e["mpp"] = c.mpp;
        if (c.kind == LineKind::k_eq0) {
            e["mt"] = c.mt;
            e["mtp"] = c.mtp;
        }
        lines.push_back(std::move(e));
    }
    j["custom"] = std::move(lines);
    return j;
}

NormalFormSpec spec_from_json(const json& j, int max_weight) {
    try {
        if (j.contains("preset")) {
            auto p = preset_from_name(j.at("preset").get<std::string>());
            if (!p) throw parse_error("unknown preset name");
            return preset(*p, max_weight);
        }
        if (!j.contains("custom") || !j.at("custom").is_array())
            throw parse_error("spec document needs 'preset' or a 'custom' array");
        std::vector<LineChoice> choices;
        for (auto& e : j.at("custom")) {
            LineChoice c;
            std::string kind = e.at("kind").get<std::string>();
            if (kind == "k>=2")
                c.kind = LineKind::k_ge2;
            else if (kind == "k=1")
                c.kind = LineKind::k_eq1;
            else if (kind == "k=0")
                c.kind = LineKind::k_eq0;
            else
                throw parse_error("line kind must be one of \"k>=2\", \"k=1\", \"k=0\"");
            c.k = int_field(e, "k");
            c.l = int_field(e, "l");
            c.m = int_field(e, "m");
            c.mp = int_field(e, "mp");
            if (c.kind == LineKind::k_eq1) c.mpp = int_field(e, "mpp");
            if (c.kind == LineKind::k_eq0) {
                c.mt = int_field(e, "mt");
                c.mtp = int_field(e, "mtp");
            }
            choices.push_back(c);
        }
        return NormalFormSpec::from_table(std::move(choices), max_weight);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("malformed spec document: ") + e.what());
    }
}

}  // namespace crnf
