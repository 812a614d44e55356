#include "crnf/normalform.hpp"

#include <algorithm>

#include "crnf/trace.hpp"

namespace crnf {

namespace {

bool in_range(int v, int l) { return 0 <= v && v <= l; }

}  // namespace

bool validate_choice(const LineChoice& c) {
    switch (c.kind) {
        case LineKind::k_ge2:
            if (c.k < 2 || c.l < 1) return false;
            return in_range(c.m, c.l) && in_range(c.mp, c.l) && c.m >= 1 && c.m != c.mp;
        case LineKind::k_eq1: {
            if (c.k != 1 || c.l < 2) return false;
            if (!(in_range(c.m, c.l) && in_range(c.mp, c.l) && in_range(c.mpp, c.l))) return false;
            if (c.m < 1) return false;
            if (c.m == c.mp || c.m == c.mpp || c.mp == c.mpp) return false;
            // among the nonzero indices, neither all even nor all odd
            bool has_even = false, has_odd = false;
            for (int v : {c.m, c.mp, c.mpp}) {
                if (v == 0) continue;
                (v % 2 == 0 ? has_even : has_odd) = true;
            }
            return has_even && has_odd;
        }
        case LineKind::k_eq0:
            if (c.k != 0 || c.l < 3) return false;
            if (!(in_range(c.m, c.l) && in_range(c.mp, c.l) && in_range(c.mt, c.l) && in_range(c.mtp, c.l)))
                return false;
            if (c.m % 2 != 0 || c.mp % 2 != 0 || c.mt % 2 == 0 || c.mtp % 2 == 0) return false;
            return c.m >= 1 && c.m != c.mp && c.mt != c.mtp;
    }
    return false;
}

Rational choice_determinant(const LineChoice& c) {
    long l = c.l;
    auto row2 = [&](long mu) { return std::pair<Rational, Rational>(binomial(l, mu), binomial(l - 1, mu - 1)); };
    // det of rows (C(l,mu), -C(l-1,mu-1)), mu = a then b
    auto det2 = [&](long a, long b) -> Rational {
        auto [a0, a1] = row2(a);
        auto [b0, b1] = row2(b);
        return b0 * a1 - a0 * b1;
    };
    switch (c.kind) {
        case LineKind::k_ge2:
            if (c.k < 2 || c.l < 1 || c.m < 1 || c.mp < 0) return Rational(0);
            return det2(c.m, c.mp);
        case LineKind::k_eq1: {
            if (c.k != 1 || c.l < 2 || c.m < 1 || c.mp < 0 || c.mpp < 0) return Rational(0);
            // rows (C(l,mu), C(l-1,mu-1), (-1)^mu C(l-1,mu-1)); units factored out
            Rational d(0);
            int rows[3] = {c.m, c.mp, c.mpp};
            Rational a[3][3];
            for (int i = 0; i < 3; ++i) {
                a[i][0] = binomial(l, rows[i]);
                a[i][1] = binomial(l - 1, rows[i] - 1);
                a[i][2] = (rows[i] % 2 == 0 ? 1 : -1) * a[i][1];
            }
            d = a[0][0] * (a[1][1] * a[2][2] - a[2][1] * a[1][2]) -
                a[0][1] * (a[1][0] * a[2][2] - a[2][0] * a[1][2]) +
                a[0][2] * (a[1][0] * a[2][1] - a[2][0] * a[1][1]);
            return d;
        }
        case LineKind::k_eq0: {
            if (c.k != 0 || c.l < 3 || c.m < 1) return Rational(0);
            if (c.m % 2 != 0 || c.mp % 2 != 0 || c.mt % 2 == 0 || c.mtp % 2 == 0) return Rational(0);
            if (c.mt < 0 || c.mtp < 0 || c.mp < 0) return Rational(0);
            return Rational(4) * det2(c.m, c.mp) * det2(c.mt, c.mtp);
        }
    }
    return Rational(0);
}

std::string preset_name(Preset p) {
    switch (p) {
        case Preset::chern_moser: return "chern-moser";
        case Preset::nf1: return "nf1";
        case Preset::nf2: return "nf2";
        case Preset::nf12: return "nf12";
        case Preset::min_l: return "min-l";
        case Preset::mixed: return "mixed";
    }
    return "";
}

std::optional<Preset> preset_from_name(const std::string& s) {
    for (Preset p : {Preset::chern_moser, Preset::nf1, Preset::nf2, Preset::nf12, Preset::min_l, Preset::mixed})
        if (preset_name(p) == s) return p;
    return std::nullopt;
}

std::vector<LineKey> choice_lines_up_to(int max_weight) {
    std::vector<LineKey> out;
    for (int l = 3; 2 * l <= max_weight; ++l) out.push_back({0, l});
    for (int l = 2; 1 + 2 * l <= max_weight; ++l) out.push_back({1, l});
    for (int k = 2; k <= max_weight; ++k)
        for (int l = 1; k + 2 * l <= max_weight; ++l) out.push_back({k, l});
    std::sort(out.begin(), out.end());
    return out;
}

const LineChoice& NormalFormSpec::choice(int k, int l) const {
    auto it = table_.find({k, l});
    if (it == table_.end()) throw validation_error("NormalFormSpec: no choice stored for this line");
    return it->second;
}

NormalFormSpec NormalFormSpec::from_table(std::vector<LineChoice> choices, int max_weight) {
    if (max_weight < 2) throw validation_error("NormalFormSpec: max_weight must be >= 2");
    std::map<LineKey, LineChoice> table;
    for (auto& c : choices) {
        if (!validate_choice(c)) throw validation_error("NormalFormSpec: inadmissible line choice");
        if (c.k + 2 * c.l > max_weight)
            throw validation_error("NormalFormSpec: choice beyond max_weight");
        if (!table.emplace(LineKey{c.k, c.l}, c).second)
            throw validation_error("NormalFormSpec: duplicate line");
    }
    for (auto key : choice_lines_up_to(max_weight))
        if (!table.count(key)) throw validation_error("NormalFormSpec: missing choice for a line");
    return NormalFormSpec(std::move(table), max_weight, std::nullopt);
}

NormalFormSpec preset(Preset tag, int max_weight) {
    if (max_weight < 2) throw validation_error("preset: max_weight must be >= 2");
    std::map<LineKey, LineChoice> table;
    for (auto [k, l] : choice_lines_up_to(max_weight)) {
        LineChoice c;
        c.k = k;
        c.l = l;
        if (k >= 2) {
            c.kind = LineKind::k_ge2;
            switch (tag) {
                case Preset::min_l: c.m = l; c.mp = l - 1; break;
                case Preset::mixed: c.m = l; c.mp = 0; break;
                default: c.m = 1; c.mp = 0; break;
            }
        } else if (k == 1) {
            c.kind = LineKind::k_eq1;
            switch (tag) {
                case Preset::nf2:
                case Preset::nf12: c.m = 2; c.mp = 0; c.mpp = 1; break;
                case Preset::min_l: c.m = l; c.mp = l - 1; c.mpp = l - 2; break;
                case Preset::mixed: c.m = l; c.mp = 0; c.mpp = l - 1; break;
                default: c.m = 1; c.mp = 0; c.mpp = 2; break;
            }
        } else {
            c.kind = LineKind::k_eq0;
            switch (tag) {
                case Preset::nf1:
                case Preset::nf12: c.m = 2; c.mp = 0; c.mt = 3; c.mtp = 1; break;
                case Preset::min_l:
                    if (l % 2 == 0) {
                        c.m = l; c.mp = l - 2; c.mt = l - 1; c.mtp = l - 3;
                    } else {
                        c.m = l - 1; c.mp = l - 3; c.mt = l; c.mtp = l - 2;
                    }
                    break;
                case Preset::mixed:
                    if (l % 2 == 0) {
                        c.m = l; c.mp = 0; c.mt = l - 1; c.mtp = 1;
                    } else {
                        c.m = l - 1; c.mp = 0; c.mt = l; c.mtp = 1;
                    }
                    break;
                default: c.m = 2; c.mp = 0; c.mt = 1; c.mtp = 3; break;
            }
        }
        if (!validate_choice(c)) throw internal_error("preset: generated an inadmissible choice");
        table.emplace(LineKey{k, l}, c);
    }
    return NormalFormSpec(std::move(table), max_weight, tag);
}

std::vector<Condition> conditions_up_to(const NormalFormSpec& spec, int w) {
    if (w > spec.max_weight()) throw validation_error("conditions_up_to: weight exceeds the spec's table");
    std::vector<Condition> out;
    // k = 0 lines: l = 2 fixed, l >= 3 from the even/odd pairs
    for (int l = 2; 2 * l <= w; ++l) {
        if (l == 2) {
            out.push_back({0, 0, 2, 0});
            out.push_back({1, 1, 1, 0});
            out.push_back({2, 2, 0, 1});
            continue;
        }
        const LineChoice& c = spec.choice(0, l);
        out.push_back({c.m, c.m, l - c.m, c.m - 1});
        out.push_back({c.mp, c.mp, l - c.mp, c.mp});
        out.push_back({c.mt, c.mt, l - c.mt, c.mt - 1});
        out.push_back({c.mtp, c.mtp, l - c.mtp, c.mtp});
    }
    // k = 1 lines: l = 1 fixed, l >= 2 from the triple
    for (int l = 1; 1 + 2 * l <= w; ++l) {
        if (l == 1) {
            out.push_back({1, 0, 1, 0});
            out.push_back({2, 1, 0, 0});
            continue;
        }
        const LineChoice& c = spec.choice(1, l);
        out.push_back({1 + c.m, c.m, l - c.m, c.m - 1});
        out.push_back({1 + c.mp, c.mp, l - c.mp, c.mp});
        out.push_back({1 + c.mpp, c.mpp, l - c.mpp, c.mpp});
    }
    // k >= 2 lines: l = 0 forced, l >= 1 from the pair
    for (int k = 2; k <= w; ++k) {
        for (int l = 0; k + 2 * l <= w; ++l) {
            if (l == 0) {
                out.push_back({k, 0, 0, 0});
                continue;
            }
            const LineChoice& c = spec.choice(k, l);
            out.push_back({k + c.m, c.m, l - c.m, c.m - 1});
            out.push_back({k + c.mp, c.mp, l - c.mp, c.mp});
        }
    }
    return out;
}

std::vector<Violation> check(const HypersurfaceJet& m, const NormalFormSpec& spec) {
    if (spec.max_weight() < m.max_weight())
        throw validation_error("check: spec table does not cover the jet's max_weight");
    std::vector<Violation> out;
    for (auto& c : conditions_up_to(spec, m.max_weight())) {
        PuSeries comp = m.phi().bicomponent(c.k, c.m, c.l);
        if (comp.is_zero()) continue;
        PuSeries res = trace_pow(comp, m.sig(), c.t);
        if (!res.is_zero()) out.push_back({c, std::move(res)});
    }
    return out;
}

}  // namespace crnf
