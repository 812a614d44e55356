#include "crnf/solver.hpp"

#include <tuple>

#include "crnf/linsolve.hpp"
#include "crnf/trace.hpp"

namespace crnf {

namespace {

PuSeries qpart(const PuSeries& p, int s, const Signature& sig) { return trace_decompose(p, s, sig).q; }

// coefficient of g_{kl} Lambda^mu in phi': (1/2i) C(l,mu) i^mu
GaussianRational gamma_mu(int l, int mu) {
    return GaussianRational(Rational(0), Rational(-1, 2)) * GaussianRational(binomial(l, mu)) * i_pow(mu);
}
// coefficient of <f_{k+1,l-1}(z),z> Lambda^{mu-1}: -C(l-1,mu-1) i^{mu-1}
GaussianRational psi_mu(int l, int mu) {
    return -GaussianRational(binomial(l - 1, mu - 1)) * i_pow(mu - 1);
}
// coefficient of <z,f_{0l}> Lambda^mu: -C(l,mu) (-i)^mu
GaussianRational chi_mu(int l, int mu) {
    return -GaussianRational(binomial(l, mu)) * i_pow(-mu);
}

GaussianRational sig_even(int mu) { return GaussianRational((mu / 2) % 2 == 0 ? 1 : -1); }
GaussianRational sig_odd(int mu) { return GaussianRational(((mu - 1) / 2) % 2 == 0 ? 1 : -1); }

// recover f from <f(z), z> = sum_j eps_j f_j(z) zbar_j (works for any bidegree (*,1))
std::vector<PuSeries> f_from_pairing(const PuSeries& bigf, const Signature& sig) {
    int n = bigf.n(), w = bigf.max_weight();
    std::vector<PuSeries> f(n, PuSeries(n, w));
    for (auto& [mono, c] : bigf.terms()) {
        if (mono.l != 0 || mono.bdeg() != 1) throw internal_error("f_from_pairing: not of bidegree (*,1)");
        int j = 0;
        while (mono.beta[j] == 0) ++j;
        f[j].add_term(Monomial{mono.alpha, std::vector<int>(n, 0), 0},
                      GaussianRational(Rational(sig.eps[j])) * c);
    }
    return f;
}

HoloSeries holo_from_zpoly(const PuSeries& p, int wpow, int max_weight) {
    HoloSeries out(p.n(), max_weight);
    for (auto& [mono, c] : p.terms()) {
        if (mono.bdeg() != 0 || mono.l != 0) throw internal_error("holo_from_zpoly: not a z-polynomial");
        out.add_term(HoloMonomial{mono.alpha, wpow}, c);
    }
    return out;
}

GaussianRational inv(const GaussianRational& c) { return GaussianRational(1) / c; }

const GaussianRational minus_2i{Rational(0), Rational(-2)};

}  // namespace

LineSystem build_line_system(const HypersurfaceJet& m, int k, int l) {
    if (k < 0 || l < 0 || k + 2 * l > m.max_weight())
        throw validation_error("build_line_system: line out of range");
    LineSystem sys{k, l, {}};
    for (int mu = 0; mu <= l; ++mu) sys.rhs.push_back(m.phi().bicomponent_poly(k + mu, mu, l - mu));
    return sys;
}

KGe2Solution solve_line_k_ge2(const LineSystem& sys, const LineChoice& choice, const Signature& sig) {
    int k = sys.k, l = sys.l;
    if (k < 2 || static_cast<int>(sys.rhs.size()) != l + 1)
        throw validation_error("solve_line_k_ge2: malformed line system");
    int w = sys.rhs[0].max_weight();
    if (l == 0) return {minus_2i * sys.rhs[0], {}};
    if (choice.kind != LineKind::k_ge2 || choice.k != k || choice.l != l || !validate_choice(choice))
        throw validation_error("solve_line_k_ge2: choice does not fit the line");
    int m = choice.m, mp = choice.mp;
    PuSeries lam = PuSeries::levi(sig, w);
    PuSeries qm = qpart(sys.rhs[m], m - 1, sig);
    PuSeries g(sig.n(), w);
    if (mp == 0) {
        g = minus_2i * sys.rhs[0];
    } else {
        GaussianRational coef = gamma_mu(l, mp) - psi_mu(l, mp) * gamma_mu(l, m) / psi_mu(l, m);
        if (coef.is_zero()) throw internal_error("solve_line_k_ge2: singular coefficient");
        PuSeries rhs = -qpart(sys.rhs[mp], mp, sig) + (psi_mu(l, mp) / psi_mu(l, m)) * qpart(qm, 1, sig);
        g = inv(coef) * rhs;
    }
    PuSeries bigf = -inv(psi_mu(l, m)) * (qm + gamma_mu(l, m) * (g * lam));
    return {std::move(g), f_from_pairing(bigf, sig)};
}

K1Solution solve_line_k1(const LineSystem& sys, const LineChoice& choice, const Signature& sig) {
    int l = sys.l;
    if (sys.k != 1 || l < 2 || static_cast<int>(sys.rhs.size()) != l + 1)
        throw validation_error("solve_line_k1: malformed line system");
    if (choice.kind != LineKind::k_eq1 || choice.l != l || !validate_choice(choice))
        throw validation_error("solve_line_k1: choice does not fit the line");
    int n = sig.n(), w = sys.rhs[0].max_weight();
    PuSeries lam = PuSeries::levi(sig, w);
    int m = choice.m;
    PuSeries qm = qpart(sys.rhs[m], m - 1, sig);
    PuSeries q1qm = qpart(qm, 1, sig);
    auto row = [&](int nu) {
        GaussianRational a = gamma_mu(l, nu) - psi_mu(l, nu) * gamma_mu(l, m) / psi_mu(l, m);
        GaussianRational b = chi_mu(l, nu) - psi_mu(l, nu) * chi_mu(l, m) / psi_mu(l, m);
        PuSeries r = -qpart(sys.rhs[nu], nu, sig) + (psi_mu(l, nu) / psi_mu(l, m)) * q1qm;
        return std::tuple<GaussianRational, GaussianRational, PuSeries>(a, b, std::move(r));
    };
    auto [a1, b1, r1] = row(choice.mp);
    auto [a2, b2, r2] = row(choice.mpp);
    GaussianRational det = a1 * b2 - a2 * b1;
    if (det.is_zero()) throw internal_error("solve_line_k1: singular 2x2 system");
    PuSeries g = inv(det) * (b2 * r1 - b1 * r2);
    PuSeries f0poly = inv(det) * (a1 * r2 - a2 * r1);  // <z, f_0l>
    PuSeries bigf2 =
        -inv(psi_mu(l, m)) * (qm + gamma_mu(l, m) * (g * lam) + chi_mu(l, m) * (f0poly * lam));
    std::vector<GaussianRational> f0(n);
    for (int j = 0; j < n; ++j) {
        std::vector<int> e(n, 0);
        e[j] = 1;
        f0[j] = GaussianRational(Rational(sig.eps[j])) *
                f0poly.coeff(Monomial{e, std::vector<int>(n, 0), 0}).conj();
    }
    return {std::move(g), f_from_pairing(bigf2, sig), std::move(f0)};
}

K1Solution solve_line_k1_fixed(const LineSystem& sys, const Signature& sig) {
    if (sys.k != 1 || sys.l != 1 || sys.rhs.size() != 2)
        throw validation_error("solve_line_k1_fixed: malformed line system");
    int n = sig.n(), w = sys.rhs[0].max_weight();
    PuSeries lam = PuSeries::levi(sig, w);
    PuSeries g = minus_2i * sys.rhs[0];
    PuSeries bigf2 = -inv(psi_mu(1, 1)) * (sys.rhs[1] + gamma_mu(1, 1) * (g * lam));
    return {std::move(g), f_from_pairing(bigf2, sig), std::vector<GaussianRational>(n)};
}

K0Solution solve_line_k0(const LineSystem& sys, const LineChoice& choice, const Signature& sig) {
    int l = sys.l;
    if (sys.k != 0 || l < 3 || static_cast<int>(sys.rhs.size()) != l + 1)
        throw validation_error("solve_line_k0: malformed line system");
    if (choice.kind != LineKind::k_eq0 || choice.l != l || !validate_choice(choice))
        throw validation_error("solve_line_k0: choice does not fit the line");
    int w = sys.rhs[0].max_weight();
    PuSeries lam = PuSeries::levi(sig, w);

    // one parity class: the scalar (Im or Re of g_0l) and the matching part of <f_{1,l-1}(z),z>
    auto solve_pair = [&](int m, int mp, bool even) {
        auto sg = even ? sig_even : sig_odd;
        PuSeries qm = qpart(sys.rhs[m], m - 1, sig);
        Rational c_lm = binomial(l, m), c_l1m = binomial(l - 1, m - 1);
        Rational t;
        if (mp == 0) {
            GaussianRational a0 = sys.rhs[0].constant_term();
            if (a0.im != 0) throw internal_error("solve_line_k0: non-real data");
            t = -a0.re;
        } else {
            Rational c_lmp = binomial(l, mp), c_l1mp = binomial(l - 1, mp - 1);
            GaussianRational qa = qpart(sys.rhs[mp], mp, sig).constant_term();
            GaussianRational qq = qpart(qm, 1, sig).constant_term();
            GaussianRational coef = sg(mp) * GaussianRational(c_lmp - c_l1mp * c_lm / c_l1m);
            if (coef.is_zero()) throw internal_error("solve_line_k0: singular scalar coefficient");
            GaussianRational rhs = -qa + sg(mp) / sg(m) * GaussianRational(c_l1mp / c_l1m) * qq;
            GaussianRational tv = rhs / coef;
            if (tv.im != 0) throw internal_error("solve_line_k0: non-real solution");
            t = tv.re;
        }
        PuSeries part = (inv(GaussianRational(Rational(2) * c_l1m))) *
                        (inv(sg(m)) * qm + GaussianRational(c_lm * t) * lam);
        return std::pair<Rational, PuSeries>(std::move(t), std::move(part));
    };

    auto [y, pi] = solve_pair(choice.m, choice.mp, true);
    auto [x, pr] = solve_pair(choice.mt, choice.mtp, false);
    PuSeries p = pr + GaussianRational::i() * pi;
    return {GaussianRational(x, y), f_from_pairing(p, sig)};
}

K0Solution solve_line_k0_fixed(const LineSystem& sys, const Signature& sig) {
    if (sys.k != 0 || sys.l != 2 || sys.rhs.size() != 3)
        throw validation_error("solve_line_k0_fixed: malformed line system");
    int w = sys.rhs[0].max_weight();
    PuSeries lam = PuSeries::levi(sig, w);
    GaussianRational a0 = sys.rhs[0].constant_term();
    if (a0.im != 0) throw internal_error("solve_line_k0_fixed: non-real data");
    Rational y = -a0.re;
    GaussianRational half{Rational(1, 2)};
    PuSeries pi = half * (-qpart(sys.rhs[2], 1, sig) + GaussianRational(y) * lam);
    PuSeries pr = half * sys.rhs[1];
    PuSeries p = pr + GaussianRational::i() * pi;
    return {GaussianRational(Rational(0), y), f_from_pairing(p, sig)};
}

NormalizationResult eliminate_harmonics(const HypersurfaceJet& m) {
    int n = m.n(), w = m.max_weight();
    HypersurfaceJet cur = m;
    MapJet total = MapJet::identity(n, w);
    for (int order = 2; order <= w; ++order) {
        HoloSeries ginc(n, w);
        for (int k = 0; k <= order; ++k) {
            int l = order - k;
            if (k + 2 * l > w) continue;
            PuSeries comp = cur.phi().bicomponent_poly(k, 0, l);
            if (comp.is_zero()) continue;
            if (k == 0) {
                GaussianRational c = comp.constant_term();
                if (c.im != 0) throw internal_error("eliminate_harmonics: phi_00l not real");
                ginc.add_term(HoloMonomial{std::vector<int>(n, 0), l},
                              GaussianRational(Rational(0), -c.re));
            } else {
                PuSeries gkl = minus_2i * comp;
                for (auto& [mono, c] : gkl.terms()) ginc.add_term(HoloMonomial{mono.alpha, l}, c);
            }
        }
        if (ginc.is_zero()) continue;
        std::vector<HoloSeries> f;
        for (int j = 0; j < n; ++j) f.push_back(HoloSeries::var_z(n, w, j));
        MapJet h = MapJet::validate(std::move(f), HoloSeries::var_w(n, w) + ginc);
        cur = apply_map(cur, h);
        total = compose(h, total);
    }
    return {std::move(cur), std::move(total), {}, std::vector<GaussianRational>(n), GaussianRational()};
}

NormalizationResult normalize(const HypersurfaceJet& m, const NormalFormSpec& spec) {
    if (!m.levi_diagonal()) throw validation_error("normalize: Levi form must be the diagonal form");
    if (spec.max_weight() < m.max_weight()) throw validation_error("normalize: spec table too small");
    int n = m.n(), w = m.max_weight();
    HypersurfaceJet cur = m;
    MapJet total = MapJet::identity(n, w);
    std::vector<int> zeros(n, 0);
    for (int omega = 2; omega <= w; ++omega) {
        std::vector<HoloSeries> finc(n, HoloSeries(n, w));
        HoloSeries ginc(n, w);
        bool any = false;
        auto add_g = [&](const PuSeries& g, int wpow) {
            HoloSeries h = holo_from_zpoly(g, wpow, w);
            if (h.is_zero()) return;
            any = true;
            ginc += h;
        };
        auto add_f = [&](const std::vector<PuSeries>& f, int wpow) {
            for (int j = 0; j < n; ++j) {
                HoloSeries h = holo_from_zpoly(f[j], wpow, w);
                if (h.is_zero()) continue;
                any = true;
                finc[j] += h;
            }
        };
        for (int k = omega % 2; k <= omega; k += 2) {
            int l = (omega - k) / 2;
            if (k == 0) {
                if (l <= 1) continue;
                LineSystem sys = build_line_system(cur, 0, l);
                K0Solution sol =
                    l == 2 ? solve_line_k0_fixed(sys, m.sig()) : solve_line_k0(sys, spec.choice(0, l), m.sig());
                if (!sol.g.is_zero()) {
                    any = true;
                    ginc.add_term(HoloMonomial{zeros, l}, sol.g);
                }
                add_f(sol.f1, l - 1);
            } else if (k == 1) {
                if (l == 0) continue;
                LineSystem sys = build_line_system(cur, 1, l);
                K1Solution sol =
                    l == 1 ? solve_line_k1_fixed(sys, m.sig()) : solve_line_k1(sys, spec.choice(1, l), m.sig());
                add_g(sol.g, l);
                add_f(sol.f2, l - 1);
                for (int j = 0; j < n; ++j) {
                    if (sol.f0[j].is_zero()) continue;
                    any = true;
                    finc[j].add_term(HoloMonomial{zeros, l}, sol.f0[j]);
                }
            } else {
                LineSystem sys = build_line_system(cur, k, l);
                KGe2Solution sol =
                    solve_line_k_ge2(sys, l == 0 ? LineChoice{} : spec.choice(k, l), m.sig());
                add_g(sol.g, l);
                if (l >= 1) add_f(sol.f, l - 1);
            }
        }
        if (!any) continue;
        for (int j = 0; j < n; ++j) finc[j] += HoloSeries::var_z(n, w, j);
        MapJet h = MapJet::validate(std::move(finc), HoloSeries::var_w(n, w) + ginc);
        cur = apply_map(cur, h);
        total = compose(h, total);
    }
    if (!check(cur, spec).empty()) throw internal_error("normalize: conditions violated after full pass");
    if (!is_fg_normalized(total)) throw internal_error("normalize: map lost its normalization");
    return {std::move(cur), std::move(total), {}, std::vector<GaussianRational>(n), GaussianRational()};
}

namespace {

// one real degree of freedom of the weight-omega map increment
struct CoeffSlot {
    bool is_f;  // f component (index j) vs g
    int j;
    HoloMonomial mono;
    bool imag;
};

std::vector<CoeffSlot> weight_slots(int n, int omega) {
    std::vector<CoeffSlot> slots;
    // g_{ab} with a+2b = omega; g_01 and Re g_02 are pinned
    for (int a = omega % 2; a <= omega; a += 2) {
        int b = (omega - a) / 2;
        if (a == 0 && b == 1) continue;
        for (auto& alpha : enumerate_multiindices(n, a)) {
            HoloMonomial mono{alpha, b};
            if (!(a == 0 && b == 2)) slots.push_back({false, 0, mono, false});
            slots.push_back({false, 0, mono, true});
        }
    }
    // f_{ab} with a+2b = omega-1; f_10 and f_01 are pinned
    for (int a = (omega - 1) % 2; a <= omega - 1; a += 2) {
        int b = (omega - 1 - a) / 2;
        if ((a == 1 && b == 0) || (a == 0 && b == 1)) continue;
        for (auto& alpha : enumerate_multiindices(n, a))
            for (int j = 0; j < n; ++j)
                for (bool imag : {false, true}) slots.push_back({true, j, HoloMonomial{alpha, b}, imag});
    }
    return slots;
}

MapJet slot_map(int n, int w, const std::vector<CoeffSlot>& slots, const Vector& values) {
    std::vector<HoloSeries> f;
    for (int j = 0; j < n; ++j) f.push_back(HoloSeries::var_z(n, w, j));
    HoloSeries g = HoloSeries::var_w(n, w);
    for (size_t i = 0; i < slots.size(); ++i) {
        if (values[i].is_zero()) continue;
        GaussianRational c = slots[i].imag ? values[i] * GaussianRational::i() : values[i];
        if (slots[i].is_f)
            f[slots[i].j].add_term(slots[i].mono, c);
        else
            g.add_term(slots[i].mono, c);
    }
    return MapJet::validate(std::move(f), std::move(g));
}

}  // namespace

NormalizationResult normalize_oracle(const HypersurfaceJet& m, const NormalFormSpec& spec) {
    if (!m.levi_diagonal()) throw validation_error("normalize_oracle: Levi form must be diagonal");
    if (spec.max_weight() < m.max_weight()) throw validation_error("normalize_oracle: spec table too small");
    int n = m.n(), w = m.max_weight();
    HypersurfaceJet cur = m;
    MapJet total = MapJet::identity(n, w);
    for (int omega = 2; omega <= w; ++omega) {
        auto slots = weight_slots(n, omega);
        // rows: one per monomial of each weight-omega condition residual
        std::vector<std::pair<Condition, Monomial>> rows;
        for (auto& c : conditions_up_to(spec, omega)) {
            if (c.k + c.m + 2 * c.l != omega) continue;
            for (auto& alpha : enumerate_multiindices(n, c.k - c.t))
                for (auto& beta : enumerate_multiindices(n, c.m - c.t))
                    rows.push_back({c, Monomial{alpha, beta, c.l}});
        }
        HypersurfaceJet probe_base = HypersurfaceJet::validate(cur.phi().truncated(omega), m.sig());
        auto residuals = [&](const MapJet& h) {
            HypersurfaceJet img = apply_map(probe_base, h);
            Vector out;
            out.reserve(2 * rows.size());
            for (auto& [c, mono] : rows) {
                GaussianRational v = trace_pow(img.phi().bicomponent(c.k, c.m, c.l), m.sig(), c.t).coeff(mono);
                out.push_back(GaussianRational(v.re));
                out.push_back(GaussianRational(v.im));
            }
            return out;
        };
        Vector base = residuals(MapJet::identity(n, omega));
        Matrix a(base.size(), Vector(slots.size()));
        for (size_t i = 0; i < slots.size(); ++i) {
            Vector unit(slots.size());
            unit[i] = GaussianRational(1);
            Vector r = residuals(slot_map(n, omega, slots, unit));
            for (size_t q = 0; q < r.size(); ++q) a[q][i] = r[q] - base[q];
        }
        Vector b;
        for (auto& v : base) b.push_back(-v);
        auto sol = solve_linear(std::move(a), std::move(b));
        if (sol.status != SolveStatus::unique)
            throw internal_error("normalize_oracle: weight system not uniquely solvable");
        bool any = false;
        for (auto& v : sol.x)
            if (!v.is_zero()) any = true;
        if (!any) continue;
        MapJet h = slot_map(n, w, slots, sol.x);
        cur = apply_map(cur, h);
        total = compose(h, total);
    }
    if (!check(cur, spec).empty()) throw internal_error("normalize_oracle: conditions violated after full pass");
    if (!is_fg_normalized(total)) throw internal_error("normalize_oracle: map lost its normalization");
    return {std::move(cur), std::move(total), {}, std::vector<GaussianRational>(n), GaussianRational()};
}

}  // namespace crnf
