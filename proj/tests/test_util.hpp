#ifndef CRNF_TEST_UTIL_HPP
#define CRNF_TEST_UTIL_HPP

#include <random>
#include <vector>

#include "crnf/hypersurface.hpp"
#include "crnf/trace.hpp"

namespace crnf::testutil {

inline int rand_int(std::mt19937& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Rational rand_rational(std::mt19937& rng) {
    Rational r(rand_int(rng, -4, 4), rand_int(rng, 1, 3));
    r.canonicalize();
    return r;
}

inline Rational rand_nonzero_rational(std::mt19937& rng) {
    for (;;) {
        Rational r = rand_rational(rng);
        if (r != 0) return r;
    }
}

inline GaussianRational rand_scalar(std::mt19937& rng) {
    return {rand_rational(rng), rand_rational(rng)};
}

inline std::vector<int> rand_multiindex(std::mt19937& rng, int n, int d) {
    std::vector<int> idx(n, 0);
    for (int i = 0; i < d; ++i) idx[rand_int(rng, 0, n - 1)]++;
    return idx;
}

/// Random bihomogeneous polynomial of bidegree (p,q), u-free.
inline PuSeries rand_bihom(std::mt19937& rng, int n, int p, int q, int max_weight, int terms = 4) {
    PuSeries out(n, max_weight);
    for (int i = 0; i < terms; ++i)
        out.add_term({rand_multiindex(rng, n, p), rand_multiindex(rng, n, q), 0}, rand_scalar(rng));
    return out;
}

/// Random real jet: quadric plus sparse conjugate-paired terms of weight >= 3.
inline HypersurfaceJet rand_jet(std::mt19937& rng, const Signature& sig, int max_weight, int terms = 6) {
    int n = sig.n();
    PuSeries phi = PuSeries::levi(sig, max_weight);
    for (int i = 0; i < terms; ++i) {
        int w = rand_int(rng, 3, max_weight);
        int l = rand_int(rng, 0, (w - 1) / 2);  // keep k+m >= 1
        int d = w - 2 * l;
        int k = rand_int(rng, 0, d);
        int m = d - k;
        Monomial mono{rand_multiindex(rng, n, k), rand_multiindex(rng, n, m), l};
        GaussianRational c = rand_scalar(rng);
        if (c.is_zero()) continue;
        Monomial conj_mono{mono.beta, mono.alpha, mono.l};
        if (conj_mono == mono) c.im = 0;
        if (c.is_zero()) continue;
        phi.add_term(mono, c);
        if (!(conj_mono == mono)) phi.add_term(conj_mono, c.conj());
    }
    // a collision may have cancelled the Levi term; repair by revalidation
    PuSeries repaired = phi - phi.bicomponent(1, 1, 0) + PuSeries::levi(sig, max_weight);
    return HypersurfaceJet::validate(repaired, sig);
}

/// Random Levi-degenerate jet: zero (1,1,0) part, conjugate-paired terms.
inline HypersurfaceJet rand_degenerate_jet(std::mt19937& rng, int n, int max_weight, int terms = 6) {
    PuSeries phi(n, max_weight);
    for (int i = 0; i < terms; ++i) {
        int w = rand_int(rng, 3, max_weight);
        int l = rand_int(rng, 0, (w - 1) / 2);
        int d = w - 2 * l;
        int k = rand_int(rng, 0, d);
        int m = d - k;
        Monomial mono{rand_multiindex(rng, n, k), rand_multiindex(rng, n, m), l};
        GaussianRational c = rand_scalar(rng);
        Monomial conj_mono{mono.beta, mono.alpha, mono.l};
        if (conj_mono == mono) c.im = 0;
        if (c.is_zero()) continue;
        phi.add_term(mono, c);
        if (!(conj_mono == mono)) phi.add_term(conj_mono, c.conj());
    }
    phi -= phi.bicomponent(1, 1, 0);
    return HypersurfaceJet::validate(phi, Signature::definite(n), LeviPolicy::any);
}

inline HoloMonomial rand_holo_monomial(std::mt19937& rng, int n, int w) {
    int l = rand_int(rng, 0, w / 2);
    return {rand_multiindex(rng, n, w - 2 * l), l};
}

/// Random fg-normalized map with small support: identity plus a few terms
/// avoiding the pinned coefficients (f_10, f_01, g_10, g_01, Re g_02).
inline MapJet rand_fg_map(std::mt19937& rng, int n, int max_weight, int terms = 4) {
    std::vector<HoloSeries> f;
    for (int j = 0; j < n; ++j) f.push_back(HoloSeries::var_z(n, max_weight, j));
    HoloSeries g = HoloSeries::var_w(n, max_weight);
    for (int i = 0; i < terms; ++i) {
        int j = rand_int(rng, 0, n - 1);
        HoloMonomial mono = rand_holo_monomial(rng, n, rand_int(rng, 2, max_weight));
        if (mono.adeg() + 2 * mono.l < 2) continue;
        if (mono.adeg() == 0 && mono.l == 1) continue;  // f_01 pinned
        f[j].add_term(mono, rand_scalar(rng));
    }
    for (int i = 0; i < terms; ++i) {
        HoloMonomial mono = rand_holo_monomial(rng, n, rand_int(rng, 2, max_weight));
        if (mono.adeg() + 2 * mono.l < 2) continue;
        GaussianRational c = rand_scalar(rng);
        if (mono.adeg() == 0 && mono.l == 1) continue;   // g_01 pinned
        if (mono.adeg() == 0 && mono.l == 2) c.re = 0;   // Re g_02 pinned
        g.add_term(mono, c);
    }
    // collisions may have zeroed a pinned slot's neighbours; validate handles it
    if (g.coeff({std::vector<int>(n, 0), 1}) != GaussianRational(1)) return MapJet::identity(n, max_weight);
    return MapJet::validate(std::move(f), std::move(g));
}

/// (z,w) -> (z+aw, w) / (1 - 2i<z,a> - i<a,a>w), rational a: fixes the quadric.
inline MapJet quadric_automorphism_a(const Signature& sig, int max_weight, const std::vector<Rational>& a) {
    int n = sig.n();
    GaussianRational two_i{Rational(0), Rational(2)};
    GaussianRational one_i = GaussianRational::i();
    HoloSeries denom_lin(n, max_weight);  // 2i<z,a> + i<a,a>w
    Rational aa(0);
    for (int j = 0; j < n; ++j) {
        denom_lin += (two_i * GaussianRational(sig.eps[j] * a[j])) * HoloSeries::var_z(n, max_weight, j);
        aa += sig.eps[j] * a[j] * a[j];
    }
    denom_lin += (one_i * GaussianRational(aa)) * HoloSeries::var_w(n, max_weight);
    // geometric series for 1/(1 - denom_lin)
    HoloSeries inv = HoloSeries::constant(n, max_weight, GaussianRational(1));
    HoloSeries pw = HoloSeries::constant(n, max_weight, GaussianRational(1));
    for (int t = 1; t <= max_weight; ++t) {
        pw = pw * denom_lin;
        inv += pw;
    }
    std::vector<HoloSeries> f;
    for (int j = 0; j < n; ++j)
        f.push_back((HoloSeries::var_z(n, max_weight, j) +
                     GaussianRational(a[j]) * HoloSeries::var_w(n, max_weight)) *
                    inv);
    HoloSeries g = HoloSeries::var_w(n, max_weight) * inv;
    return MapJet::validate(std::move(f), std::move(g));
}

/// (z,w) -> (z,w) / (1 - rw), rational r: fixes the quadric.
inline MapJet quadric_automorphism_r(int n, int max_weight, const Rational& r) {
    HoloSeries w = HoloSeries::var_w(n, max_weight);
    HoloSeries inv = HoloSeries::constant(n, max_weight, GaussianRational(1));
    HoloSeries pw = HoloSeries::constant(n, max_weight, GaussianRational(1));
    for (int t = 1; 2 * t <= max_weight; ++t) {
        pw = GaussianRational(r) * (pw * w);
        inv += pw;
    }
    std::vector<HoloSeries> f;
    for (int j = 0; j < n; ++j) f.push_back(HoloSeries::var_z(n, max_weight, j) * inv);
    HoloSeries g = w * inv;
    return MapJet::validate(std::move(f), std::move(g));
}

}  // namespace crnf::testutil

#endif
