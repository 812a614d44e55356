#include "crnf/hypersurface.hpp"

#include "crnf/linsolve.hpp"

namespace crnf {

namespace {

std::vector<int> unit_index(int n, int j) {
    std::vector<int> e(n, 0);
    e[j] = 1;
    return e;
}

}  // namespace

HypersurfaceJet HypersurfaceJet::validate(const PuSeries& raw, const Signature& sig, LeviPolicy policy) {
    int n = raw.n();
    if (sig.n() != n) throw validation_error("HypersurfaceJet: signature dimension mismatch");
    if (raw.max_weight() < 2) throw validation_error("HypersurfaceJet: max_weight must be >= 2");
    if (!raw.is_real()) throw validation_error("HypersurfaceJet: phi must be a real series");
    for (auto& [m, c] : raw.terms()) {
        (void)c;
        if (m.adeg() + m.bdeg() + m.l <= 1)
            throw validation_error("HypersurfaceJet: phi must have no constant or linear terms");
    }
    PuSeries levi11 = raw.bicomponent(1, 1, 0);
    bool diagonal = levi11 == PuSeries::levi(sig, raw.max_weight());
    if (policy == LeviPolicy::require_diagonal && !diagonal)
        throw validation_error("HypersurfaceJet: (1,1) part must equal the signature's diagonal form");
    return HypersurfaceJet(raw, sig, diagonal);
}

HypersurfaceJet HypersurfaceJet::quadric(const Signature& sig, int max_weight) {
    return validate(PuSeries::levi(sig, max_weight), sig);
}

MapJet MapJet::validate(std::vector<HoloSeries> f, HoloSeries g) {
    int n = g.n();
    int w = g.max_weight();
    if (static_cast<int>(f.size()) != n) throw validation_error("MapJet: need exactly n components of f");
    for (auto& fj : f)
        if (fj.n() != n || fj.max_weight() != w)
            throw validation_error("MapJet: inconsistent dimensions among components");
    if (w < 2) throw validation_error("MapJet: max_weight must be >= 2");
    if (!g.constant_term().is_zero()) throw validation_error("MapJet: g must have no constant term");
    for (auto& fj : f)
        if (!fj.constant_term().is_zero()) throw validation_error("MapJet: f must have no constant term");
    for (int j = 0; j < n; ++j)
        if (!g.coeff({unit_index(n, j), 0}).is_zero())
            throw validation_error("MapJet: g must have no linear z terms");
    GaussianRational rho = g.coeff({std::vector<int>(n, 0), 1});
    if (rho.im != 0) throw validation_error("MapJet: w-coefficient of g must be real");
    if (rho.is_zero()) throw validation_error("MapJet: w-coefficient of g must be nonzero");
    MapJet h(std::move(f), std::move(g));
    invert_matrix(h.f10());  // throws validation_error when the linear part is singular
    return h;
}

MapJet MapJet::identity(int n, int max_weight) {
    std::vector<HoloSeries> f;
    for (int j = 0; j < n; ++j) f.push_back(HoloSeries::var_z(n, max_weight, j));
    return validate(std::move(f), HoloSeries::var_w(n, max_weight));
}

std::vector<std::vector<GaussianRational>> MapJet::f10() const {
    int nn = n();
    std::vector<std::vector<GaussianRational>> c(nn, std::vector<GaussianRational>(nn));
    for (int j = 0; j < nn; ++j)
        for (int i = 0; i < nn; ++i) c[j][i] = f_[j].coeff({unit_index(nn, i), 0});
    return c;
}

std::vector<GaussianRational> MapJet::f01() const {
    std::vector<GaussianRational> a(n());
    for (int j = 0; j < n(); ++j) a[j] = f_[j].coeff({std::vector<int>(n(), 0), 1});
    return a;
}

GaussianRational MapJet::g01() const { return g_.coeff({std::vector<int>(n(), 0), 1}); }

GaussianRational MapJet::g02() const { return g_.coeff({std::vector<int>(n(), 0), 2}); }

bool MapJet::linear_part_is_identity() const {
    if (g01() != GaussianRational(1)) return false;
    auto c = f10();
    for (int j = 0; j < n(); ++j)
        for (int i = 0; i < n(); ++i)
            if (c[j][i] != GaussianRational(i == j ? 1 : 0)) return false;
    return true;
}

bool is_fg_normalized(const MapJet& h) {
    if (!h.linear_part_is_identity()) return false;
    for (auto& a : h.f01())
        if (!a.is_zero()) return false;
    return h.g02().re == 0;
}

bool is_levi_isometry_linear_part(const MapJet& h, const Signature& sig) {
    if (sig.n() != h.n()) throw validation_error("is_levi_isometry_linear_part: dimension mismatch");
    GaussianRational rho = h.g01();
    if (rho.im != 0) return false;
    auto c = h.f10();
    int n = h.n();
    // <Cz, Cz>_{jk coefficient} = sum_t eps_t c[t][j] conj(c[t][k])
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            GaussianRational s;
            for (int t = 0; t < n; ++t)
                s += GaussianRational(Rational(sig.eps[t])) * c[t][j] * c[t][k].conj();
            GaussianRational want = j == k ? GaussianRational(Rational(sig.eps[j]) * rho.re) : GaussianRational();
            if (s != want) return false;
        }
    }
    return true;
}

MapJet compose(const MapJet& h2, const MapJet& h1) {
    if (h2.n() != h1.n() || h2.max_weight() != h1.max_weight())
        throw validation_error("compose: incompatible maps");
    std::vector<HoloSeries> f;
    for (int j = 0; j < h2.n(); ++j) f.push_back(substitute_holo(h2.f(j), h1.f(), h1.g()));
    return MapJet::validate(std::move(f), substitute_holo(h2.g(), h1.f(), h1.g()));
}

MapJet invert(const MapJet& h) {
    int n = h.n(), w = h.max_weight();
    auto c = h.f10();
    auto cinv = invert_matrix(c);
    auto a = h.f01();
    GaussianRational rho = h.g01();

    // nonlinear parts: f = Cz + aw + Nf, g = rho w + Ng
    std::vector<HoloSeries> nf;
    for (int j = 0; j < n; ++j) {
        HoloSeries s = h.f(j);
        for (int i = 0; i < n; ++i) s -= c[j][i] * HoloSeries::var_z(n, w, i);
        s -= a[j] * HoloSeries::var_w(n, w);
        nf.push_back(std::move(s));
    }
    HoloSeries ng = h.g() - rho * HoloSeries::var_w(n, w);

    // fixed point k = L^{-1} (id - N(k)); each pass gains one weight
    auto apply_linv = [&](const std::vector<HoloSeries>& tf, const HoloSeries& tg) {
        GaussianRational rinv = GaussianRational(1) / rho;
        HoloSeries kg = rinv * tg;
        std::vector<HoloSeries> kf;
        for (int j = 0; j < n; ++j) {
            HoloSeries s(n, w);
            for (int i = 0; i < n; ++i) s += cinv[j][i] * tf[i];
            GaussianRational ca;
            for (int i = 0; i < n; ++i) ca += cinv[j][i] * a[i];
            s -= ca * kg;
            kf.push_back(std::move(s));
        }
        return std::pair<std::vector<HoloSeries>, HoloSeries>(std::move(kf), std::move(kg));
    };

    std::vector<HoloSeries> idf;
    for (int j = 0; j < n; ++j) idf.push_back(HoloSeries::var_z(n, w, j));
    HoloSeries idg = HoloSeries::var_w(n, w);

    auto [kf, kg] = apply_linv(idf, idg);
    for (int pass = 0; pass < w; ++pass) {
        std::vector<HoloSeries> tf;
        for (int j = 0; j < n; ++j) tf.push_back(idf[j] - substitute_holo(nf[j], kf, kg));
        HoloSeries tg = idg - substitute_holo(ng, kf, kg);
        auto [nkf, nkg] = apply_linv(tf, tg);
        if (nkf == kf && nkg == kg) break;
        kf = std::move(nkf);
        kg = std::move(nkg);
    }
    return MapJet::validate(std::move(kf), std::move(kg));
}

HypersurfaceJet apply_map(const HypersurfaceJet& m, const MapJet& h) {
    if (h.n() != m.n() || h.max_weight() != m.max_weight())
        throw validation_error("apply_map: incompatible dimensions");
    if (!is_levi_isometry_linear_part(h, m.sig()))
        throw validation_error("apply_map: linear part must be a Levi-form isometry");
    int n = m.n(), w = m.max_weight();

    PuSeries theta = PuSeries::var_u(n, w) + GaussianRational::i() * m.phi();
    std::vector<PuSeries> zvars;
    for (int j = 0; j < n; ++j) zvars.push_back(PuSeries::var_z(n, w, j));

    std::vector<PuSeries> zp;  // f_j(z, theta)
    for (int j = 0; j < n; ++j) zp.push_back(substitute(h.f(j), zvars, theta));
    PuSeries gz = substitute(h.g(), zvars, theta);
    PuSeries up = gz.real_part();
    PuSeries v = gz.imag_part();

    bool identity_linear = h.linear_part_is_identity();
    std::vector<PuSeries> sz = zp;
    PuSeries su = up;
    auto cinv = identity_linear ? Matrix{} : invert_matrix(h.f10());
    GaussianRational rho = h.g01();
    if (!identity_linear) {
        // strip the (C, rho) linear part so the parametrization starts at id
        for (int j = 0; j < n; ++j) {
            PuSeries s(n, w);
            for (int i = 0; i < n; ++i) s += cinv[j][i] * zp[i];
            sz[j] = std::move(s);
        }
        su = (GaussianRational(1) / rho) * up;
    }

    auto [zeta, mu] = invert_parametrization(sz, su);

    std::vector<PuSeries> zimg = zeta;
    PuSeries uimg = mu;
    if (!identity_linear) {
        // compose with L^{-1}: arguments C^{-1} z', u'/rho
        std::vector<PuSeries> lz, lzb;
        for (int j = 0; j < n; ++j) {
            PuSeries s(n, w);
            for (int i = 0; i < n; ++i) s += cinv[j][i] * PuSeries::var_z(n, w, i);
            lz.push_back(std::move(s));
        }
        for (auto& s : lz) lzb.push_back(s.conjugate());
        PuSeries lu = (GaussianRational(1) / rho) * PuSeries::var_u(n, w);
        for (int j = 0; j < n; ++j) zimg[j] = substitute_pu(zeta[j], lz, lzb, lu);
        uimg = substitute_pu(mu, lz, lzb, lu);
    }

    std::vector<PuSeries> zimgb;
    for (auto& s : zimg) zimgb.push_back(s.conjugate());
    PuSeries phi_new = substitute_pu(v, zimg, zimgb, uimg);
    return HypersurfaceJet::validate(phi_new, m.sig(),
                                     m.levi_diagonal() ? LeviPolicy::require_diagonal : LeviPolicy::any);
}

PuSeries check_transformation_identity(const HypersurfaceJet& m, const MapJet& h,
                                       const HypersurfaceJet& m_image) {
    if (h.n() != m.n() || h.max_weight() != m.max_weight() || m_image.n() != m.n() ||
        m_image.max_weight() != m.max_weight())
        throw validation_error("check_transformation_identity: incompatible dimensions");
    int n = m.n(), w = m.max_weight();
    PuSeries theta = PuSeries::var_u(n, w) + GaussianRational::i() * m.phi();
    std::vector<PuSeries> zvars;
    for (int j = 0; j < n; ++j) zvars.push_back(PuSeries::var_z(n, w, j));
    std::vector<PuSeries> zp, zpb;
    for (int j = 0; j < n; ++j) zp.push_back(substitute(h.f(j), zvars, theta));
    for (auto& s : zp) zpb.push_back(s.conjugate());
    PuSeries gz = substitute(h.g(), zvars, theta);
    return gz.imag_part() - substitute_pu(m_image.phi(), zp, zpb, gz.real_part());
}

LeviDiagnostic levi_congruence_diagnostic(const PuSeries& raw) {
    int n = raw.n();
    // hermitian matrix of the (1,1,0) part
    Matrix hmat(n, Vector(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            hmat[i][j] = raw.coeff({unit_index(n, i), unit_index(n, j), 0});

    // hermitian congruence diagonalization with exact row/column operations
    auto add_multiple = [&](int dst, int src, const GaussianRational& t) {
        for (int j = 0; j < n; ++j) hmat[dst][j] += t * hmat[src][j];
        for (int i = 0; i < n; ++i) hmat[i][dst] += t.conj() * hmat[i][src];
    };
    for (int c = 0; c < n; ++c) {
        if (hmat[c][c].is_zero()) {
            int swp = -1;
            for (int k = c + 1; k < n; ++k)
                if (!hmat[k][k].is_zero()) {
                    swp = k;
                    break;
                }
            if (swp >= 0) {
                std::swap(hmat[c], hmat[swp]);
                for (int i = 0; i < n; ++i) std::swap(hmat[i][c], hmat[i][swp]);
            } else {
                int off = -1;
                for (int k = c + 1; k < n; ++k)
                    if (!hmat[k][c].is_zero()) {
                        off = k;
                        break;
                    }
                if (off < 0) continue;  // zero row/column: degenerate direction
                // v_c <- v_c + t v_off produces diagonal entry 2 Re(t conj(h[off][c]))
                GaussianRational t =
                    hmat[off][c].re != 0 ? GaussianRational(1) : GaussianRational::i();
                add_multiple(c, off, t);
            }
        }
        if (hmat[c][c].is_zero()) continue;
        for (int k = c + 1; k < n; ++k) {
            if (hmat[k][c].is_zero()) continue;
            add_multiple(k, c, -(hmat[k][c] / hmat[c][c]));
        }
    }

    LeviDiagnostic d;
    d.nondegenerate = true;
    d.unit_rescalable = true;
    for (int c = 0; c < n; ++c) {
        if (hmat[c][c].im != 0) throw internal_error("levi_congruence_diagnostic: non-real diagonal");
        Rational v = hmat[c][c].re;
        d.diag.push_back(v);
        if (v == 0) {
            d.nondegenerate = false;
            d.unit_rescalable = false;
            continue;
        }
        Rational av = abs(v);
        if (!mpz_perfect_square_p(av.get_num().get_mpz_t()) ||
            !mpz_perfect_square_p(av.get_den().get_mpz_t()))
            d.unit_rescalable = false;
    }
    return d;
}

}  // namespace crnf
