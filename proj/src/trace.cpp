#include "crnf/trace.hpp"

#include <algorithm>

#include "crnf/linsolve.hpp"

namespace crnf {

PuSeries trace(const PuSeries& p, const Signature& sig) {
    if (sig.n() != p.n()) throw validation_error("trace: signature dimension mismatch");
    PuSeries r(p.n(), p.max_weight());
    for (auto& [m, c] : p.terms()) {
        for (int j = 0; j < p.n(); ++j) {
            if (m.alpha[j] == 0 || m.beta[j] == 0) continue;
            Monomial d = m;
            d.alpha[j] -= 1;
            d.beta[j] -= 1;
            r.add_term(d, GaussianRational(Rational(long(sig.eps[j]) * m.alpha[j] * m.beta[j])) * c);
        }
    }
    return r;
}

PuSeries trace_pow(const PuSeries& p, const Signature& sig, int t) {
    if (t < 0) throw validation_error("trace_pow: negative power");
    PuSeries r = p;
    for (int i = 0; i < t; ++i) r = trace(r, sig);
    return r;
}

std::pair<PuSeries, PuSeries> euler_weights(const PuSeries& p) {
    PuSeries a(p.n(), p.max_weight()), b(p.n(), p.max_weight());
    for (int j = 0; j < p.n(); ++j) {
        a += p.dz(j) * PuSeries::var_z(p.n(), p.max_weight(), j);
        b += p.dzbar(j) * PuSeries::var_zbar(p.n(), p.max_weight(), j);
    }
    return {a, b};
}

std::vector<std::vector<int>> enumerate_multiindices(int n, int d) {
    std::vector<std::vector<int>> out;
    if (d < 0) return out;
    std::vector<int> cur(n, 0);
    // lexicographic enumeration by recursion on position
    auto rec = [&](auto&& self, int pos, int rem) -> void {
        if (pos == n - 1) {
            cur[pos] = rem;
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= rem; ++v) {
            cur[pos] = v;
            self(self, pos + 1, rem - v);
        }
    };
    if (n == 0) return out;
    rec(rec, 0, d);
    return out;
}

namespace {

// decomposition of one bihomogeneous (z,zbar)-polynomial of bidegree (pd,qd)
std::pair<PuSeries, PuSeries> decompose_biform_oracle(const PuSeries& p, int pd, int qd, int s,
                                                      const Signature& sig) {
    int n = p.n(), w = p.max_weight();
    PuSeries lam = PuSeries::levi(sig, w);
    if (pd < s || qd < s) {
        if (!trace_pow(p, sig, s).is_zero())
            throw internal_error("trace_decompose_oracle: tr^s did not annihilate low bidegree");
        return {PuSeries(n, w), p};
    }
    auto alphas = enumerate_multiindices(n, pd - s);
    auto betas = enumerate_multiindices(n, qd - s);
    std::vector<Monomial> unknowns;
    for (auto& a : alphas)
        for (auto& b : betas) unknowns.push_back(Monomial{a, b, 0});

    PuSeries lam_s = lam.pow(s);
    PuSeries rhs = trace_pow(p, sig, s);

    // rows indexed by the same bidegree-(pd-s,qd-s) monomials
    std::map<Monomial, size_t> row_of;
    for (size_t i = 0; i < unknowns.size(); ++i) row_of[unknowns[i]] = i;

    Matrix a(unknowns.size(), Vector(unknowns.size()));
    Vector b(unknowns.size());
    for (size_t j = 0; j < unknowns.size(); ++j) {
        PuSeries basis(n, w);
        basis.add_term(unknowns[j], GaussianRational(1));
        PuSeries img = trace_pow(basis * lam_s, sig, s);
        for (auto& [m, c] : img.terms()) {
            auto it = row_of.find(m);
            if (it == row_of.end()) throw internal_error("trace_decompose_oracle: unexpected image monomial");
            a[it->second][j] = c;
        }
    }
    for (auto& [m, c] : rhs.terms()) {
        auto it = row_of.find(m);
        if (it == row_of.end()) throw internal_error("trace_decompose_oracle: unexpected rhs monomial");
        b[it->second] = c;
    }
    auto sol = solve_linear(std::move(a), std::move(b));
    if (sol.status != SolveStatus::unique)
        throw internal_error("trace_decompose_oracle: singular system, decomposition not unique");
    PuSeries q(n, w);
    for (size_t j = 0; j < unknowns.size(); ++j) q.add_term(unknowns[j], sol.x[j]);
    return {q, p - q * lam_s};
}

// backward recursion through the iterated traces, s = 1
std::pair<PuSeries, PuSeries> decompose_biform_s1(const PuSeries& p, int pd, int qd, const Signature& sig) {
    int n = p.n(), w = p.max_weight();
    PuSeries lam = PuSeries::levi(sig, w);
    int k0 = std::min(pd, qd);
    if (k0 == 0) return {PuSeries(n, w), p};

    // tr^k p, k = 1..k0, and constants c_1 = n+p+q-2, c_{k+1} = c_k + n+p+q-2k-2
    std::vector<PuSeries> trp;
    trp.push_back(p);
    for (int k = 1; k <= k0; ++k) trp.push_back(trace(trp.back(), sig));
    std::vector<Rational> c(k0 + 1);
    c[1] = Rational(n + pd + qd - 2);
    for (int k = 1; k < k0; ++k) c[k + 1] = c[k] + Rational(n + pd + qd - 2 * k - 2);

    for (int k = 1; k <= k0; ++k)
        if (c[k] == 0) return decompose_biform_oracle(p, pd, qd, 1, sig);  // outside the positivity regime

    PuSeries qk(n, w);  // Q_{k0} = 0 for bidegree reasons
    for (int k = k0; k >= 1; --k) {
        GaussianRational inv = GaussianRational(1) / GaussianRational(c[k]);
        qk = inv * (trp[k] - qk * lam);
    }
    return {qk, p - qk * lam};
}

std::pair<PuSeries, PuSeries> decompose_biform(const PuSeries& p, int pd, int qd, int s, const Signature& sig) {
    int n = p.n(), w = p.max_weight();
    if (pd < s || qd < s) {
        // Q would need bidegree (pd-s, qd-s); tr^s annihilates p automatically
        return {PuSeries(n, w), p};
    }
    if (s == 1) return decompose_biform_s1(p, pd, qd, sig);
    auto [q1, r1] = decompose_biform(p, pd, qd, s - 1, sig);
    auto [qp, rp] = decompose_biform_s1(q1, pd - s + 1, qd - s + 1, sig);
    PuSeries lam = PuSeries::levi(sig, w);
    return {qp, rp * lam.pow(s - 1) + r1};
}

template <class BiformDecomposer>
TraceDecomposition decompose_componentwise(const PuSeries& p, int s, const Signature& sig,
                                           BiformDecomposer&& dec) {
    if (s < 0) throw validation_error("trace_decompose: s must be >= 0");
    if (sig.n() != p.n()) throw validation_error("trace_decompose: signature dimension mismatch");
    int n = p.n(), w = p.max_weight();
    if (s == 0) return {p, PuSeries(n, w), 0};
    PuSeries q(n, w), r(n, w);
    for (auto& [k, m, l] : p.bidegrees()) {
        PuSeries comp = p.bicomponent_poly(k, m, l);
        auto [qc, rc] = dec(comp, k, m, s, sig);
        q += qc.times_u_pow(l);
        r += rc.times_u_pow(l);
    }
    return {q, r, s};
}

}  // namespace

TraceDecomposition trace_decompose(const PuSeries& p, int s, const Signature& sig) {
    return decompose_componentwise(p, s, sig, [](const PuSeries& c, int k, int m, int sv, const Signature& sg) {
        return decompose_biform(c, k, m, sv, sg);
    });
}

TraceDecomposition trace_decompose_oracle(const PuSeries& p, int s, const Signature& sig) {
    return decompose_componentwise(p, s, sig, [](const PuSeries& c, int k, int m, int sv, const Signature& sg) {
        return decompose_biform_oracle(c, k, m, sv, sg);
    });
}

}  // namespace crnf
