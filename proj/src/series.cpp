#include "crnf/series.hpp"

#include <numeric>

namespace crnf {

int Monomial::adeg() const { return std::accumulate(alpha.begin(), alpha.end(), 0); }
int Monomial::bdeg() const { return std::accumulate(beta.begin(), beta.end(), 0); }
int HoloMonomial::adeg() const { return std::accumulate(alpha.begin(), alpha.end(), 0); }

namespace {

void check_compatible(int n1, int w1, int n2, int w2) {
    if (n1 != n2) throw validation_error("series: dimension mismatch");
    if (w1 != w2) throw validation_error("series: truncation weight mismatch");
}

}  // namespace

// ---------------------------------------------------------------- PuSeries

PuSeries::PuSeries(int n, int max_weight) : n_(n), w_(max_weight) {
    if (n < 1) throw validation_error("PuSeries: dimension must be >= 1");
    if (max_weight < 0) throw validation_error("PuSeries: max_weight must be >= 0");
}

PuSeries PuSeries::constant(int n, int max_weight, const GaussianRational& c) {
    PuSeries s(n, max_weight);
    s.add_term(Monomial{std::vector<int>(n, 0), std::vector<int>(n, 0), 0}, c);
    return s;
}

PuSeries PuSeries::var_z(int n, int max_weight, int j) {
    PuSeries s(n, max_weight);
    Monomial m{std::vector<int>(n, 0), std::vector<int>(n, 0), 0};
    m.alpha[j] = 1;
    s.add_term(m, GaussianRational(1));
    return s;
}

PuSeries PuSeries::var_zbar(int n, int max_weight, int j) {
    PuSeries s(n, max_weight);
    Monomial m{std::vector<int>(n, 0), std::vector<int>(n, 0), 0};
    m.beta[j] = 1;
    s.add_term(m, GaussianRational(1));
    return s;
}

PuSeries PuSeries::var_u(int n, int max_weight) {
    PuSeries s(n, max_weight);
    s.add_term(Monomial{std::vector<int>(n, 0), std::vector<int>(n, 0), 1}, GaussianRational(1));
    return s;
}

PuSeries PuSeries::levi(const Signature& sig, int max_weight) {
    int n = sig.n();
    PuSeries s(n, max_weight);
    for (int j = 0; j < n; ++j) {
        Monomial m{std::vector<int>(n, 0), std::vector<int>(n, 0), 0};
        m.alpha[j] = 1;
        m.beta[j] = 1;
        s.add_term(m, GaussianRational(sig.eps[j]));
    }
    return s;
}

void PuSeries::add_term(const Monomial& m, const GaussianRational& c) {
    if (c.is_zero()) return;
    if (static_cast<int>(m.alpha.size()) != n_ || static_cast<int>(m.beta.size()) != n_)
        throw validation_error("PuSeries: monomial dimension mismatch");
    if (m.weight() > w_) return;  // truncation
    auto it = c_.find(m);
    if (it == c_.end()) {
        c_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) c_.erase(it);
    }
}

GaussianRational PuSeries::coeff(const Monomial& m) const {
    auto it = c_.find(m);
    return it == c_.end() ? GaussianRational() : it->second;
}

GaussianRational PuSeries::constant_term() const {
    return coeff(Monomial{std::vector<int>(n_, 0), std::vector<int>(n_, 0), 0});
}

PuSeries PuSeries::operator-() const {
    PuSeries r(n_, w_);
    for (auto& [m, c] : c_) r.c_.emplace(m, -c);
    return r;
}

PuSeries& PuSeries::operator+=(const PuSeries& o) {
    check_compatible(n_, w_, o.n_, o.w_);
    for (auto& [m, c] : o.c_) add_term(m, c);
    return *this;
}

PuSeries& PuSeries::operator-=(const PuSeries& o) {
    check_compatible(n_, w_, o.n_, o.w_);
    for (auto& [m, c] : o.c_) add_term(m, -c);
    return *this;
}

PuSeries operator*(const PuSeries& a, const PuSeries& b) {
    check_compatible(a.n_, a.w_, b.n_, b.w_);
    PuSeries r(a.n_, a.w_);
    // scratch monomial avoids two vector allocations per term pair
    Monomial m{std::vector<int>(a.n_), std::vector<int>(a.n_), 0};
    GaussianRational prod;
    for (auto& [ma, ca] : a.c_) {
        int wa = ma.weight();
        for (auto& [mb, cb] : b.c_) {
            if (wa + mb.weight() > a.w_) break;  // graded order: nothing further fits
            for (int j = 0; j < a.n_; ++j) {
                m.alpha[j] = ma.alpha[j] + mb.alpha[j];
                m.beta[j] = ma.beta[j] + mb.beta[j];
            }
            m.l = ma.l + mb.l;
            prod = ca;
            prod *= cb;
            auto it = r.c_.find(m);
            if (it == r.c_.end()) {
                if (!prod.is_zero()) r.c_.emplace(m, prod);
            } else {
                it->second += prod;
                if (it->second.is_zero()) r.c_.erase(it);
            }
        }
    }
    return r;
}

PuSeries operator*(const GaussianRational& c, PuSeries a) {
    if (c.is_zero()) return PuSeries(a.n_, a.w_);
    for (auto& [m, v] : a.c_) v *= c;
    return a;
}

PuSeries PuSeries::pow(int e) const {
    if (e < 0) throw validation_error("PuSeries::pow: negative exponent");
    PuSeries r = constant(n_, w_, GaussianRational(1));
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

PuSeries PuSeries::conjugate() const {
    PuSeries r(n_, w_);
    for (auto& [m, c] : c_) r.c_.emplace(Monomial{m.beta, m.alpha, m.l}, c.conj());
    return r;
}

PuSeries PuSeries::real_part() const {
    GaussianRational half(Rational(1, 2));
    return half * (*this + conjugate());
}

PuSeries PuSeries::imag_part() const {
    GaussianRational c = GaussianRational(Rational(1, 2)) / GaussianRational::i();
    return c * (*this - conjugate());
}

PuSeries PuSeries::bicomponent(int k, int m, int l) const {
    PuSeries r(n_, w_);
    for (auto& [mo, c] : c_)
        if (mo.l == l && mo.adeg() == k && mo.bdeg() == m) r.c_.emplace(mo, c);
    return r;
}

PuSeries PuSeries::bicomponent_poly(int k, int m, int l) const {
    PuSeries r(n_, w_);
    for (auto& [mo, c] : c_)
        if (mo.l == l && mo.adeg() == k && mo.bdeg() == m)
            r.c_.emplace(Monomial{mo.alpha, mo.beta, 0}, c);
    return r;
}

PuSeries PuSeries::times_u_pow(int p) const {
    PuSeries r(n_, w_);
    for (auto& [mo, c] : c_) {
        Monomial m = mo;
        m.l += p;
        r.add_term(m, c);
    }
    return r;
}

std::vector<std::array<int, 3>> PuSeries::bidegrees() const {
    std::vector<std::array<int, 3>> out;
    for (auto& [mo, c] : c_) {
        std::array<int, 3> d{mo.adeg(), mo.bdeg(), mo.l};
        bool seen = false;
        for (auto& e : out)
            if (e == d) {
                seen = true;
                break;
            }
        if (!seen) out.push_back(d);
    }
    return out;
}

PuSeries PuSeries::dz(int j) const {
    PuSeries r(n_, w_);
    for (auto& [mo, c] : c_) {
        if (mo.alpha[j] == 0) continue;
        Monomial m = mo;
        m.alpha[j] -= 1;
        r.add_term(m, GaussianRational(mo.alpha[j]) * c);
    }
    return r;
}

PuSeries PuSeries::dzbar(int j) const {
    PuSeries r(n_, w_);
    for (auto& [mo, c] : c_) {
        if (mo.beta[j] == 0) continue;
        Monomial m = mo;
        m.beta[j] -= 1;
        r.add_term(m, GaussianRational(mo.beta[j]) * c);
    }
    return r;
}

PuSeries PuSeries::truncated(int max_weight) const {
    PuSeries r(n_, max_weight);
    for (auto& [m, c] : c_) r.add_term(m, c);
    return r;
}

int PuSeries::min_weight() const {
    if (c_.empty()) return w_ + 1;
    return c_.begin()->first.weight();
}

// -------------------------------------------------------------- HoloSeries

HoloSeries::HoloSeries(int n, int max_weight) : n_(n), w_(max_weight) {
    if (n < 1) throw validation_error("HoloSeries: dimension must be >= 1");
    if (max_weight < 0) throw validation_error("HoloSeries: max_weight must be >= 0");
}

HoloSeries HoloSeries::constant(int n, int max_weight, const GaussianRational& c) {
    HoloSeries s(n, max_weight);
    s.add_term(HoloMonomial{std::vector<int>(n, 0), 0}, c);
    return s;
}

HoloSeries HoloSeries::var_z(int n, int max_weight, int j) {
    HoloSeries s(n, max_weight);
    HoloMonomial m{std::vector<int>(n, 0), 0};
    m.alpha[j] = 1;
    s.add_term(m, GaussianRational(1));
    return s;
}

HoloSeries HoloSeries::var_w(int n, int max_weight) {
    HoloSeries s(n, max_weight);
    s.add_term(HoloMonomial{std::vector<int>(n, 0), 1}, GaussianRational(1));
    return s;
}

void HoloSeries::add_term(const HoloMonomial& m, const GaussianRational& c) {
    if (c.is_zero()) return;
    if (static_cast<int>(m.alpha.size()) != n_)
        throw validation_error("HoloSeries: monomial dimension mismatch");
    if (m.weight() > w_) return;
    auto it = c_.find(m);
    if (it == c_.end()) {
        c_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) c_.erase(it);
    }
}

GaussianRational HoloSeries::coeff(const HoloMonomial& m) const {
    auto it = c_.find(m);
    return it == c_.end() ? GaussianRational() : it->second;
}

GaussianRational HoloSeries::constant_term() const {
    return coeff(HoloMonomial{std::vector<int>(n_, 0), 0});
}

HoloSeries HoloSeries::operator-() const {
    HoloSeries r(n_, w_);
    for (auto& [m, c] : c_) r.c_.emplace(m, -c);
    return r;
}

HoloSeries& HoloSeries::operator+=(const HoloSeries& o) {
    check_compatible(n_, w_, o.n_, o.w_);
    for (auto& [m, c] : o.c_) add_term(m, c);
    return *this;
}

HoloSeries& HoloSeries::operator-=(const HoloSeries& o) {
    check_compatible(n_, w_, o.n_, o.w_);
    for (auto& [m, c] : o.c_) add_term(m, -c);
    return *this;
}

HoloSeries operator*(const HoloSeries& a, const HoloSeries& b) {
    check_compatible(a.n_, a.w_, b.n_, b.w_);
    HoloSeries r(a.n_, a.w_);
    HoloMonomial m{std::vector<int>(a.n_), 0};
    GaussianRational prod;
    for (auto& [ma, ca] : a.c_) {
        int wa = ma.weight();
        for (auto& [mb, cb] : b.c_) {
            if (wa + mb.weight() > a.w_) break;
            for (int j = 0; j < a.n_; ++j) m.alpha[j] = ma.alpha[j] + mb.alpha[j];
            m.l = ma.l + mb.l;
            prod = ca;
            prod *= cb;
            auto it = r.c_.find(m);
            if (it == r.c_.end()) {
                if (!prod.is_zero()) r.c_.emplace(m, prod);
            } else {
                it->second += prod;
                if (it->second.is_zero()) r.c_.erase(it);
            }
        }
    }
    return r;
}

HoloSeries operator*(const GaussianRational& c, HoloSeries a) {
    if (c.is_zero()) return HoloSeries(a.n_, a.w_);
    for (auto& [m, v] : a.c_) v *= c;
    return a;
}

HoloSeries HoloSeries::pow(int e) const {
    if (e < 0) throw validation_error("HoloSeries::pow: negative exponent");
    HoloSeries r = constant(n_, w_, GaussianRational(1));
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

HoloSeries HoloSeries::component(int k, int l) const {
    HoloSeries r(n_, w_);
    for (auto& [mo, c] : c_)
        if (mo.l == l && mo.adeg() == k) r.c_.emplace(mo, c);
    return r;
}

HoloSeries HoloSeries::truncated(int max_weight) const {
    HoloSeries r(n_, max_weight);
    for (auto& [m, c] : c_) r.add_term(m, c);
    return r;
}

// ------------------------------------------------------------ substitution

namespace {

// Cache of powers of one series, built on demand.
template <class S>
class PowerCache {
  public:
    explicit PowerCache(const S& base) : base_(base) {
        powers_.push_back(S::constant(base.n(), base.max_weight(), GaussianRational(1)));
    }
    const S& get(int e) {
        while (static_cast<int>(powers_.size()) <= e) powers_.push_back(powers_.back() * base_);
        return powers_[e];
    }

  private:
    S base_;
    std::vector<S> powers_;
};

template <class S>
void require_no_constant_term(const S& s) {
    if (!s.constant_term().is_zero())
        throw validation_error("substitute: argument has a nonzero constant term");
}

}  // namespace

PuSeries substitute(const HoloSeries& target, const std::vector<PuSeries>& z_args, const PuSeries& w_arg) {
    if (static_cast<int>(z_args.size()) != target.n())
        throw validation_error("substitute: expected one argument per z variable");
    int n_out = w_arg.n(), w = w_arg.max_weight();
    for (auto& a : z_args) check_compatible(a.n(), a.max_weight(), n_out, w);
    for (auto& a : z_args) require_no_constant_term(a);
    require_no_constant_term(w_arg);

    std::vector<PowerCache<PuSeries>> zp;
    zp.reserve(z_args.size());
    for (auto& a : z_args) zp.emplace_back(a);
    PowerCache<PuSeries> wp(w_arg);

    // group by alpha: sum_l c_{alpha,l} W^l, then multiply by Z^alpha
    std::map<std::vector<int>, PuSeries> groups;
    for (auto& [m, c] : target.terms()) {
        auto it = groups.find(m.alpha);
        if (it == groups.end()) it = groups.emplace(m.alpha, PuSeries(n_out, w)).first;
        it->second += c * wp.get(m.l);
    }
    PuSeries result(n_out, w);
    for (auto& [alpha, inner] : groups) {
        PuSeries term = inner;
        for (size_t j = 0; j < z_args.size(); ++j)
            if (alpha[j] > 0) term = term * zp[j].get(alpha[j]);
        result += term;
    }
    return result;
}

PuSeries substitute_pu(const PuSeries& target, const std::vector<PuSeries>& z_args,
                       const std::vector<PuSeries>& zbar_args, const PuSeries& u_arg) {
    if (static_cast<int>(z_args.size()) != target.n() || static_cast<int>(zbar_args.size()) != target.n())
        throw validation_error("substitute_pu: expected one argument per variable");
    int n_out = u_arg.n(), w = u_arg.max_weight();
    for (auto& a : z_args) check_compatible(a.n(), a.max_weight(), n_out, w);
    for (auto& a : zbar_args) check_compatible(a.n(), a.max_weight(), n_out, w);
    for (auto& a : z_args) require_no_constant_term(a);
    for (auto& a : zbar_args) require_no_constant_term(a);
    require_no_constant_term(u_arg);

    std::vector<PowerCache<PuSeries>> zp, zbp;
    for (auto& a : z_args) zp.emplace_back(a);
    for (auto& a : zbar_args) zbp.emplace_back(a);
    PowerCache<PuSeries> up(u_arg);

    std::map<std::pair<std::vector<int>, std::vector<int>>, PuSeries> groups;
    for (auto& [m, c] : target.terms()) {
        auto key = std::make_pair(m.alpha, m.beta);
        auto it = groups.find(key);
        if (it == groups.end()) it = groups.emplace(key, PuSeries(n_out, w)).first;
        it->second += c * up.get(m.l);
    }
    PuSeries result(n_out, w);
    for (auto& [key, inner] : groups) {
        PuSeries term = inner;
        for (size_t j = 0; j < z_args.size(); ++j)
            if (key.first[j] > 0) term = term * zp[j].get(key.first[j]);
        for (size_t j = 0; j < zbar_args.size(); ++j)
            if (key.second[j] > 0) term = term * zbp[j].get(key.second[j]);
        result += term;
    }
    return result;
}

HoloSeries substitute_holo(const HoloSeries& target, const std::vector<HoloSeries>& z_args,
                           const HoloSeries& w_arg) {
    if (static_cast<int>(z_args.size()) != target.n())
        throw validation_error("substitute_holo: expected one argument per z variable");
    int n_out = w_arg.n(), w = w_arg.max_weight();
    for (auto& a : z_args) check_compatible(a.n(), a.max_weight(), n_out, w);
    for (auto& a : z_args) require_no_constant_term(a);
    require_no_constant_term(w_arg);

    std::vector<PowerCache<HoloSeries>> zp;
    for (auto& a : z_args) zp.emplace_back(a);
    PowerCache<HoloSeries> wp(w_arg);

    std::map<std::vector<int>, HoloSeries> groups;
    for (auto& [m, c] : target.terms()) {
        auto it = groups.find(m.alpha);
        if (it == groups.end()) it = groups.emplace(m.alpha, HoloSeries(n_out, w)).first;
        it->second += c * wp.get(m.l);
    }
    HoloSeries result(n_out, w);
    for (auto& [alpha, inner] : groups) {
        HoloSeries term = inner;
        for (size_t j = 0; j < z_args.size(); ++j)
            if (alpha[j] > 0) term = term * zp[j].get(alpha[j]);
        result += term;
    }
    return result;
}

std::pair<std::vector<PuSeries>, PuSeries> invert_parametrization(const std::vector<PuSeries>& zp,
                                                                  const PuSeries& up) {
    int n = up.n(), w = up.max_weight();
    if (static_cast<int>(zp.size()) != static_cast<size_t>(n))
        throw validation_error("invert_parametrization: expected n z-components");
    for (auto& s : zp) check_compatible(s.n(), s.max_weight(), n, w);

    // linear part must be the identity
    std::vector<PuSeries> p;  // zp_j - z_j
    for (int j = 0; j < n; ++j) {
        PuSeries d = zp[j] - PuSeries::var_z(n, w, j);
        for (auto& [m, c] : d.terms())
            if (m.weight() <= 1)
                throw validation_error("invert_parametrization: z-component linear part is not the identity");
        p.push_back(std::move(d));
    }
    PuSeries q = up - PuSeries::var_u(n, w);
    for (auto& [m, c] : q.terms()) {
        if (m.weight() <= 1 || (m.l == 1 && m.adeg() == 0 && m.bdeg() == 0))
            throw validation_error("invert_parametrization: u-component linear part is not the identity");
    }

    std::vector<PuSeries> zeta;
    for (int j = 0; j < n; ++j) zeta.push_back(PuSeries::var_z(n, w, j));
    PuSeries mu = PuSeries::var_u(n, w);

    // each pass gains one weight of correctness, so pass t only needs to be
    // computed at truncation t+2: all but the last pass are cheap
    for (int pass = 0; pass < w; ++pass) {
        int tw = std::min(w, pass + 3);
        std::vector<PuSeries> zt, zt_bar;
        for (auto& s : zeta) {
            zt.push_back(s.truncated(tw));
            zt_bar.push_back(zt.back().conjugate());
        }
        PuSeries mt = mu.truncated(tw);
        std::vector<PuSeries> next;
        bool changed = false;
        for (int j = 0; j < n; ++j) {
            PuSeries nz =
                (PuSeries::var_z(n, tw, j) - substitute_pu(p[j].truncated(tw), zt, zt_bar, mt)).truncated(w);
            if (nz != zeta[j]) changed = true;
            next.push_back(std::move(nz));
        }
        PuSeries nmu =
            (PuSeries::var_u(n, tw) - substitute_pu(q.truncated(tw), zt, zt_bar, mt)).truncated(w);
        if (nmu != mu) changed = true;
        zeta = std::move(next);
        mu = std::move(nmu);
        if (!changed && tw == w) break;
    }
    return {zeta, mu};
}

}  // namespace crnf
