#ifndef CRNF_SERIES_HPP
#define CRNF_SERIES_HPP

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "crnf/rational.hpp"

namespace crnf {

/// Levi-form signature: n entries, each +1 or -1.
struct Signature {
    std::vector<int> eps;

    explicit Signature(std::vector<int> e) : eps(std::move(e)) {
        if (eps.empty()) throw validation_error("Signature: length must be >= 1");
        for (int s : eps)
            if (s != 1 && s != -1) throw validation_error("Signature: entries must be +1 or -1");
    }
    static Signature definite(int n) { return Signature(std::vector<int>(n, 1)); }

    int n() const { return static_cast<int>(eps.size()); }
};

/// z^alpha zbar^beta u^l. Weight |alpha|+|beta|+2l.
struct Monomial {
    std::vector<int> alpha, beta;
    int l = 0;

    int adeg() const;
    int bdeg() const;
    int weight() const { return adeg() + bdeg() + 2 * l; }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.l == b.l && a.alpha == b.alpha && a.beta == b.beta;
    }
    // graded order: weight first, so products can truncate early
    friend bool operator<(const Monomial& a, const Monomial& b) {
        int wa = a.weight(), wb = b.weight();
        if (wa != wb) return wa < wb;
        if (a.l != b.l) return a.l < b.l;
        if (a.alpha != b.alpha) return a.alpha < b.alpha;
        return a.beta < b.beta;
    }
};

/// z^alpha w^l for holomorphic series in (z,w). Weight |alpha|+2l.
struct HoloMonomial {
    std::vector<int> alpha;
    int l = 0;

    int adeg() const;
    int weight() const { return adeg() + 2 * l; }

    friend bool operator==(const HoloMonomial& a, const HoloMonomial& b) {
        return a.l == b.l && a.alpha == b.alpha;
    }
    friend bool operator<(const HoloMonomial& a, const HoloMonomial& b) {
        int wa = a.weight(), wb = b.weight();
        if (wa != wb) return wa < wb;
        if (a.l != b.l) return a.l < b.l;
        return a.alpha < b.alpha;
    }
};

/// Truncated formal series in (z, zbar, u), weight-graded, exact coefficients.
/// Canonical form: no zero coefficients, no monomial above max_weight.
class PuSeries {
  public:
    PuSeries(int n, int max_weight);

    int n() const { return n_; }
    int max_weight() const { return w_; }
    const std::map<Monomial, GaussianRational>& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    static PuSeries constant(int n, int max_weight, const GaussianRational& c);
    static PuSeries var_z(int n, int max_weight, int j);
    static PuSeries var_zbar(int n, int max_weight, int j);
    static PuSeries var_u(int n, int max_weight);
    /// The diagonal Levi form sum_j eps_j z_j zbar_j.
    static PuSeries levi(const Signature& sig, int max_weight);

    void add_term(const Monomial& m, const GaussianRational& c);
    GaussianRational coeff(const Monomial& m) const;
    /// Coefficient of the constant monomial.
    GaussianRational constant_term() const;

    PuSeries operator-() const;
    PuSeries& operator+=(const PuSeries& o);
    PuSeries& operator-=(const PuSeries& o);
    friend PuSeries operator+(PuSeries a, const PuSeries& b) { return a += b; }
    friend PuSeries operator-(PuSeries a, const PuSeries& b) { return a -= b; }
    friend PuSeries operator*(const PuSeries& a, const PuSeries& b);
    friend PuSeries operator*(const GaussianRational& c, PuSeries a);
    friend bool operator==(const PuSeries& a, const PuSeries& b) {
        return a.n_ == b.n_ && a.w_ == b.w_ && a.c_ == b.c_;
    }
    friend bool operator!=(const PuSeries& a, const PuSeries& b) { return !(a == b); }

    PuSeries pow(int e) const;

    /// Swap alpha <-> beta, conjugate coefficients. Involution.
    PuSeries conjugate() const;
    bool is_real() const { return *this == conjugate(); }
    PuSeries real_part() const;
    PuSeries imag_part() const;

    /// Sub-series with |alpha|=k, |beta|=m, u-exponent l (u^l kept).
    PuSeries bicomponent(int k, int m, int l) const;
    /// As bicomponent but with the u^l factor stripped.
    PuSeries bicomponent_poly(int k, int m, int l) const;
    /// Multiply by u^p.
    PuSeries times_u_pow(int p) const;
    /// All (k,m,l) with a nonzero bicomponent.
    std::vector<std::array<int, 3>> bidegrees() const;

    PuSeries dz(int j) const;
    PuSeries dzbar(int j) const;

    /// Re-truncate to a (smaller or larger) weight bound.
    PuSeries truncated(int max_weight) const;

    /// Smallest monomial weight present, or max_weight+1 when zero.
    int min_weight() const;

  private:
    int n_, w_;
    std::map<Monomial, GaussianRational> c_;
};

/// Truncated holomorphic series in (z, w), same conventions as PuSeries.
class HoloSeries {
  public:
    HoloSeries(int n, int max_weight);

    int n() const { return n_; }
    int max_weight() const { return w_; }
    const std::map<HoloMonomial, GaussianRational>& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    static HoloSeries constant(int n, int max_weight, const GaussianRational& c);
    static HoloSeries var_z(int n, int max_weight, int j);
    static HoloSeries var_w(int n, int max_weight);

    void add_term(const HoloMonomial& m, const GaussianRational& c);
    GaussianRational coeff(const HoloMonomial& m) const;
    GaussianRational constant_term() const;

    HoloSeries operator-() const;
    HoloSeries& operator+=(const HoloSeries& o);
    HoloSeries& operator-=(const HoloSeries& o);
    friend HoloSeries operator+(HoloSeries a, const HoloSeries& b) { return a += b; }
    friend HoloSeries operator-(HoloSeries a, const HoloSeries& b) { return a -= b; }
    friend HoloSeries operator*(const HoloSeries& a, const HoloSeries& b);
    friend HoloSeries operator*(const GaussianRational& c, HoloSeries a);
    friend bool operator==(const HoloSeries& a, const HoloSeries& b) {
        return a.n_ == b.n_ && a.w_ == b.w_ && a.c_ == b.c_;
    }
    friend bool operator!=(const HoloSeries& a, const HoloSeries& b) { return !(a == b); }

    HoloSeries pow(int e) const;
    /// The degree-k-in-z, w^l coefficient slice (w^l kept).
    HoloSeries component(int k, int l) const;
    HoloSeries truncated(int max_weight) const;

  private:
    int n_, w_;
    std::map<HoloMonomial, GaussianRational> c_;
};

/// Composition target(z_args, w_arg), truncated. Every argument must have
/// zero constant term.
PuSeries substitute(const HoloSeries& target, const std::vector<PuSeries>& z_args, const PuSeries& w_arg);

/// Composition of a PuSeries with series arguments for z, zbar and u.
PuSeries substitute_pu(const PuSeries& target, const std::vector<PuSeries>& z_args,
                       const std::vector<PuSeries>& zbar_args, const PuSeries& u_arg);

/// Holomorphic-into-holomorphic composition (used by map composition).
HoloSeries substitute_holo(const HoloSeries& target, const std::vector<HoloSeries>& z_args,
                           const HoloSeries& w_arg);

/// Invert the real parametrization (z,zbar,u) -> (zp, conj zp, up) whose
/// linear part is the identity, by fixed-point iteration on the weight
/// filtration. Returns series (z(z',zbar',u'), u(z',zbar',u')).
std::pair<std::vector<PuSeries>, PuSeries> invert_parametrization(const std::vector<PuSeries>& zp,
                                                                  const PuSeries& up);

}  // namespace crnf

#endif
