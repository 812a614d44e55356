#ifndef CRNF_HYPERSURFACE_HPP
#define CRNF_HYPERSURFACE_HPP

#include <vector>

#include "crnf/series.hpp"

namespace crnf {

enum class LeviPolicy {
    require_diagonal,  // bicomponent (1,1,0) must be the diagonal +-1 form
    any                // reality and no-low-order-terms only (harmonic elimination)
};

/// A real hypersurface jet Im w = phi(z, zbar, u), truncated by weight.
class HypersurfaceJet {
  public:
    /// Validates all invariants; throws validation_error naming the violation.
    static HypersurfaceJet validate(const PuSeries& raw, const Signature& sig,
                                    LeviPolicy policy = LeviPolicy::require_diagonal);
    /// The model hypersurface Im w = <z,z>.
    static HypersurfaceJet quadric(const Signature& sig, int max_weight);

    int n() const { return phi_.n(); }
    int max_weight() const { return phi_.max_weight(); }
    const Signature& sig() const { return sig_; }
    const PuSeries& phi() const { return phi_; }
    bool levi_diagonal() const { return levi_diagonal_; }

    friend bool operator==(const HypersurfaceJet& a, const HypersurfaceJet& b) { return a.phi_ == b.phi_; }
    friend bool operator!=(const HypersurfaceJet& a, const HypersurfaceJet& b) { return !(a == b); }

  private:
    HypersurfaceJet(PuSeries phi, Signature sig, bool levi_diagonal)
        : phi_(std::move(phi)), sig_(std::move(sig)), levi_diagonal_(levi_diagonal) {}
    PuSeries phi_;
    Signature sig_;
    bool levi_diagonal_;
};

/// A formal biholomorphism jet (z,w) -> (f(z,w), g(z,w)) preserving 0,
/// with g_10 = 0, Im g_01 = 0 and invertible linear part.
class MapJet {
  public:
    static MapJet validate(std::vector<HoloSeries> f, HoloSeries g);
    static MapJet identity(int n, int max_weight);

    int n() const { return g_.n(); }
    int max_weight() const { return g_.max_weight(); }
    const std::vector<HoloSeries>& f() const { return f_; }
    const HoloSeries& f(int j) const { return f_[j]; }
    const HoloSeries& g() const { return g_; }

    /// f_10 as a matrix: entry (j,i) is the z_i coefficient of f_j.
    std::vector<std::vector<GaussianRational>> f10() const;
    std::vector<GaussianRational> f01() const;  // w-coefficients of f
    GaussianRational g01() const;               // w-coefficient of g
    GaussianRational g02() const;               // w^2-coefficient of g
    bool linear_part_is_identity() const;

    friend bool operator==(const MapJet& a, const MapJet& b) { return a.f_ == b.f_ && a.g_ == b.g_; }
    friend bool operator!=(const MapJet& a, const MapJet& b) { return !(a == b); }

  private:
    MapJet(std::vector<HoloSeries> f, HoloSeries g) : f_(std::move(f)), g_(std::move(g)) {}
    std::vector<HoloSeries> f_;
    HoloSeries g_;
};

/// Derivative normalization: f_10 = id, f_01 = 0, g_10 = 0, g_01 = 1, Re g_02 = 0.
bool is_fg_normalized(const MapJet& h);

/// Re(g_01) <z,z> = <f_10 z, f_10 z> and Im g_01 = 0.
bool is_levi_isometry_linear_part(const MapJet& h, const Signature& sig);

/// Truncated composition h2 after h1.
MapJet compose(const MapJet& h2, const MapJet& h1);

/// Truncated compositional inverse.
MapJet invert(const MapJet& h);

/// Image hypersurface under h: the unique phi' with
/// Im g(z,u+i phi) = phi'(f, conj f, Re g) up to max_weight.
HypersurfaceJet apply_map(const HypersurfaceJet& m, const MapJet& h);

/// Residual Im g(z,u+i phi) - phi'(f, conj f, Re g); zero iff h maps m into m_image.
PuSeries check_transformation_identity(const HypersurfaceJet& m, const MapJet& h,
                                       const HypersurfaceJet& m_image);

/// Congruence-diagonal entries of the (1,1,0) hermitian form of a raw series,
/// and whether a rational rescaling to +-1 entries exists. Diagonalization
/// itself is not applied to jets; inputs must already satisfy the diagonal form.
struct LeviDiagnostic {
    std::vector<Rational> diag;
    bool nondegenerate;
    bool unit_rescalable;  // every |diag| entry is the square of a rational
};
LeviDiagnostic levi_congruence_diagnostic(const PuSeries& raw);

}  // namespace crnf

#endif
