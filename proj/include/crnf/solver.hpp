#ifndef CRNF_SOLVER_HPP
#define CRNF_SOLVER_HPP

#include <vector>

#include "crnf/hypersurface.hpp"
#include "crnf/normalform.hpp"

namespace crnf {

/// One line (k,l) of multidegrees (k+mu, mu, l-mu): the current jet's
/// components on it. rhs[mu] is the bidegree-(k+mu,mu) polynomial (u stripped).
struct LineSystem {
    int k, l;
    std::vector<PuSeries> rhs;
};

LineSystem build_line_system(const HypersurfaceJet& m, int k, int l);

/// Solutions are z-polynomials (no zbar, no u); the caller attaches the
/// w-powers when assembling the map increment.
struct KGe2Solution {
    PuSeries g;               // g_{kl}, degree k
    std::vector<PuSeries> f;  // f_{k+1,l-1}, n components of degree k+1 (empty polys for l=0)
};

struct K1Solution {
    PuSeries g;                        // g_{1l}, degree 1
    std::vector<PuSeries> f2;          // f_{2,l-1}, degree 2
    std::vector<GaussianRational> f0;  // f_{0l}, constant vector
};

struct K0Solution {
    GaussianRational g;        // g_{0l}
    std::vector<PuSeries> f1;  // f_{1,l-1}, degree 1
};

/// k >= 2 line: imposes tr^{m-1} phi'_{k+m,m,l-m} = 0 and
/// tr^{mp} phi'_{k+mp,mp,l-mp} = 0; l = 0 ignores the choice and solves
/// phi'_{k00} = 0 alone.
KGe2Solution solve_line_k_ge2(const LineSystem& sys, const LineChoice& choice, const Signature& sig);

/// k = 1 line, l >= 2: the three trace conditions at indices (m, mp, mpp).
K1Solution solve_line_k1(const LineSystem& sys, const LineChoice& choice, const Signature& sig);
/// k = 1, l = 1: fixed conditions phi'_101 = 0, phi'_210 = 0 with f_01 = 0.
K1Solution solve_line_k1_fixed(const LineSystem& sys, const Signature& sig);

/// k = 0 line, l >= 3: even pair (m, mp) determines Im g_0l and
/// Im<f_{1,l-1}(z),z>, odd pair (mt, mtp) determines Re g_0l and the real part.
K0Solution solve_line_k0(const LineSystem& sys, const LineChoice& choice, const Signature& sig);
/// k = 0, l = 2: fixed conditions phi'_002 = 0, phi'_111 = 0, tr phi'_220 = 0
/// with Re g_02 = 0.
K0Solution solve_line_k0_fixed(const LineSystem& sys, const Signature& sig);

struct NormalizationResult {
    HypersurfaceJet normal_form;
    MapJet map;
    std::vector<Violation> certificate;        // empty on success
    std::vector<GaussianRational> free_f01;    // pinned to zero
    GaussianRational free_re_g02;              // pinned to zero
};

/// Partial normalization phi'_{k0l} = 0 by induction on the order k+l;
/// needs no Levi-nondegeneracy. All free parameters are zero.
NormalizationResult eliminate_harmonics(const HypersurfaceJet& m);

/// The full normalization: weight-by-weight successive substitution through
/// the line solvers. Returns the normal form together with the unique
/// normalizing map with f_10 = id, f_01 = 0, g_10 = 0, g_01 = 1, Re g_02 = 0.
NormalizationResult normalize(const HypersurfaceJet& m, const NormalFormSpec& spec);

/// Same contract, but every weight step is solved as one generic exact
/// linear system over the real coefficient basis. Independent of the
/// line-solver formulas; must agree with normalize exactly.
NormalizationResult normalize_oracle(const HypersurfaceJet& m, const NormalFormSpec& spec);

}  // namespace crnf

#endif
