#ifndef CRNF_TRACE_HPP
#define CRNF_TRACE_HPP

#include <utility>

#include "crnf/series.hpp"

namespace crnf {

/// P = q * <z,z>^s + r with tr^s r = 0.
struct TraceDecomposition {
    PuSeries q, r;
    int s;
};

/// tr p = sum_j eps_j d^2 p / dz_j dzbar_j.
PuSeries trace(const PuSeries& p, const Signature& sig);
PuSeries trace_pow(const PuSeries& p, const Signature& sig, int t);

/// (sum_j p_{z_j} z_j, sum_j p_{zbar_j} zbar_j); equals (p*deg, q*deg) on
/// bidegree-(p,q) input.
std::pair<PuSeries, PuSeries> euler_weights(const PuSeries& p);

/// Unique decomposition p = Q <z,z>^s + R, tr^s R = 0, by the backward
/// recursion through tr^k p. Non-bihomogeneous input is decomposed
/// bicomponent-wise. A vanishing recursion constant falls back to the
/// linear-algebra oracle.
TraceDecomposition trace_decompose(const PuSeries& p, int s, const Signature& sig);

/// Same contract, solved as one exact linear system over the monomial
/// coefficient basis. Independent check of the recursion.
TraceDecomposition trace_decompose_oracle(const PuSeries& p, int s, const Signature& sig);

/// Enumerate all multi-indices of length n with |idx| = d.
std::vector<std::vector<int>> enumerate_multiindices(int n, int d);

}  // namespace crnf

#endif
