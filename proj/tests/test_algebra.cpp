#include <doctest.h>

#include "crnf/series.hpp"
#include "test_util.hpp"

using namespace crnf;
using testutil::rand_bihom;
using testutil::rand_scalar;

namespace {
const GaussianRational I = GaussianRational::i();

PuSeries zvar(int n, int w, int j) { return PuSeries::var_z(n, w, j); }
}  // namespace

TEST_CASE("gaussian rational field arithmetic") {
    GaussianRational a{Rational(1, 2), Rational(-3)};
    GaussianRational b{Rational(2), Rational(1, 5)};
    CHECK(I * I == GaussianRational(-1));
    CHECK(a * b / b == a);
    CHECK((a + b) - b == a);
    CHECK(a.conj().conj() == a);
    CHECK((a * a.conj()).is_real());
    CHECK_THROWS_AS(a / GaussianRational(0), internal_error);
}

TEST_CASE("i_pow handles all residues and negatives") {
    CHECK(i_pow(0) == GaussianRational(1));
    CHECK(i_pow(1) == I);
    CHECK(i_pow(2) == GaussianRational(-1));
    CHECK(i_pow(3) == -I);
    CHECK(i_pow(-1) == -I);
    CHECK(i_pow(-2) == GaussianRational(-1));
    CHECK(i_pow(7) == -I);
}

TEST_CASE("binomial with out-of-range zero convention") {
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(4, 0) == 1);
    CHECK(binomial(3, -1) == 0);
    CHECK(binomial(3, 5) == 0);
    CHECK(binomial(0, 0) == 1);
}

TEST_CASE("coefficient grammar round-trips") {
    for (const char* s : {"0", "1", "-3/4", "1/2+2/3i", "0-1i", "-7/2-1/3i", "5+1i"}) {
        GaussianRational c = parse_coeff(s);
        CHECK(format_coeff(c) == s);
    }
    CHECK(parse_coeff("2/4") == GaussianRational(Rational(1, 2)));
    CHECK(format_coeff(GaussianRational{Rational(0), Rational(-1)}) == "0-1i");
}

TEST_CASE("coefficient grammar rejections") {
    for (const char* s : {"1//2", "1i", "", "+1", "1+i", "2/0", "1+2", "1 ", "i", "1.5", "--1", "1+-2i", "1+2i3"}) {
        CHECK_THROWS_AS(parse_coeff(s), parse_error);
    }
}

TEST_CASE("series addition") {
    int n = 1, W = 6;
    PuSeries p = zvar(n, W, 0) * PuSeries::var_zbar(n, W, 0);
    CHECK((p + (-p)).is_zero());
    PuSeries z2 = zvar(n, W, 0).pow(2);
    PuSeries zb2 = PuSeries::var_zbar(n, W, 0).pow(2);
    PuSeries s = z2 + zb2;
    CHECK(s.coeff({{2}, {0}, 0}) == GaussianRational(1));
    CHECK(s.coeff({{0}, {2}, 0}) == GaussianRational(1));

    std::mt19937 rng(7);
    for (int t = 0; t < 10; ++t) {
        PuSeries a = rand_bihom(rng, 2, 2, 1, 6);
        PuSeries b = rand_bihom(rng, 2, 1, 2, 6);
        CHECK(a + b == b + a);
    }
}

TEST_CASE("series addition rejects mismatched shapes") {
    PuSeries a(1, 4), b(1, 5), c(2, 4);
    CHECK_THROWS_AS(a + b, validation_error);
    CHECK_THROWS_AS(a + c, validation_error);
}

TEST_CASE("series multiplication with weight truncation") {
    PuSeries p = zvar(1, 6, 0) * PuSeries::var_zbar(1, 6, 0);
    CHECK((p * p).coeff({{2}, {2}, 0}) == GaussianRational(1));
    PuSeries u3 = PuSeries::var_u(1, 3);
    CHECK((u3 * u3).is_zero());  // weight 4 > 3

    Signature sig({1, 1});
    PuSeries lam = PuSeries::levi(sig, 8);
    PuSeries sq = lam * lam;
    CHECK(sq.coeff({{2, 0}, {2, 0}, 0}) == GaussianRational(1));
    CHECK(sq.coeff({{1, 1}, {1, 1}, 0}) == GaussianRational(2));
    CHECK(sq.coeff({{0, 2}, {0, 2}, 0}) == GaussianRational(1));
    CHECK(sq.terms().size() == 3);
}

TEST_CASE("conjugation") {
    int n = 2, W = 6;
    PuSeries p(n, W);
    p.add_term({{2, 0}, {0, 1}, 0}, I);
    PuSeries q = p.conjugate();
    CHECK(q.coeff({{0, 1}, {2, 0}, 0}) == -I);
    CHECK(q.terms().size() == 1);

    PuSeries lam = PuSeries::levi(Signature({1, -1}), W);
    CHECK(lam.conjugate() == lam);
    CHECK(lam.is_real());

    std::mt19937 rng(11);
    for (int t = 0; t < 10; ++t) {
        PuSeries a = rand_bihom(rng, 2, 2, 3, 6);
        CHECK(a.conjugate().conjugate() == a);
    }
}

TEST_CASE("bicomponent extraction partitions the series") {
    Signature sig({1, 1});
    int W = 6;
    PuSeries p = PuSeries::levi(sig, W) + PuSeries::var_u(2, W).pow(2);
    CHECK(p.bicomponent(1, 1, 0) == PuSeries::levi(sig, W));
    CHECK(p.bicomponent(0, 0, 2) == PuSeries::var_u(2, W).pow(2));
    CHECK(p.bicomponent(2, 0, 0).is_zero());

    std::mt19937 rng(13);
    PuSeries a = rand_bihom(rng, 2, 2, 1, 6) + rand_bihom(rng, 2, 1, 1, 6) * PuSeries::var_u(2, 6);
    PuSeries sum(2, 6);
    for (auto [k, m, l] : a.bidegrees()) sum += a.bicomponent(k, m, l);
    CHECK(sum == a);
}

TEST_CASE("real and imaginary parts") {
    int n = 1, W = 6;
    PuSeries zzb = zvar(n, W, 0) * PuSeries::var_zbar(n, W, 0);
    CHECK((I * zzb).imag_part() == zzb);
    PuSeries z2 = zvar(n, W, 0).pow(2);
    PuSeries half = GaussianRational(Rational(1, 2)) * (z2 + z2.conjugate());
    CHECK(z2.real_part() == half);

    std::mt19937 rng(17);
    for (int t = 0; t < 10; ++t) {
        PuSeries a = rand_bihom(rng, 2, 2, 1, 6);
        CHECK(a.real_part() + I * a.imag_part() == a);
        CHECK(a.real_part().is_real());
        CHECK(a.imag_part().is_real());
    }
}

TEST_CASE("substitution of holomorphic series") {
    int n = 1, W = 4;
    Signature sig({1});
    PuSeries theta = PuSeries::var_u(n, W) + I * PuSeries::levi(sig, W);
    HoloSeries w1 = HoloSeries::var_w(n, W);
    CHECK(substitute(w1, {PuSeries::var_z(n, W, 0)}, theta) == theta);

    PuSeries sq = substitute(w1 * w1, {PuSeries::var_z(n, W, 0)}, theta);
    PuSeries expect = PuSeries::var_u(n, W).pow(2) +
                      GaussianRational(Rational(0), Rational(2)) * (PuSeries::var_u(n, W) * PuSeries::levi(sig, W)) -
                      PuSeries::levi(sig, W).pow(2);
    CHECK(sq == expect);
}

TEST_CASE("substitution is a ring homomorphism") {
    std::mt19937 rng(19);
    int n = 2, W = 6;
    std::vector<PuSeries> zargs;
    for (int j = 0; j < n; ++j)
        zargs.push_back(PuSeries::var_z(n, W, j) + rand_bihom(rng, n, 2, 0, W, 2));
    PuSeries warg = PuSeries::var_u(n, W) + rand_bihom(rng, n, 1, 1, W, 2);
    for (int t = 0; t < 5; ++t) {
        HoloSeries a(n, W), b(n, W);
        for (int i = 0; i < 4; ++i) {
            a.add_term(testutil::rand_holo_monomial(rng, n, testutil::rand_int(rng, 1, 4)), rand_scalar(rng));
            b.add_term(testutil::rand_holo_monomial(rng, n, testutil::rand_int(rng, 1, 4)), rand_scalar(rng));
        }
        CHECK(substitute(a * b, zargs, warg) == substitute(a, zargs, warg) * substitute(b, zargs, warg));
        CHECK(substitute(a + b, zargs, warg) == substitute(a, zargs, warg) + substitute(b, zargs, warg));
    }
}

TEST_CASE("substitution rejects nonzero constant terms") {
    int n = 1, W = 4;
    HoloSeries w1 = HoloSeries::var_w(n, W);
    PuSeries bad = PuSeries::constant(n, W, GaussianRational(1)) + PuSeries::var_u(n, W);
    CHECK_THROWS_AS(substitute(w1, {PuSeries::var_z(n, W, 0)}, bad), validation_error);
}

TEST_CASE("parametrization inversion") {
    int n = 1, W = 3;
    Signature sig({1});
    std::vector<PuSeries> zp{PuSeries::var_z(n, W, 0)};
    PuSeries up = PuSeries::var_u(n, W);

    auto [zi, ui] = invert_parametrization(zp, up);
    CHECK(zi[0] == zp[0]);
    CHECK(ui == up);

    PuSeries up2 = PuSeries::var_u(n, W) + PuSeries::levi(sig, W);
    auto [zi2, ui2] = invert_parametrization(zp, up2);
    CHECK(ui2 == PuSeries::var_u(n, W) - PuSeries::levi(sig, W));
}

TEST_CASE("parametrization inversion round-trips") {
    std::mt19937 rng(23);
    int n = 2, W = 6;
    for (int t = 0; t < 5; ++t) {
        std::vector<PuSeries> zp;
        for (int j = 0; j < n; ++j)
            zp.push_back(PuSeries::var_z(n, W, j) + rand_bihom(rng, n, 1, 1, W, 2) +
                         rand_bihom(rng, n, 2, 0, W, 2));
        PuSeries h = rand_bihom(rng, n, 2, 1, W, 2);
        PuSeries up = PuSeries::var_u(n, W) + h.real_part();
        auto [zi, ui] = invert_parametrization(zp, up);
        std::vector<PuSeries> zbi;
        for (auto& s : zi) zbi.push_back(s.conjugate());
        for (int j = 0; j < n; ++j)
            CHECK(substitute_pu(zp[j], zi, zbi, ui) == PuSeries::var_z(n, W, j));
        CHECK(substitute_pu(up, zi, zbi, ui) == PuSeries::var_u(n, W));
    }
}

TEST_CASE("parametrization inversion rejects non-identity linear part") {
    int n = 1, W = 3;
    std::vector<PuSeries> zp{GaussianRational(2) * PuSeries::var_z(n, W, 0)};
    CHECK_THROWS_AS(invert_parametrization(zp, PuSeries::var_u(n, W)), validation_error);
}

TEST_CASE("grading of products") {
    std::mt19937 rng(29);
    PuSeries a = rand_bihom(rng, 2, 2, 1, 10);
    PuSeries b = rand_bihom(rng, 2, 1, 2, 10);
    PuSeries p = a * b;
    for (auto& [mono, c] : p.terms()) CHECK(mono.weight() == 6);
}

TEST_CASE("canonical form stores no zeros and truncates") {
    PuSeries p(1, 4);
    p.add_term({{1}, {1}, 0}, GaussianRational(1));
    p.add_term({{1}, {1}, 0}, GaussianRational(-1));
    CHECK(p.is_zero());
    p.add_term({{3}, {2}, 0}, GaussianRational(5));  // weight 5 > 4: dropped
    CHECK(p.is_zero());
    CHECK(p.min_weight() == 5);
}
