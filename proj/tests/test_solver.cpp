#include <doctest.h>

#include "crnf/solver.hpp"
#include "test_util.hpp"

using namespace crnf;
using testutil::rand_degenerate_jet;
using testutil::rand_fg_map;
using testutil::rand_jet;

namespace {

const std::vector<Preset> kAllPresets{Preset::chern_moser, Preset::nf1, Preset::nf2,
                                      Preset::nf12,        Preset::min_l, Preset::mixed};

HypersurfaceJet quadric_plus(const Signature& sig, int W, const PuSeries& extra) {
    return HypersurfaceJet::validate(PuSeries::levi(sig, W) + extra, sig);
}

}  // namespace

TEST_CASE("line systems of the quadric are empty") {
    Signature sig({1, 1});
    HypersurfaceJet q = HypersurfaceJet::quadric(sig, 8);
    for (int k = 2; k <= 4; ++k) {
        LineSystem sys = build_line_system(q, k, 1);
        for (auto& r : sys.rhs) CHECK(r.is_zero());
    }
}

TEST_CASE("line solvers map zero defect to zero unknowns") {
    Signature sig({1, 1});
    HypersurfaceJet q = HypersurfaceJet::quadric(sig, 10);
    NormalFormSpec cm = preset(Preset::chern_moser, 10);

    auto s1 = solve_line_k_ge2(build_line_system(q, 2, 1), cm.choice(2, 1), sig);
    CHECK(s1.g.is_zero());
    for (auto& c : s1.f) CHECK(c.is_zero());

    auto s2 = solve_line_k1(build_line_system(q, 1, 2), cm.choice(1, 2), sig);
    CHECK(s2.g.is_zero());
    for (auto& c : s2.f2) CHECK(c.is_zero());
    for (auto& c : s2.f0) CHECK(c.is_zero());

    auto s3 = solve_line_k1_fixed(build_line_system(q, 1, 1), sig);
    CHECK(s3.g.is_zero());
    for (auto& c : s3.f2) CHECK(c.is_zero());

    auto s4 = solve_line_k0(build_line_system(q, 0, 3), cm.choice(0, 3), sig);
    CHECK(s4.g.is_zero());
    for (auto& c : s4.f1) CHECK(c.is_zero());

    auto s5 = solve_line_k0_fixed(build_line_system(q, 0, 2), sig);
    CHECK(s5.g.is_zero());
    for (auto& c : s5.f1) CHECK(c.is_zero());
}

TEST_CASE("quadric normalizes to itself with the identity map") {
    for (auto eps : {std::vector<int>{1}, {1, -1}}) {
        Signature sig(eps);
        HypersurfaceJet q = HypersurfaceJet::quadric(sig, 8);
        for (Preset p : kAllPresets) {
            auto res = normalize(q, preset(p, 8));
            CHECK(res.normal_form == q);
            CHECK(res.map == MapJet::identity(sig.n(), 8));
            CHECK(res.certificate.empty());
        }
    }
}

TEST_CASE("harmonic cubic defect is removed by a g-only map") {
    Signature sig({1});
    int W = 6;
    PuSeries cubic = PuSeries::var_z(1, W, 0).pow(3) + PuSeries::var_zbar(1, W, 0).pow(3);
    HypersurfaceJet m = quadric_plus(sig, W, cubic);
    auto res = normalize(m, preset(Preset::chern_moser, W));
    CHECK(res.normal_form == HypersurfaceJet::quadric(sig, W));
    CHECK(res.map.f(0) == HoloSeries::var_z(1, W, 0));
    CHECK(res.map.g() != HoloSeries::var_w(1, W));
    // cross-check with the harmonic eliminator
    auto harm = eliminate_harmonics(m);
    CHECK(harm.normal_form == HypersurfaceJet::quadric(sig, W));
}

TEST_CASE("n=1 quartic circular term is absorbed") {
    Signature sig({1});
    int W = 8;
    PuSeries quartic(1, W);
    quartic.add_term({{2}, {2}, 0}, GaussianRational(1));
    HypersurfaceJet m = quadric_plus(sig, W, quartic);
    auto res = normalize(m, preset(Preset::chern_moser, W));
    CHECK(res.normal_form.phi().bicomponent(2, 2, 0).is_zero());
    CHECK(res.certificate.empty());
    CHECK(apply_map(m, res.map) == res.normal_form);
}

TEST_CASE("normalize output satisfies its contract on random jets") {
    std::mt19937 rng(101);
    for (int t = 0; t < 6; ++t) {
        Signature sig = (t % 2 == 0) ? Signature({1}) : Signature({1, -1});
        int W = (t % 2 == 0) ? 8 : 6;
        HypersurfaceJet m = rand_jet(rng, sig, W);
        Preset p = kAllPresets[t % kAllPresets.size()];
        NormalFormSpec spec = preset(p, W);
        auto res = normalize(m, spec);
        CHECK(res.certificate.empty());
        CHECK(check(res.normal_form, spec).empty());
        CHECK(is_fg_normalized(res.map));
        CHECK(apply_map(m, res.map) == res.normal_form);
        CHECK(res.free_re_g02.is_zero());
        for (auto& c : res.free_f01) CHECK(c.is_zero());
    }
}

TEST_CASE("normalization is idempotent") {
    std::mt19937 rng(103);
    Signature sig({1});
    for (Preset p : {Preset::chern_moser, Preset::mixed}) {
        HypersurfaceJet m = rand_jet(rng, sig, 7);
        NormalFormSpec spec = preset(p, 7);
        auto first = normalize(m, spec);
        auto second = normalize(first.normal_form, spec);
        CHECK(second.normal_form == first.normal_form);
        CHECK(second.map == MapJet::identity(1, 7));
    }
}

TEST_CASE("normal form is invariant under fg-normalized maps") {
    std::mt19937 rng(107);
    Signature sig({1, 1});
    for (int t = 0; t < 3; ++t) {
        HypersurfaceJet m = rand_jet(rng, sig, 6);
        MapJet h = rand_fg_map(rng, 2, 6);
        HypersurfaceJet m2 = apply_map(m, h);
        for (Preset p : {Preset::chern_moser, Preset::min_l}) {
            NormalFormSpec spec = preset(p, 6);
            CHECK(normalize(m, spec).normal_form == normalize(m2, spec).normal_form);
        }
    }
}

TEST_CASE("the oracle engine agrees with the line solvers") {
    std::mt19937 rng(109);
    Signature sig({1});
    HypersurfaceJet m = rand_jet(rng, sig, 7);
    for (Preset p : {Preset::chern_moser, Preset::nf2}) {
        NormalFormSpec spec = preset(p, 7);
        auto a = normalize(m, spec);
        auto b = normalize_oracle(m, spec);
        CHECK(a.normal_form == b.normal_form);
        CHECK(a.map == b.map);
    }
}

TEST_CASE("harmonic elimination clears every phi_k0l, degenerate Levi included") {
    std::mt19937 rng(113);
    for (int t = 0; t < 5; ++t) {
        HypersurfaceJet m = rand_degenerate_jet(rng, 2, 6);
        auto res = eliminate_harmonics(m);
        for (auto [k, mm, l] : res.normal_form.phi().bidegrees()) {
            CHECK(mm != 0);
            CHECK(k != 0);
        }
        CHECK(apply_map(m, res.map) == res.normal_form);
    }
}

TEST_CASE("harmonic elimination is the identity on harmonic-free jets") {
    Signature sig({1});
    PuSeries extra(1, 6);
    extra.add_term({{2}, {1}, 0}, GaussianRational(Rational(1, 3)));
    extra.add_term({{1}, {2}, 0}, GaussianRational(Rational(1, 3)));
    HypersurfaceJet m = quadric_plus(sig, 6, extra);
    auto res = eliminate_harmonics(m);
    CHECK(res.normal_form == m);
    CHECK(res.map == MapJet::identity(1, 6));
}

TEST_CASE("distinct presets give distinct normal forms generically") {
    std::mt19937 rng(127);
    Signature sig({1, 1});
    HypersurfaceJet m = rand_jet(rng, sig, 6, 10);
    auto cm = normalize(m, preset(Preset::chern_moser, 6));
    auto ml = normalize(m, preset(Preset::min_l, 6));
    CHECK(check(cm.normal_form, preset(Preset::chern_moser, 6)).empty());
    CHECK(check(ml.normal_form, preset(Preset::min_l, 6)).empty());
}
