#include <catch_amalgamated.hpp>

#include "generators.hpp"
#include "ihf/fixtures.hpp"
#include "ihf/solver.hpp"
#include "oracle.hpp"

using namespace ihf;

TEST_CASE("F2 system solves, detects inconsistency and finds the nullspace") {
    F2System s(3);
    int a = s.add_equation();
    s.set(a, 0);
    s.set(a, 1);
    s.set_rhs(a);
    int b = s.add_equation();
    s.set(b, 1);
    s.set(b, 2);
    auto z = s.solve();
    REQUIRE(z);
    CHECK((z->get(0) ^ z->get(1)) == 1);
    CHECK((z->get(1) ^ z->get(2)) == 0);
    CHECK(s.rank() == 2);
    CHECK(s.nullspace().size() == 1);
    int c = s.add_equation();
    s.set(c, 0);
    s.set(c, 2);  // x0 + x2 = 0 contradicts x0 + x1 = 1, x1 = x2
    CHECK_FALSE(s.solve());
}

TEST_CASE("homotopy_solve on constructed homotopic pairs") {
    gen::Rng rng(gen::test_seed());
    for (int i = 0; i < 40; ++i) {
        auto s = gen::random_u_complex(rng, {8, 0, 2, 3, 4, false});
        auto t = gen::random_u_complex(rng, {8, 0, 2, 3, 4, false});
        auto f = gen::random_chain_map(rng, s, t, gen::maslov(0));
        auto K = gen::random_map(rng, s, t, gen::maslov(2));
        auto g = f + commutator_with_d(K);
        auto h = homotopy_solve(f, g);
        REQUIRE(h);
        CHECK(commutator_with_d(*h) == f + g);
    }
}

TEST_CASE("homotopy_solve rejects maps that differ on truncated homology") {
    gen::Rng rng(gen::test_seed() + 1);
    int rejected = 0;
    for (int i = 0; i < 200 && rejected < 20; ++i) {
        auto s = gen::random_u_complex(rng, {8, 1, 2, 3, 4, false});
        auto t = gen::random_u_complex(rng, {8, 1, 2, 3, 4, false});
        auto c = gen::random_chain_map(rng, s, t, gen::maslov(0));
        if (!oracle::induces_nonzero_on_truncation(c, 6)) continue;
        auto f = gen::random_chain_map(rng, s, t, gen::maslov(0));
        CHECK_FALSE(homotopy_solve(f, f + c));
        ++rejected;
    }
    CHECK(rejected == 20);
}

TEST_CASE("chain map space matches exhaustive enumeration") {
    gen::Rng rng(gen::test_seed() + 2);
    int tested = 0;
    for (int i = 0; i < 200 && tested < 25; ++i) {
        auto s = gen::random_u_complex(rng, {4, 0, 2, 2, 2, false});
        auto t = gen::random_u_complex(rng, {4, 0, 2, 2, 2, false});
        auto slots = enumerate_slots(*s, *t, gen::maslov(0), Equivariance::plain);
        if (slots.size() > 14) continue;
        ++tested;
        int count = 0;
        for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
            BitVec v(static_cast<int>(slots.size()));
            for (std::size_t k = 0; k < slots.size(); ++k)
                if (mask >> k & 1u) v.set(static_cast<int>(k));
            if (commutator_with_d(assemble(s, t, gen::maslov(0), Equivariance::plain, slots, v)).is_zero()) ++count;
        }
        auto basis = chain_map_space(s, t, gen::maslov(0));
        CHECK(count == (1 << basis.size()));
        for (const auto& b : basis) CHECK(validate_chain_map(b).ok());
    }
    CHECK(tested == 25);
}

TEST_CASE("homotopy inverse of a cancellation") {
    // C = tower x plus an acyclic pair a -> b; projection onto x is an equivalence.
    ComplexBuilder cb(kModeU);
    cb.add_generator("x", Grading::integral({0}));
    cb.add_generator("a", Grading::integral({1}));
    cb.add_generator("b", Grading::integral({0}));
    cb.add_arrow("a", "b", "1");
    auto C = cb.build();
    auto S3 = fixtures::s3().base;
    Matrix p(kModeU, 1, 3);
    p.add(0, 0, Coefficient::one(kModeU));
    ChainMap proj(C, S3, p, gen::maslov(0));
    auto inv = find_homotopy_inverse(proj);
    REQUIRE(inv);
    CHECK(compose(proj, inv->g) + ChainMap::identity(S3) == commutator_with_d(inv->kp));
    // The zero map is not an equivalence.
    CHECK_FALSE(find_homotopy_inverse(ChainMap::zero(C, S3, gen::maslov(0))));
    // Multiplication by U is not invertible up to homotopy.
    Matrix u(kModeU, 1, 1);
    u.add(0, 0, Monomial::u_power(1));
    CHECK_FALSE(find_homotopy_inverse(ChainMap(S3, S3, u, gen::maslov(-4))));
}

TEST_CASE("skew homotopies on knot complexes") {
    auto k = fixtures::figure_eight();
    auto sq = compose(k.iota_k, k.iota_k);
    auto h = homotopy_solve(sq, sq);
    REQUIRE(h);
    CHECK(h->is_zero());
    auto skew_slots = enumerate_slots(*k.base, *k.base, Grading::integral({0, 0}), Equivariance::skew);
    CHECK_FALSE(skew_slots.empty());
    for (const auto& sl : skew_slots) {
        auto want = conj_grading(kModeUV, k.base->grading(sl.x));
        CHECK(k.base->grading(sl.y) + shift_of(kModeUV, sl.m) == want);
    }
}
