#include <catch_amalgamated.hpp>

#include <memory>

#include "generators.hpp"
#include "ihf/fixtures.hpp"
#include "ihf/surgery.hpp"
#include "oracle.hpp"

using namespace ihf;

namespace {

KnotPtr knot(KnotComplex k) { return std::make_shared<const KnotComplex>(std::move(k)); }

}  // namespace

TEST_CASE("surgery on the unknot has one tower per spin^c class") {
    auto u = knot(fixtures::unknot());
    for (int f : {1, 2, 3, 4, -1, -2, -3, -4}) {
        INFO("framing " << f);
        auto x = build_cone(u, f);
        auto rep = analyze_cone(x);
        CHECK(rep.d_squared_zero);
        CHECK(rep.homogeneous);
        auto h = homology(x.plain);
        CHECK(static_cast<int>(h.towers.size()) == std::abs(f));
        CHECK(h.torsion.empty());
        CHECK(oracle::towers_by_truncation(*x.plain) == std::abs(f));
        CHECK(oracle::truncated_dims(*x.plain, 8) == truncated_dimensions(h, 8));
        REQUIRE(static_cast<int>(rep.classes.size()) == std::abs(f));
        for (const auto& c : rep.classes) CHECK(c.homology.towers.size() == 1);
    }
}

TEST_CASE("surgery cones of the trefoil and figure-eight") {
    for (auto k : {knot(fixtures::trefoil()), knot(fixtures::figure_eight())}) {
        for (int f : {1, 2, 3, -1, -2}) {
            INFO("framing " << f);
            auto x = build_cone(k, f);
            CHECK(x.bound == default_bound(*k, f));
            auto rep = analyze_cone(x);
            CHECK(rep.d_squared_zero);
            CHECK(rep.homogeneous);
            for (const auto& c : rep.classes) CHECK(c.homology.towers.size() == 1);
            CHECK(oracle::truncated_dims(*x.plain, 8) == truncated_dimensions(homology(x.plain), 8));
            // A larger truncation gives the same homology.
            SurgeryOptions wide;
            wide.bound = x.bound + 2;
            CHECK(homology(build_cone(k, f, wide).plain) == homology(x.plain));
        }
    }
}

TEST_CASE("+1 surgery tower sits at -2 V_0 relative to the unknot") {
    auto tower = [](const KnotComplex& k) {
        auto h = homology(build_cone(knot(k), 1).plain);
        REQUIRE(h.towers.size() == 1);
        return h.towers[0].twice[0] / 2;
    };
    auto base = tower(fixtures::unknot());
    CHECK(tower(fixtures::trefoil()) - base == -2);
    CHECK(tower(fixtures::figure_eight()) - base == 0);
}

TEST_CASE("involutive cone of the unknot") {
    auto u = knot(fixtures::unknot());
    for (int n : {1, 2, -1}) {
        INFO("n = " << n);
        auto x = build_involutive_cone(u, n);
        REQUIRE(x.iota);
        auto rep = analyze_cone(x);
        CHECK(rep.d_squared_zero);
        CHECK(rep.homogeneous);
        CHECK(rep.iota_chain_map);
        CHECK(rep.length_two_relation);
        CHECK(rep.iota_squared_homotopic);
        // Two self-conjugate classes for framing 2n: 0 and n.
        CHECK(rep.self_conjugate_towers_level0 == 2);
        CHECK(rep.self_conjugate_towers_level1 == 2);
        CHECK(rep.self_conjugate_towers_total == 4);
        // Each self-conjugate class contributes two towers; each conjugate pair of classes, which
        // iota exchanges, contributes two between them.
        CHECK(oracle::towers_by_truncation(*underlying_u_complex(x.total)) == std::abs(2 * n) + 2);
    }
}

TEST_CASE("involutive cones of the trefoil and figure-eight") {
    for (auto k : {knot(fixtures::trefoil()), knot(fixtures::figure_eight())}) {
        for (int n : {1, -1, 2}) {
            INFO("n = " << n);
            auto x = build_involutive_cone(k, n);
            auto rep = analyze_cone(x);
            CHECK(rep.d_squared_zero);
            CHECK(rep.iota_chain_map);
            CHECK(rep.iota_squared_homotopic);
            for (const auto& [s, H] : x.H) CHECK(H.degree().twice[0] % 2 == 0);
            auto iu = underlying_u_complex(x.total);
            CHECK(oracle::truncated_dims(*iu, 6) == truncated_dimensions(homology(iu), 6));
        }
    }
}

TEST_CASE("the cobordism map J is a chain map") {
    for (auto k : {knot(fixtures::unknot()), knot(fixtures::trefoil()), knot(fixtures::figure_eight())}) {
        for (int n : {1, 2, -1}) {
            INFO("n = " << n);
            auto x = build_involutive_cone(k, n);
            auto J = cobordism_map_J(x);
            CHECK(validate_complex(*J.bi).ok());
            auto mr = validate_chain_map(J.J);
            CHECK(mr.ok());
            CHECK(commutator_with_d(J.J).is_zero());
        }
    }
    CHECK_THROWS_AS(cobordism_map_J(build_cone(knot(fixtures::unknot()), 2)), SurgeryError);
}

TEST_CASE("image profile of the identity is the truncated homology") {
    auto x = build_cone(knot(fixtures::trefoil()), 2);
    auto id = ChainMap::identity(x.plain);
    for (int delta : {1, 3, 6}) CHECK(image_profile(id, delta) == truncated_dimensions(homology(x.plain), delta));
    auto zero = ChainMap::zero(x.plain, x.plain, gen::maslov(0));
    for (const auto& [g, r] : image_profile(zero, 4)) CHECK(r == 0);
}

TEST_CASE("surgery input errors") {
    auto t = knot(fixtures::trefoil());
    CHECK_THROWS_AS(build_cone(t, 0), SurgeryError);
    CHECK_THROWS_AS(build_involutive_cone(t, 0), SurgeryError);
    SurgeryOptions tiny;
    tiny.bound = 1;  // trefoil has |A| up to 1
    CHECK_THROWS_AS(build_cone(t, 1, tiny), SurgeryError);
    SurgeryOptions narrow;
    narrow.bound = 2;
    CHECK_THROWS_AS(build_cone(t, 7, narrow), SurgeryError);
    CHECK_NOTHROW(build_cone(t, 5, narrow));
    auto link = knot(fixtures::trefoil_figure_eight_link());
    CHECK_THROWS_AS(build_cone(link, 1), SurgeryError);
}

TEST_CASE("cone bookkeeping") {
    auto x = build_cone(knot(fixtures::figure_eight()), 3);
    CHECK(x.classes() == 3);
    int total = 0;
    for (const auto& p : x.pieces) total += p.count;
    CHECK(total == x.plain->size());
    for (int s = -5; s <= 5; ++s) CHECK(x.spin_class(s) == ((s % 3) + 3) % 3);
    const auto* a0 = x.piece(FlagKind::A, 0);
    REQUIRE(a0);
    CHECK(x.generator_class(a0->offset) == 0);
    CHECK_FALSE(x.piece(FlagKind::A, x.bound + 1));

    // Restricting to one class keeps a subcomplex.
    std::vector<int> keep;
    for (int g = 0; g < x.plain->size(); ++g)
        if (x.generator_class(g) == 1) keep.push_back(g);
    auto sub = restrict_complex(x.plain, keep);
    CHECK(sub->size() == static_cast<int>(keep.size()));
    CHECK(validate_complex(*sub).ok());
}
