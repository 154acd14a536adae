#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <tuple>

#include "support.hpp"

using namespace testing;

namespace {

using LegKey = std::tuple<int, std::vector<Vertex>, int>;

std::multiset<LegKey> keys(const std::vector<Leg>& legs)
{
    std::multiset<LegKey> out;
    for (const Leg& l : legs)
        out.insert({l.source, l.map.vertex_image(), l.projection.rank});
    return out;
}

/// Every chain of stored legs from stage i into block (j, k), composed by hand.
std::vector<Leg> chains(const AHSystem& sys, int i, int j, int k)
{
    if (j == i)
        return {Leg{k, SimplicialMap::identity(sys.block(i, k).space), ProjectionClass{}}};
    std::vector<Leg> out;
    for (const Leg& last : sys.map(j - 1).legs[k])
        for (const Leg& inner : chains(sys, i, j - 1, last.source)) {
            std::vector<Vertex> image;
            for (Vertex v = 0; v < sys.block(j, k).space.vertex_count(); ++v)
                image.push_back(inner.map(last.map(v)));
            out.push_back(Leg{inner.source,
                              SimplicialMap(sys.block(j, k).space, sys.block(i, inner.source).space, image),
                              ProjectionClass{"q", inner.projection.rank * last.projection.rank}});
        }
    return out;
}

int identity_legs(const DiagonalMap& m, int k)
{
    int n = 0;
    for (const Leg& l : m.legs[k])
        n += l.map.is_identity() ? 1 : 0;
    return n;
}

AHSystem shuffled(const AHSystem& sys, Rng& rng)
{
    auto maps = sys.maps();
    for (auto& m : maps)
        for (auto& legs : m.legs)
            std::shuffle(legs.begin(), legs.end(), rng);
    return AHSystem(sys.stages(), maps);
}

}  // namespace

TEST_CASE("system validation")
{
    const Complex p = Complex::path(3);
    const Complex two = Complex::from_facets(2, {{0}, {1}});
    CHECK_THROWS_AS(AHSystem({{Block{two, 1}}}, {}), ValidationError);
    CHECK_THROWS_AS(AHSystem({}, {}), ValidationError);
    CHECK_THROWS_AS(AHSystem({{Block{p, 0}}}, {}), ValidationError);

    DiagonalMap m;
    m.legs = {{Leg{0, SimplicialMap::identity(p), {}}}};
    try {
        AHSystem({{Block{p, 1}}, {Block{p, 2}}}, {m});
        FAIL("expected a unitality error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("unitality") != std::string::npos);
    }
    DiagonalMap wrong;
    wrong.legs = {{Leg{0, SimplicialMap::identity(Complex::cycle(3)), {}}}};
    CHECK_THROWS_AS(AHSystem({{Block{p, 1}}, {Block{p, 1}}}, {wrong}), ValidationError);
    DiagonalMap bad_source;
    bad_source.legs = {{Leg{1, SimplicialMap::identity(p), {}}}};
    CHECK_THROWS_AS(AHSystem({{Block{p, 1}}, {Block{p, 1}}}, {bad_source}), ValidationError);
}

TEST_CASE("goodearl builder")
{
    const AHSystem g = build_goodearl({4, 4, 4}, {0, 1, 2}, 4);
    REQUIRE(g.stage_count() == 4);
    std::vector<int> sizes;
    for (int s = 0; s < 4; ++s)
        sizes.push_back(g.block(s, 0).size);
    CHECK(sizes == std::vector<int>{1, 4, 16, 64});
    CHECK(g.block(0, 0).space.vertex_count() == 5);

    const AHSystem two = build_goodearl({2}, {3}, 4);
    REQUIRE(two.map(0).legs[0].size() == 2);
    CHECK(two.map(0).legs[0][0].map.is_identity());
    CHECK(two.map(0).legs[0][1].map.is_constant());
    CHECK(two.map(0).legs[0][1].map(0) == 3);

    CHECK_THROWS_AS(build_goodearl({1}, {0}, 4), ValidationError);
    CHECK_THROWS_AS(build_goodearl({3}, {5}, 4), ValidationError);
    CHECK_THROWS_AS(build_goodearl({3, 3}, {0}, 4), ValidationError);
}

TEST_CASE("goodearl composition counts")
{
    const AHSystem g = build_goodearl({4, 4, 4}, {0, 0, 0}, 4);
    CHECK(compose_maps(g, 0, 1) == g.map(0));
    const DiagonalMap m13 = compose_maps(g, 1, 3);
    CHECK(m13.multiplicity(0) == 16);
    CHECK(identity_legs(m13, 0) == 9);
    const DiagonalMap m03 = compose_maps(g, 0, 3);
    CHECK(m03.multiplicity(0) == 64);
    CHECK(identity_legs(m03, 0) == 27);
    CHECK_THROWS_AS(compose_maps(g, 2, 1), ValidationError);
    CHECK_THROWS_AS(compose_maps(g, 0, 4), ValidationError);
}

TEST_CASE("property: composition matches hand-built leg chains")
{
    Rng rng(31);
    for (int t = 0; t < 100; ++t) {
        SystemShape shape;
        shape.max_rank = 2;
        const AHSystem sys = random_system(rng, shape);
        const int j = sys.stage_count() - 1;
        for (int i = 0; i < j; ++i) {
            const DiagonalMap m = compose_maps(sys, i, j);
            for (int k = 0; k < static_cast<int>(sys.stage(j).size()); ++k) {
                CHECK(keys(m.legs[k]) == keys(chains(sys, i, j, k)));
                CHECK(keys(legs_between(sys, i, j, k)) == keys(m.legs[k]));
                long long total = 0;
                int per_source = 0;
                for (const Leg& l : m.legs[k])
                    total += static_cast<long long>(l.projection.rank) * sys.block(i, l.source).size;
                for (int l = 0; l < static_cast<int>(sys.stage(i).size()); ++l)
                    per_source += m.multiplicity(l, k);
                CHECK(total == sys.block(j, k).size);
                CHECK(per_source == m.multiplicity(k));
            }
        }
    }
}

TEST_CASE("single-block leg counts multiply")
{
    Rng rng(32);
    for (int t = 0; t < 30; ++t) {
        std::vector<int> m(uniform(rng, 1, 4));
        for (auto& x : m)
            x = uniform(rng, 2, 4);
        const AHSystem g = build_goodearl(m, std::vector<int>(m.size(), 1), 3);
        int product = 1;
        for (int x : m)
            product *= x;
        CHECK(compose_maps(g, 0, static_cast<int>(m.size())).multiplicity(0) == product);
    }
}

TEST_CASE("labels compose and ranks multiply")
{
    const Complex p = Complex::path(2);
    DiagonalMap a;
    a.legs = {{Leg{0, SimplicialMap::identity(p), {"p", 2}}}};
    DiagonalMap b;
    b.legs = {{Leg{0, SimplicialMap::identity(p), {"q", 3}}}};
    const AHSystem sys({{Block{p, 1}}, {Block{p, 2}}, {Block{p, 6}}}, {a, b});
    const DiagonalMap m = compose_maps(sys, 0, 2);
    REQUIRE(m.legs[0].size() == 1);
    CHECK(m.legs[0][0].projection.label == "p.q");
    CHECK(m.legs[0][0].projection.rank == 6);
    const auto self = legs_between(sys, 1, 1, 0);
    REQUIRE(self.size() == 1);
    CHECK(self[0].map.is_identity());
}

TEST_CASE("pullback stage cover")
{
    const Complex p = Complex::path(4);
    const Cover a = Cover::vertex_stars(p);
    DiagonalMap id;
    id.legs = {{Leg{0, SimplicialMap::identity(p), {}}}};
    const AHSystem one({{Block{p, 1}}, {Block{p, 1}}}, {id});
    CHECK(pullback_stage_cover(one, 0, 1, 0, {a}) == a);

    DiagonalMap two;
    two.legs = {{Leg{0, SimplicialMap::identity(p), {}}, Leg{0, SimplicialMap::constant(p, p, 1), {}}}};
    const AHSystem sys({{Block{p, 1}}, {Block{p, 2}}}, {two});
    const Cover pulled = pullback_stage_cover(sys, 0, 1, 0, {a});
    const Cover expected = join(a, pullback_cover(SimplicialMap::constant(p, p, 1), a));
    CHECK(equivalent(pulled, expected));
    // the constant leg contributes one element covering everything
    CHECK(ord(pulled) == ord(a));
    for (SimplexId id = 0; id < static_cast<SimplexId>(p.size()); ++id) {
        int count = 0;
        for (const auto& u : a.elements())
            count += u.contains(id) ? 1 : 0;
        CHECK(static_cast<int>(pulled.members_at(id).size()) == count);
    }
    CHECK_THROWS_AS(pullback_stage_cover(sys, 0, 1, 0, {Cover::trivial(Complex::cycle(3))}), ValidationError);
    CHECK_THROWS_AS(pullback_stage_cover(sys, 0, 1, 0, {a, a}), ValidationError);
}

TEST_CASE("property: iterated pullback agrees with the composed pullback")
{
    Rng rng(33);
    for (int t = 0; t < 100; ++t) {
        const AHSystem sys = random_system(rng);
        const StageCover a = random_stage_cover(sys, 0, rng, 3);
        const int j = sys.stage_count() - 1;
        const auto iterated = pulled_back_stage(sys, 0, j, a);
        for (int k = 0; k < static_cast<int>(sys.stage(j).size()); ++k)
            CHECK(equivalent(iterated[k], pullback_stage_cover(sys, 0, j, k, a)));
    }
}

TEST_CASE("property: stage bound on pulled-back covers")
{
    Rng rng(34);
    for (int t = 0; t < 150; ++t) {
        SystemShape shape;
        shape.max_rank = 2;
        const AHSystem sys = random_system(rng, shape);
        const StageCover a = random_stage_cover(sys, 0, rng, 3);
        const int j = sys.stage_count() - 1;
        Rational base;
        std::vector<int> da;
        for (int l = 0; l < static_cast<int>(a.size()); ++l) {
            const auto r = refinement_dimension(a[l], 0, 1'000'000);
            REQUIRE(r.exact);
            da.push_back(r.value);
            base = std::max(base, Rational(r.value, sys.block(0, l).size));
        }
        for (int k = 0; k < static_cast<int>(sys.stage(j).size()); ++k) {
            const Cover pulled = pullback_stage_cover(sys, 0, j, k, a);
            const auto r = refinement_dimension(pulled, 0, 1'000'000);
            REQUIRE(r.exact);
            CHECK(Rational(r.value, sys.block(j, k).size) <= base);
            // the join of the per-leg pullbacks has order below the product bound
            long long product = 1;
            for (const Leg& leg : legs_between(sys, 0, j, k))
                product *= ord(a[leg.source]) + 1;
            CHECK(ord(pulled) + 1 <= product);
        }
    }
}

TEST_CASE("mean dimension sequence")
{
    SUBCASE("identity legs with the trivial cover give zeros")
    {
        const Complex c = Complex::cycle(4);
        DiagonalMap id;
        id.legs = {{Leg{0, SimplicialMap::identity(c), {}}, Leg{0, SimplicialMap::identity(c), {}}}};
        const AHSystem sys({{Block{c, 1}}, {Block{c, 2}}, {Block{c, 4}}}, {id, id});
        const auto est = mean_dimension_sequence(sys, 0, {Cover::trivial(c)}, 2, 1, 1'000'000);
        CHECK(est.all_exact);
        for (const auto& s : est.stages)
            CHECK(s.max_ratio == Rational(0));
    }
    SUBCASE("a single identity leg keeps the sequence constant")
    {
        const Complex c = Complex::cycle(5);
        DiagonalMap id;
        id.legs = {{Leg{0, SimplicialMap::identity(c), {}}}};
        const AHSystem sys({{Block{c, 3}}, {Block{c, 3}}, {Block{c, 3}}}, {id, id});
        const auto est = mean_dimension_sequence(sys, 0, {Cover::vertex_stars(c)}, 2, 1, 1'000'000);
        for (const auto& s : est.stages)
            CHECK(s.max_ratio == Rational(1, 3));
    }
    SUBCASE("goodearl values stay below one over the matrix size")
    {
        const AHSystem g = build_goodearl({3, 2, 4}, {0, 4, 2}, 4);
        Rng rng(35);
        for (int t = 0; t < 10; ++t) {
            const Cover a = random_cover(g.block(0, 0).space, rng, 4);
            const auto est = mean_dimension_sequence(g, 0, {a}, 3, 1, 1'000'000);
            CHECK(est.all_exact);
            CHECK(est.non_increasing);
            for (const auto& s : est.stages)
                CHECK(s.max_ratio <= Rational(1, g.block(s.stage, 0).size));
        }
    }
    SUBCASE("truncation at the base stage")
    {
        Rng rng(36);
        const AHSystem sys = random_system(rng);
        const StageCover a = random_stage_cover(sys, 0, rng, 3);
        const auto est = mean_dimension_sequence(sys, 0, a, 0, 0, 1'000'000);
        REQUIRE(est.stages.size() == 1);
        Rational expected;
        for (int l = 0; l < static_cast<int>(a.size()); ++l)
            expected = std::max(expected,
                                Rational(refinement_dimension(a[l], 0, 1'000'000).value, sys.block(0, l).size));
        CHECK(est.stages[0].max_ratio == expected);
    }
    SUBCASE("bad truncation")
    {
        const AHSystem g = build_goodearl({2}, {0}, 2);
        CHECK_THROWS_AS(mean_dimension_sequence(g, 0, {Cover::trivial(g.block(0, 0).space)}, 2, 0, 10),
                        ValidationError);
    }
}

TEST_CASE("property: values do not depend on leg order")
{
    Rng rng(37);
    for (int t = 0; t < 60; ++t) {
        const AHSystem sys = random_system(rng);
        const StageCover a = random_stage_cover(sys, 0, rng, 3);
        const int j = sys.stage_count() - 1;
        const auto x = mean_dimension_sequence(sys, 0, a, j, 0, 1'000'000);
        const auto y = mean_dimension_sequence(shuffled(sys, rng), 0, a, j, 0, 1'000'000);
        for (std::size_t s = 0; s < x.stages.size(); ++s)
            for (std::size_t k = 0; k < x.stages[s].blocks.size(); ++k)
                CHECK(x.stages[s].blocks[k].value == y.stages[s].blocks[k].value);
    }
}

TEST_CASE("ah model builder")
{
    const Complex c = Complex::cycle(5);
    const SimplicialMap rot(c, c, {1, 2, 3, 4, 0});
    const AHSystem sys = build_ah_model(rot, 4);
    REQUIRE(sys.stage_count() == 4);
    for (int s = 0; s < 4; ++s)
        CHECK(sys.block(s, 0).size == (1 << s));
    for (int s = 0; s < 3; ++s) {
        REQUIRE(sys.map(s).legs[0].size() == 2);
        CHECK(sys.map(s).legs[0][0].map.is_identity());
        CHECK(sys.map(s).legs[0][1].map == rot);
    }
    CHECK_THROWS_AS(build_ah_model(SimplicialMap::identity(Complex::path(2)), 0), ValidationError);
}
