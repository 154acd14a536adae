#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "ahmd/nerve.hpp"
#include "support.hpp"

using namespace testing;

namespace {

PLFunction random_function(const Complex& c, Rng& rng)
{
    std::vector<double> values(c.vertex_count());
    for (auto& v : values)
        v = uniform_real(rng, -2.0, 2.0);
    return PLFunction(c, values);
}

/// A random cover with its subordinate partition at level 0, 1 or 2.
std::optional<PartitionOfUnity> random_partition(Rng& rng)
{
    const Cover a = random_cover(random_base(rng), rng, 4);
    return subordinate_partition(a, uniform(rng, 0, 2));
}

}  // namespace

TEST_CASE("subordinate partition examples")
{
    const Complex p = Complex::path(3);
    const auto whole = subordinate_partition(Cover::trivial(p), 0);
    REQUIRE(whole.functions.size() == 1);
    CHECK(whole.functions[0] == PLFunction::constant(p, 1.0));

    // every vertex except the right end has its star inside the left element
    const Cover two(p, {open_star(p, {0, 1}), open_star(p, {1, 2})});
    CHECK_THROWS_AS(subordinate_partition(two, -1), ValidationError);
    const auto split = subordinate_partition(two, 1);
    const Complex& k = split.subdivision.complex;
    REQUIRE(k.vertex_count() == 5);
    std::vector<double> left(5);
    std::vector<double> right(5);
    for (Vertex v = 0; v < 5; ++v) {
        double x = 0.0;
        for (auto [b, w] : split.subdivision.coordinates[v])
            x += w * b;
        left[v] = x < 2.0 ? 1.0 : 0.0;
        right[v] = 1.0 - left[v];
    }
    CHECK(split.functions[0] == PLFunction(k, left));
    CHECK(split.functions[1] == PLFunction(k, right));

    const Complex tri = Complex::full_simplex(2);
    const auto stars = subordinate_partition(Cover::vertex_stars(tri), 0);
    for (Vertex u = 0; u < 3; ++u)
        for (Vertex v = 0; v < 3; ++v)
            CHECK(stars.functions[u](v) == (u == v ? 1.0 : 0.0));
}

TEST_CASE("verify_partition rejects broken partitions")
{
    const Complex p = Complex::path(3);
    auto part = subordinate_partition(Cover::vertex_stars(p), 0);
    auto broken = part;
    broken.functions[0] = PLFunction(p, {0.5, 0.0, 0.0});
    CHECK_THROWS_AS(verify_partition(broken), InvariantViolation);
    broken = part;
    broken.functions[0] = PLFunction(p, {1.0, 0.5, 0.0});
    broken.functions[1] = PLFunction(p, {0.0, 0.5, 0.0});
    CHECK_THROWS_AS(verify_partition(broken), InvariantViolation);
}

TEST_CASE("theta examples")
{
    const Complex c = Complex::cycle(4);
    const auto part = subordinate_partition(Cover::vertex_stars(c), 1);
    const Complex& k = part.subdivision.complex;
    CHECK(theta(part, PLFunction::constant(k, 3.5)) == PLFunction::constant(k, 3.5));

    const auto whole = subordinate_partition(Cover::trivial(c), 1);
    const PLFunction f(k, {4, 3, 2, 1, 0, 0, 0, 0});
    CHECK(theta(whole, f) == PLFunction::constant(k, f(whole.anchors[0])));
    CHECK_THROWS_AS(theta(whole, PLFunction::constant(c, 1.0)), ValidationError);
}

TEST_CASE("property: theta error is bounded by the element oscillation")
{
    Rng rng(61);
    int checked = 0;
    for (int t = 0; t < 150; ++t) {
        const auto part = random_partition(rng);
        if (!part)
            continue;
        const Complex& k = part->subdivision.complex;
        const PLFunction f = random_function(k, rng);
        double bound = 0.0;
        for (const auto& u : part->cover.elements())
            bound = std::max(bound, f.oscillation_on(u.members()));
        const Subdivision fine = subdivide(k, 2);
        const PLFunction tf = fine.lift(theta(*part, f));
        const PLFunction ff = fine.lift(f);
        for (Vertex v = 0; v < fine.complex.vertex_count(); ++v)
            CHECK(std::abs(tf(v) - ff(v)) <= bound + 1e-12);
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("property: theta is linear and positive")
{
    Rng rng(62);
    for (int t = 0; t < 100; ++t) {
        const auto part = random_partition(rng);
        if (!part)
            continue;
        const Complex& k = part->subdivision.complex;
        const PLFunction f = random_function(k, rng);
        const PLFunction g = random_function(k, rng);
        std::vector<double> sum(k.vertex_count());
        std::vector<double> positive(k.vertex_count());
        for (Vertex v = 0; v < k.vertex_count(); ++v) {
            sum[v] = f(v) + g(v);
            positive[v] = std::abs(f(v));
        }
        const PLFunction ts = theta(*part, PLFunction(k, sum));
        const PLFunction tf = theta(*part, f);
        const PLFunction tg = theta(*part, g);
        const PLFunction tp = theta(*part, PLFunction(k, positive));
        for (Vertex v = 0; v < k.vertex_count(); ++v) {
            CHECK(ts(v) == doctest::Approx(tf(v) + tg(v)));
            CHECK(tp(v) >= 0.0);
        }
    }
}

TEST_CASE("nerve examples")
{
    const Complex c = Complex::cycle(4);
    const auto point = nerve(Cover::trivial(c));
    CHECK(point.dimension == 0);
    CHECK(point.nerve.vertex_count() == 1);

    // three arcs on a six-cycle, pairwise overlapping in one vertex star
    const Complex six = Complex::cycle(6);
    const Cover arcs(six, {open_star(six, {0, 1, 2}), open_star(six, {2, 3, 4}), open_star(six, {4, 5, 0})});
    const auto n = nerve(arcs);
    CHECK(n.dimension == 1);
    CHECK(n.nerve == Complex::simplex_boundary(2));
}

TEST_CASE("property: nerve simplices are the subfamilies with a common simplex")
{
    Rng rng(63);
    for (int t = 0; t < 200; ++t) {
        const Cover a = random_cover(random_base(rng), rng, 5);
        const auto n = nerve(a);
        CHECK(n.dimension == ord(a));
        CHECK(n.nerve.vertex_count() == static_cast<int>(a.size()));
        const int m = static_cast<int>(a.size());
        for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
            SimplexSet common = a.complex().all();
            Simplex s;
            for (int e = 0; e < m; ++e)
                if (mask >> e & 1u) {
                    common &= a[e].members();
                    s.push_back(e);
                }
            CHECK(n.nerve.find(s).has_value() == !common.empty());
        }
    }
}

TEST_CASE("nerve map")
{
    const Complex p = Complex::path(3);
    const auto whole = nerve_map(subordinate_partition(Cover::trivial(p), 1));
    for (const auto& coords : whole)
        CHECK(coords == std::vector<std::pair<int, double>>{{0, 1.0}});

    const auto part = subordinate_partition(Cover(p, {open_star(p, {0, 1}), open_star(p, {1, 2})}), 2);
    const auto xi = nerve_map(part);
    std::set<int> seen;
    for (const auto& coords : xi) {
        double total = 0.0;
        for (auto [u, w] : coords) {
            CHECK(w > 0.0);
            seen.insert(u);
            total += w;
        }
        CHECK(total == doctest::Approx(1.0));
    }
    CHECK(seen == std::set<int>{0, 1});
    CHECK_THROWS_AS(nerve_extension({1.0}, {{1, 1.0}}), ValidationError);
}

TEST_CASE("property: theta factors through the nerve")
{
    Rng rng(64);
    for (int t = 0; t < 150; ++t) {
        const auto part = random_partition(rng);
        if (!part)
            continue;
        const Complex& k = part->subdivision.complex;
        const PLFunction f = random_function(k, rng);
        std::vector<double> at_anchor;
        for (Vertex v : part->anchors)
            at_anchor.push_back(f(v));
        const auto xi = nerve_map(*part);
        const auto n = nerve(part->cover);
        const PLFunction tf = theta(*part, f);
        for (Vertex v = 0; v < k.vertex_count(); ++v) {
            Simplex support;
            for (auto [u, w] : xi[v])
                support.push_back(u);
            CHECK(n.nerve.find(support).has_value());
            CHECK(nerve_extension(at_anchor, xi[v]) == doctest::Approx(tf(v)));
        }
    }
}
