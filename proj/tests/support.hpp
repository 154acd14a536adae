#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ahmd/ah_system.hpp"
#include "ahmd/cover.hpp"

namespace testing {

using namespace ahmd;

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double uniform_real(Rng& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Path, cycle or triangle, at most two-dimensional.
inline Complex random_base(Rng& rng)
{
    switch (uniform(rng, 0, 3)) {
    case 0:
        return Complex::path(uniform(rng, 2, 4));
    case 1:
        return Complex::cycle(uniform(rng, 3, 5));
    case 2:
        return Complex::full_simplex(2);
    default:
        return Complex::simplex_boundary(2);
    }
}

inline SimplexSet star_of(const Complex& c, Vertex v)
{
    return c.cofaces(v);
}

inline OpenSet random_open_set(const Complex& c, Rng& rng)
{
    SimplexSet s = c.none();
    for (int n = uniform(rng, 1, 2); n > 0; --n)
        s.set(uniform(rng, 0, static_cast<int>(c.size()) - 1));
    return OpenSet(c, c.up_closure(s));
}

/// Random open sets patched so every vertex lies in one of them.
inline Cover random_cover(const Complex& c, Rng& rng, int max_elements)
{
    const int n = uniform(rng, 1, max_elements);
    std::vector<SimplexSet> sets;
    for (int e = 0; e < n; ++e)
        sets.push_back(random_open_set(c, rng).members());
    for (Vertex v = 0; v < c.vertex_count(); ++v) {
        bool covered = false;
        for (const auto& s : sets)
            covered = covered || s.test(v);
        if (!covered)
            sets[uniform(rng, 0, n - 1)] |= star_of(c, v);
    }
    std::vector<OpenSet> elements;
    for (auto& s : sets)
        elements.emplace_back(c, s);
    return Cover(c, std::move(elements));
}

/// Does the vertex assignment send every simplex onto a simplex?
inline bool is_simplicial(const Complex& domain, const Complex& codomain, const std::vector<Vertex>& image)
{
    for (SimplexId id = 0; id < static_cast<SimplexId>(domain.size()); ++id) {
        Simplex s;
        for (Vertex v : domain.simplex(id))
            s.push_back(image[v]);
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        if (!codomain.find(s))
            return false;
    }
    return true;
}

inline SimplicialMap random_map(const Complex& domain, const Complex& codomain, Rng& rng)
{
    for (int attempt = 0; attempt < 60; ++attempt) {
        std::vector<Vertex> image(domain.vertex_count());
        for (auto& v : image)
            v = uniform(rng, 0, codomain.vertex_count() - 1);
        if (is_simplicial(domain, codomain, image))
            return SimplicialMap(domain, codomain, image);
    }
    return SimplicialMap::constant(domain, codomain, uniform(rng, 0, codomain.vertex_count() - 1));
}

struct SystemShape {
    int max_blocks = 3;
    int max_stages = 4;
    int max_legs = 3;
    int max_rank = 1;
    bool common_label = true;
};

/// Random diagonal system; sizes follow from unitality.
inline AHSystem random_system(Rng& rng, const SystemShape& shape = {})
{
    const int stage_count = uniform(rng, 2, shape.max_stages);
    std::vector<std::vector<Block>> stages(1);
    for (int b = uniform(rng, 1, shape.max_blocks); b > 0; --b)
        stages[0].push_back(Block{random_base(rng), uniform(rng, 1, 2)});
    std::vector<DiagonalMap> maps;
    for (int s = 1; s < stage_count; ++s) {
        const auto& prev = stages.back();
        std::vector<Block> next;
        DiagonalMap map;
        for (int b = uniform(rng, 1, shape.max_blocks); b > 0; --b) {
            Block block{random_base(rng), 0};
            std::vector<Leg> legs;
            for (int l = uniform(rng, 1, shape.max_legs); l > 0; --l) {
                const int source = uniform(rng, 0, static_cast<int>(prev.size()) - 1);
                ProjectionClass pc;
                pc.rank = uniform(rng, 1, shape.max_rank);
                if (!shape.common_label)
                    pc.label = std::string(1, static_cast<char>('p' + uniform(rng, 0, 1))) + std::to_string(pc.rank);
                legs.push_back(Leg{source, random_map(block.space, prev[source].space, rng), pc});
                block.size += pc.rank * prev[source].size;
            }
            next.push_back(block);
            map.legs.push_back(std::move(legs));
        }
        stages.push_back(std::move(next));
        maps.push_back(std::move(map));
    }
    return AHSystem(std::move(stages), std::move(maps));
}

inline StageCover random_stage_cover(const AHSystem& sys, int i, Rng& rng, int max_elements)
{
    StageCover a;
    for (const Block& b : sys.stage(i))
        a.push_back(random_cover(b.space, rng, max_elements));
    return a;
}

/// Order of a family of simplex sets: largest membership count minus one.
inline int brute_order(const Complex& c, const std::vector<SimplexSet>& sets)
{
    int best = 0;
    for (SimplexId id = 0; id < static_cast<SimplexId>(c.size()); ++id) {
        int n = 0;
        for (const auto& s : sets)
            n += s.test(id) ? 1 : 0;
        best = std::max(best, n);
    }
    return best - 1;
}

/// Refinement dimension at level 0 by enumerating every map sending each
/// simplex to an element containing it; element i of the shrinking is the
/// up-closure of the simplices sent to i.
inline int naive_refinement_dimension(const Cover& a)
{
    const Complex& c = a.complex();
    const int n = static_cast<int>(c.size());
    std::vector<std::vector<int>> options(n);
    for (SimplexId id = 0; id < n; ++id)
        for (std::size_t e = 0; e < a.size(); ++e)
            if (a[e].contains(id))
                options[id].push_back(static_cast<int>(e));
    std::vector<int> pick(n, 0);
    int best = static_cast<int>(a.size());
    while (true) {
        std::vector<SimplexSet> sets(a.size(), c.none());
        for (SimplexId id = 0; id < n; ++id)
            sets[options[id][pick[id]]].set(id);
        for (auto& s : sets)
            s = c.up_closure(s);
        best = std::min(best, brute_order(c, sets));
        int pos = 0;
        while (pos < n && ++pick[pos] == static_cast<int>(options[pos].size()))
            pick[pos++] = 0;
        if (pos == n)
            break;
    }
    return best;
}

/// Every up-closed nonempty subset of a small complex.
inline std::vector<SimplexSet> all_open_sets(const Complex& c)
{
    std::vector<SimplexSet> out;
    const int n = static_cast<int>(c.size());
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        SimplexSet s = c.none();
        for (int b = 0; b < n; ++b)
            if (mask >> b & 1u)
                s.set(b);
        if (c.is_up_closed(s))
            out.push_back(s);
    }
    return out;
}

/// Calls fn on every cover by at most `max_elements` distinct open sets,
/// none contained in another.
inline void for_each_antichain_cover(const Complex& c, int max_elements, const std::function<void(const Cover&)>& fn)
{
    const auto opens = all_open_sets(c);
    std::vector<int> chosen;
    std::function<void(int)> grow = [&](int from) {
        if (!chosen.empty()) {
            SimplexSet u = c.none();
            for (int k : chosen)
                u |= opens[k];
            if (u == c.all()) {
                std::vector<OpenSet> elements;
                for (int k : chosen)
                    elements.emplace_back(c, opens[k]);
                fn(Cover(c, std::move(elements)));
            }
        }
        if (static_cast<int>(chosen.size()) == max_elements)
            return;
        for (int k = from; k < static_cast<int>(opens.size()); ++k) {
            bool comparable = false;
            for (int q : chosen)
                comparable = comparable || opens[k].subset_of(opens[q]) || opens[q].subset_of(opens[k]);
            if (comparable)
                continue;
            chosen.push_back(k);
            grow(k + 1);
            chosen.pop_back();
        }
    };
    grow(0);
}

}  // namespace testing
