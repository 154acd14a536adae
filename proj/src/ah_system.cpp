#include "ahmd/ah_system.hpp"

#include <string>

#include "ahmd/parallel.hpp"

namespace ahmd {

namespace {

std::string where(int stage, int block)
{
    return "stages[" + std::to_string(stage) + "][" + std::to_string(block) + "]";
}

Cover join_reduced(const Cover& a, const Cover& b) { return reduced(join(a, b)); }

}  // namespace

int DiagonalMap::multiplicity(int source, int target) const
{
    int n = 0;
    for (const auto& leg : legs.at(target))
        n += leg.source == source ? 1 : 0;
    return n;
}

AHSystem::AHSystem(std::vector<std::vector<Block>> stages, std::vector<DiagonalMap> maps)
    : stages_(std::move(stages)), maps_(std::move(maps))
{
    require(!stages_.empty(), "system needs at least one stage");
    require(maps_.size() + 1 == stages_.size(), "system needs exactly one connecting map between consecutive stages");
    for (int i = 0; i < stage_count(); ++i) {
        require(!stages_[i].empty(), "stages[" + std::to_string(i) + "] has no blocks");
        for (int l = 0; l < static_cast<int>(stages_[i].size()); ++l) {
            const Block& b = stages_[i][l];
            require(b.size >= 1, where(i, l) + ": matrix size must be positive");
            require(b.space.vertex_count() > 0 && b.space.component_count() == 1,
                    where(i, l) + ": block space must be connected");
        }
    }
    for (int i = 0; i + 1 < stage_count(); ++i) {
        const DiagonalMap& m = maps_[i];
        const std::string name = "maps[" + std::to_string(i) + "]";
        require(m.legs.size() == stages_[i + 1].size(), name + ": needs one leg list per target block");
        for (int k = 0; k < static_cast<int>(m.legs.size()); ++k) {
            long long total = 0;
            for (const auto& leg : m.legs[k]) {
                require(leg.source >= 0 && leg.source < static_cast<int>(stages_[i].size()),
                        name + ": leg source block out of range");
                require(leg.map.domain() == stages_[i + 1][k].space,
                        name + ": leg domain must be the target block space");
                require(leg.map.codomain() == stages_[i][leg.source].space,
                        name + ": leg codomain must be the source block space");
                require(leg.projection.rank >= 1, name + ": projection rank must be positive");
                total += static_cast<long long>(leg.projection.rank) * stages_[i][leg.source].size;
            }
            require(total == stages_[i + 1][k].size,
                    name + ": unitality violated for target block " + std::to_string(k) + " (size " +
                        std::to_string(stages_[i + 1][k].size) + ", legs account for " + std::to_string(total) + ")");
        }
    }
}

const std::vector<Block>& AHSystem::stage(int i) const
{
    require(i >= 0 && i < stage_count(), "stage index " + std::to_string(i) + " out of range");
    return stages_[i];
}

const Block& AHSystem::block(int i, int l) const
{
    const auto& s = stage(i);
    require(l >= 0 && l < static_cast<int>(s.size()), "block index " + std::to_string(l) + " out of range");
    return s[l];
}

const DiagonalMap& AHSystem::map(int i) const
{
    require(i >= 0 && i + 1 < stage_count(), "connecting map index " + std::to_string(i) + " out of range");
    return maps_[i];
}

DiagonalMap compose_maps(const AHSystem& sys, int i, int j)
{
    require(i >= 0 && j < sys.stage_count() && i < j, "compose_maps needs 0 <= i < j < stage count");
    DiagonalMap acc = sys.map(i);
    for (int step = i + 1; step < j; ++step) {
        const DiagonalMap& next = sys.map(step);
        DiagonalMap composed;
        composed.legs.resize(next.legs.size());
        for (std::size_t k = 0; k < next.legs.size(); ++k)
            for (const Leg& outer : next.legs[k])
                for (const Leg& inner : acc.legs[outer.source]) {
                    Leg leg;
                    leg.source = inner.source;
                    leg.map = inner.map.after(outer.map);
                    leg.projection.label = inner.projection.label + "." + outer.projection.label;
                    leg.projection.rank = inner.projection.rank * outer.projection.rank;
                    composed.legs[k].push_back(std::move(leg));
                }
        acc = std::move(composed);
    }
    return acc;
}

std::vector<Leg> legs_between(const AHSystem& sys, int i, int j, int k)
{
    require(i >= 0 && i <= j && j < sys.stage_count(), "legs_between needs 0 <= i <= j < stage count");
    if (i == j) {
        const Block& b = sys.block(i, k);
        return {Leg{k, SimplicialMap::identity(b.space), ProjectionClass{}}};
    }
    const DiagonalMap m = compose_maps(sys, i, j);
    require(k >= 0 && k < static_cast<int>(m.legs.size()), "target block index out of range");
    return m.legs[k];
}

void validate_stage_cover(const AHSystem& sys, int i, const StageCover& a)
{
    const auto& blocks = sys.stage(i);
    require(a.size() == blocks.size(), "stage cover needs one cover per block of stage " + std::to_string(i));
    for (std::size_t l = 0; l < blocks.size(); ++l)
        require_same_complex(a[l].complex(), blocks[l].space, "stage cover block");
}

Cover pullback_stage_cover(const AHSystem& sys, int i, int j, int k, const StageCover& a)
{
    validate_stage_cover(sys, i, a);
    const auto legs = legs_between(sys, i, j, k);
    Cover result = Cover::trivial(sys.block(j, k).space);
    for (const Leg& leg : legs)
        result = join(result, pullback_cover(leg.map, a[leg.source]));
    return result;
}

std::vector<Cover> pulled_back_stage(const AHSystem& sys, int i, int j, const StageCover& a)
{
    validate_stage_cover(sys, i, a);
    require(j >= i && j < sys.stage_count(), "target stage out of range");
    std::vector<Cover> current;
    for (const auto& c : a)
        current.push_back(reduced(c));
    for (int step = i; step < j; ++step) {
        const DiagonalMap& m = sys.map(step);
        std::vector<Cover> next;
        for (std::size_t k = 0; k < m.legs.size(); ++k) {
            Cover acc = Cover::trivial(sys.block(step + 1, static_cast<int>(k)).space);
            for (const Leg& leg : m.legs[k])
                acc = join_reduced(acc, pullback_cover(leg.map, current[leg.source]));
            next.push_back(std::move(acc));
        }
        current = std::move(next);
    }
    return current;
}

MeanDimEstimate mean_dimension_sequence(const AHSystem& sys, int i, const StageCover& a, int last_stage, int level,
                                        std::uint64_t budget)
{
    validate_stage_cover(sys, i, a);
    require(last_stage >= i && last_stage < sys.stage_count(), "truncation stage must satisfy i <= J < stage count");
    require(budget > 0, "search budget must be positive");

    MeanDimEstimate est;
    est.base_stage = i;
    est.level = level;

    struct Job {
        int stage;
        int block;
        Cover cover;
    };
    std::vector<Job> jobs;
    std::vector<Cover> current;
    for (const auto& c : a)
        current.push_back(reduced(c));
    for (int j = i; j <= last_stage; ++j) {
        if (j > i) {
            const DiagonalMap& m = sys.map(j - 1);
            std::vector<Cover> next;
            for (std::size_t k = 0; k < m.legs.size(); ++k) {
                Cover acc = Cover::trivial(sys.block(j, static_cast<int>(k)).space);
                for (const Leg& leg : m.legs[k])
                    acc = join_reduced(acc, pullback_cover(leg.map, current[leg.source]));
                next.push_back(std::move(acc));
            }
            current = std::move(next);
        }
        for (std::size_t k = 0; k < current.size(); ++k)
            jobs.push_back({j, static_cast<int>(k), current[k]});
    }

    std::vector<BlockEstimate> results(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t n) {
        const Job& job = jobs[n];
        const auto r = refinement_dimension(job.cover, level, budget);
        BlockEstimate& b = results[n];
        b.block = job.block;
        b.value = r.value;
        b.size = sys.block(job.stage, job.block).size;
        b.ratio = Rational(r.value, b.size);
        b.exact = r.exact;
        b.nodes = r.nodes;
        b.cover_elements = static_cast<int>(job.cover.size());
    });

    std::size_t n = 0;
    est.all_exact = true;
    for (int j = i; j <= last_stage; ++j) {
        StageEstimate s;
        s.stage = j;
        s.exact = true;
        for (std::size_t k = 0; k < sys.stage(j).size(); ++k, ++n) {
            s.blocks.push_back(results[n]);
            s.max_ratio = std::max(s.max_ratio, results[n].ratio);
            s.exact = s.exact && results[n].exact;
        }
        est.all_exact = est.all_exact && s.exact;
        est.stages.push_back(std::move(s));
    }
    est.non_increasing = true;
    for (std::size_t t = 1; t < est.stages.size(); ++t)
        if (est.stages[t].max_ratio > est.stages[t - 1].max_ratio)
            est.non_increasing = false;
    return est;
}

AHSystem build_goodearl(const std::vector<int>& m, const std::vector<int>& point_vertices, int path_resolution)
{
    require(path_resolution >= 1, "goodearl: path resolution must be at least 1");
    require(point_vertices.size() == m.size(), "goodearl: need one constant-target vertex per connecting map");
    const Complex path = Complex::path(path_resolution + 1);
    std::vector<std::vector<Block>> stages;
    std::vector<DiagonalMap> maps;
    int size = 1;
    stages.push_back({Block{path, size}});
    for (std::size_t n = 0; n < m.size(); ++n) {
        require(m[n] >= 2, "goodearl: every multiplicity must be at least 2");
        require(point_vertices[n] >= 0 && point_vertices[n] <= path_resolution,
                "goodearl: constant-target vertex out of range");
        DiagonalMap map;
        map.legs.resize(1);
        for (int t = 0; t + 1 < m[n]; ++t)
            map.legs[0].push_back(Leg{0, SimplicialMap::identity(path), ProjectionClass{}});
        map.legs[0].push_back(Leg{0, SimplicialMap::constant(path, path, point_vertices[n]), ProjectionClass{}});
        maps.push_back(std::move(map));
        require(size <= (1 << 30) / m[n], "goodearl: matrix size overflow");
        size *= m[n];
        stages.push_back({Block{path, size}});
    }
    return AHSystem(std::move(stages), std::move(maps));
}

AHSystem build_ah_model(const SimplicialMap& sigma, int stages)
{
    require(stages >= 1, "AH model needs at least one stage");
    require(sigma.domain() == sigma.codomain(), "AH model map must be a self-map");
    const Complex& x = sigma.domain();
    std::vector<std::vector<Block>> st;
    std::vector<DiagonalMap> maps;
    int size = 1;
    st.push_back({Block{x, size}});
    for (int n = 1; n < stages; ++n) {
        DiagonalMap map;
        map.legs.resize(1);
        map.legs[0].push_back(Leg{0, SimplicialMap::identity(x), ProjectionClass{}});
        map.legs[0].push_back(Leg{0, sigma, ProjectionClass{}});
        maps.push_back(std::move(map));
        require(size <= (1 << 29), "AH model: matrix size overflow");
        size *= 2;
        st.push_back({Block{x, size}});
    }
    return AHSystem(std::move(st), std::move(maps));
}

}  // namespace ahmd
