#include "ahmd/branched.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <tuple>

#include "ahmd/parallel.hpp"

namespace ahmd {

BranchedCover::BranchedCover(Complex complex, std::vector<BranchedPair> pairs) : complex_(std::move(complex))
{
    require(!pairs.empty(), "branched cover needs at least one pair");
    std::map<std::string, int> ranks;
    SimplexSet covered = complex_.none();
    std::set<std::tuple<int, std::string, SimplexSet>> seen;
    for (auto& p : pairs) {
        require_same_complex(p.set.complex(), complex_, "branched pair");
        require(!p.set.empty(), "branched cover sets must be nonempty");
        require(p.projection.rank >= 1, "projection rank must be positive");
        auto [it, fresh] = ranks.emplace(p.projection.label, p.projection.rank);
        require(fresh || it->second == p.projection.rank,
                "projection label '" + p.projection.label + "' carries two different ranks");
        covered |= p.set.members();
        if (seen.emplace(p.origin, p.projection.label, p.set.members()).second)
            pairs_.push_back(std::move(p));
    }
    require(covered == complex_.all(), "branched cover sets do not cover the complex");
}

BranchedCover BranchedCover::from_cover(const Cover& a, const ProjectionClass& projection, int origin)
{
    std::vector<BranchedPair> pairs;
    for (const auto& u : a.elements())
        pairs.push_back({u, projection, origin});
    return BranchedCover(a.complex(), std::move(pairs));
}

Cover BranchedCover::underlying() const
{
    std::vector<OpenSet> sets;
    for (const auto& p : pairs_)
        if (std::find(sets.begin(), sets.end(), p.set) == sets.end())
            sets.push_back(p.set);
    return Cover(complex_, std::move(sets));
}

int class_multiplicity(const std::vector<BranchedPair>& classes)
{
    require(!classes.empty(), "multiplicity of an empty class list");
    std::map<std::string, std::pair<std::set<int>, int>> by_label;
    for (const auto& p : classes) {
        auto& entry = by_label[p.projection.label];
        entry.first.insert(p.origin);
        entry.second = p.projection.rank;
    }
    int best = std::numeric_limits<int>::max();
    for (const auto& [label, entry] : by_label)
        best = std::min(best, static_cast<int>(entry.first.size()) * entry.second);
    return best;
}

int multiplicity(const BranchedCover& bc)
{
    require(!bc.pairs().empty(), "multiplicity of an empty branched cover");
    int best = std::numeric_limits<int>::max();
    const Cover sets = bc.underlying();
    for (const auto& u : sets.elements()) {
        std::vector<BranchedPair> classes;
        for (const auto& p : bc.pairs())
            if (p.set == u)
                classes.push_back(p);
        best = std::min(best, class_multiplicity(classes));
    }
    return best;
}

BranchedCover branched_join(const BranchedCover& a, const BranchedCover& b)
{
    require_same_complex(a.complex(), b.complex(), "branched join");
    std::vector<BranchedPair> pairs;
    for (const auto& p : a.pairs())
        for (const auto& q : b.pairs()) {
            const OpenSet w = p.set & q.set;
            if (w.empty())
                continue;
            pairs.push_back({w, p.projection, p.origin});
            pairs.push_back({w, q.projection, q.origin});
        }
    return BranchedCover(a.complex(), std::move(pairs));
}

BranchedCover induce(const BranchedCover& bc, const Cover& b)
{
    require_same_complex(bc.complex(), b.complex(), "induce");
    require(refines(b, bc.underlying()), "induce: the cover does not refine the branched cover");
    std::vector<BranchedPair> pairs;
    for (const auto& w : b.elements())
        for (const auto& p : bc.pairs())
            if (w.subset_of(p.set))
                pairs.push_back({w, p.projection, p.origin});
    return BranchedCover(b.complex(), std::move(pairs));
}

BranchedCover branched_pullback(const SimplicialMap& f, const Cover& a, const ProjectionClass& projection, int origin)
{
    require_same_complex(a.complex(), f.codomain(), "branched pullback");
    std::vector<BranchedPair> pairs;
    for (const auto& u : a.elements()) {
        OpenSet pre = preimage(f, u);
        if (!pre.empty())
            pairs.push_back({std::move(pre), projection, origin});
    }
    return BranchedCover(f.domain(), std::move(pairs));
}

namespace {

class RatioSearch {
public:
    RatioSearch(const Complex& complex, std::vector<std::vector<int>> choices, const std::vector<OpenSet>& sets,
                const std::vector<std::vector<BranchedPair>>& classes, int mul_bound, std::uint64_t budget)
        : c_(complex), choices_(std::move(choices)), sets_(sets), classes_(classes), mul_bound_(mul_bound),
          budget_(budget)
    {
        for (SimplexId f : c_.maximal())
            facets_.push_back(c_.simplex(f));
        incident_.resize(c_.vertex_count());
        for (std::size_t f = 0; f < facets_.size(); ++f)
            for (Vertex v : facets_[f])
                incident_[v].push_back(static_cast<int>(f));
        counts_.assign(facets_.size(), std::vector<int>(sets_.size(), 0));
        distinct_.assign(facets_.size(), 0);
        colour_.assign(c_.vertex_count(), -1);
    }

    /// Ratio and multiplicity of a complete colouring.
    std::pair<Rational, int> evaluate(const std::vector<int>& colour) const
    {
        std::map<int, std::vector<Vertex>> cls;
        for (Vertex v = 0; v < c_.vertex_count(); ++v)
            cls[colour[v]].push_back(v);
        int mul = std::numeric_limits<int>::max();
        int order = 0;
        std::vector<SimplexSet> stars;
        for (const auto& [c, verts] : cls) {
            const OpenSet star = open_star(c_, verts);
            std::vector<BranchedPair> ind;
            for (std::size_t s = 0; s < sets_.size(); ++s)
                if (star.subset_of(sets_[s]))
                    ind.insert(ind.end(), classes_[s].begin(), classes_[s].end());
            mul = std::min(mul, class_multiplicity(ind));
            stars.push_back(star.members());
        }
        for (SimplexId f : c_.maximal()) {
            int n = 0;
            for (const auto& s : stars)
                n += s.test(f) ? 1 : 0;
            order = std::max(order, n - 1);
        }
        return {Rational(order, mul), mul};
    }

    /// Exhaustive search below `best`; returns false when the budget ran out.
    bool improve(Rational& best, std::vector<int>& best_colour, const Rational& floor)
    {
        best_ = &best;
        best_colour_ = &best_colour;
        floor_ = floor;
        dfs(0);
        return !aborted_;
    }

    std::uint64_t nodes() const { return nodes_; }

private:
    int partial_order() const
    {
        int m = 0;
        for (int d : distinct_)
            m = std::max(m, d);
        return std::max(m - 1, 0);
    }

    void dfs(Vertex v)
    {
        if (done_)
            return;
        if (Rational(partial_order(), mul_bound_) >= *best_)
            return;
        if (v == c_.vertex_count()) {
            const auto [ratio, mul] = evaluate(colour_);
            if (ratio < *best_) {
                *best_ = ratio;
                *best_colour_ = colour_;
                if (ratio <= floor_)
                    done_ = true;
            }
            return;
        }
        for (int c : choices_[v]) {
            if (nodes_ >= budget_) {
                aborted_ = true;
                done_ = true;
                return;
            }
            ++nodes_;
            colour_[v] = c;
            for (int f : incident_[v])
                if (counts_[f][c]++ == 0)
                    ++distinct_[f];
            dfs(v + 1);
            for (int f : incident_[v])
                if (--counts_[f][c] == 0)
                    --distinct_[f];
            colour_[v] = -1;
            if (done_)
                return;
        }
    }

    const Complex& c_;
    std::vector<std::vector<int>> choices_;
    const std::vector<OpenSet>& sets_;
    const std::vector<std::vector<BranchedPair>>& classes_;
    int mul_bound_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;
    bool done_ = false;
    Rational* best_ = nullptr;
    std::vector<int>* best_colour_ = nullptr;
    Rational floor_;

    std::vector<Simplex> facets_;
    std::vector<std::vector<int>> incident_;
    std::vector<std::vector<int>> counts_;
    std::vector<int> distinct_;
    std::vector<int> colour_;
};

}  // namespace

CuntzResult cuntz_ratio(const AHSystem& sys, int i, const StageCover& a, int j, int k,
                        const std::optional<LegClasses>& classes, int level, std::uint64_t budget)
{
    validate_stage_cover(sys, i, a);
    require(budget > 0, "search budget must be positive");
    require(level >= 0, "subdivision level must be non-negative");
    const auto legs = legs_between(sys, i, j, k);
    if (classes)
        require(classes->size() == legs.size(), "need one projection class per leg into the target block");

    std::int64_t total = 0;
    std::optional<BranchedCover> joined;
    for (std::size_t m = 0; m < legs.size(); ++m) {
        ProjectionClass p = classes ? (*classes)[m] : legs[m].projection;
        require(p.rank >= 1, "projection rank must be positive");
        const int source_size = sys.block(i, legs[m].source).size;
        p.rank *= source_size;
        if (source_size > 1)
            p.label += "*" + std::to_string(source_size);
        total += p.rank;
        BranchedCover piece = branched_pullback(legs[m].map, a[legs[m].source], p, static_cast<int>(m));
        joined = joined ? branched_join(*joined, piece) : std::move(piece);
    }
    require(total == sys.block(j, k).size, "unitality violated: leg ranks times source sizes must sum to the target size");

    CuntzResult result;
    result.branched = *joined;
    const Cover ordinary = joined->underlying();

    std::vector<std::vector<BranchedPair>> set_classes(ordinary.size());
    for (const auto& p : joined->pairs())
        for (std::size_t s = 0; s < ordinary.size(); ++s)
            if (p.set == ordinary[s]) {
                set_classes[s].push_back(p);
                break;
            }

    std::map<std::string, std::pair<std::set<int>, int>> labels;
    for (const auto& p : joined->pairs()) {
        labels[p.projection.label].first.insert(p.origin);
        labels[p.projection.label].second = p.projection.rank;
    }
    int mul_bound = 1;
    for (const auto& [label, entry] : labels)
        mul_bound = std::max(mul_bound, static_cast<int>(entry.first.size()) * entry.second);

    const Subdivision sd = subdivide(ordinary.complex(), level);
    const Cover lifted = lift(sd, ordinary);
    std::vector<OpenSet> lifted_sets = lifted.elements();
    std::vector<std::vector<int>> choices(sd.complex.vertex_count());
    for (Vertex v = 0; v < sd.complex.vertex_count(); ++v)
        for (std::size_t s = 0; s < lifted_sets.size(); ++s)
            if (lifted_sets[s].contains(v))
                choices[v].push_back(static_cast<int>(s));

    const detail::ColouringProblem problem{sd.complex, choices, static_cast<int>(lifted_sets.size())};
    const auto start = detail::minimise_colouring(problem, budget);
    RatioSearch search(sd.complex, choices, lifted_sets, set_classes, mul_bound, budget);

    std::vector<int> best_colour = start.colour;
    Rational best = search.evaluate(best_colour).first;
    const Rational floor = start.exact ? Rational(start.order, mul_bound) : Rational(0);
    bool exhaustive = true;
    if (best > floor)
        exhaustive = search.improve(best, best_colour, floor);

    result.value = best;
    result.multiplicity = search.evaluate(best_colour).second;
    result.certificate = detail::certificate_from_colouring(sd.complex, best_colour);
    result.certificate.level = level;
    result.order = result.certificate.achieved_order;
    result.exact = start.exact && exhaustive;
    result.nodes = start.nodes + search.nodes();
    ensure(Rational(result.order, result.multiplicity) == result.value, "cuntz ratio: certificate disagrees with value");
    return result;
}

AHSystem with_pairing(const AHSystem& sys, const Pairing& pairing)
{
    require(static_cast<int>(pairing.size()) + 1 == sys.stage_count(), "pairing needs one entry per connecting map");
    std::vector<DiagonalMap> maps = sys.maps();
    for (std::size_t m = 0; m < maps.size(); ++m) {
        require(pairing[m].size() == maps[m].legs.size(), "pairing needs one class list per target block");
        for (std::size_t k = 0; k < maps[m].legs.size(); ++k) {
            require(pairing[m][k].size() == maps[m].legs[k].size(), "pairing needs one class per leg");
            for (std::size_t t = 0; t < pairing[m][k].size(); ++t)
                maps[m].legs[k][t].projection = pairing[m][k][t];
        }
    }
    return AHSystem(sys.stages(), std::move(maps));
}

std::vector<CuntzStage> cuntz_mean_dimension_sequence(const AHSystem& sys, int i, const StageCover& a, int last_stage,
                                                      int level, std::uint64_t budget,
                                                      const std::vector<Pairing>& pairings)
{
    validate_stage_cover(sys, i, a);
    require(last_stage > i && last_stage < sys.stage_count(), "truncation stage must satisfy i < J < stage count");

    std::vector<AHSystem> systems;
    if (pairings.empty())
        systems.push_back(sys);
    for (const auto& p : pairings)
        systems.push_back(with_pairing(sys, p));

    struct Job {
        int system;
        int stage;
        int block;
    };
    std::vector<Job> jobs;
    for (int j = i + 1; j <= last_stage; ++j)
        for (int k = 0; k < static_cast<int>(sys.stage(j).size()); ++k)
            for (int s = 0; s < static_cast<int>(systems.size()); ++s)
                jobs.push_back({s, j, k});

    std::vector<CuntzResult> results(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t n) {
        const Job& job = jobs[n];
        results[n] = cuntz_ratio(systems[job.system], i, a, job.stage, job.block, std::nullopt, level, budget);
    });

    std::vector<CuntzStage> out;
    std::size_t n = 0;
    for (int j = i + 1; j <= last_stage; ++j) {
        CuntzStage st;
        st.stage = j;
        st.exact = true;
        for (std::size_t k = 0; k < sys.stage(j).size(); ++k) {
            Rational block_min;
            for (std::size_t s = 0; s < systems.size(); ++s, ++n) {
                if (s == 0 || results[n].value < block_min)
                    block_min = results[n].value;
                st.exact = st.exact && results[n].exact;
            }
            st.blocks.push_back(block_min);
            st.value = std::max(st.value, block_min);
        }
        out.push_back(std::move(st));
    }
    return out;
}

}  // namespace ahmd
