#include "ahmd/capacity.hpp"

#include <algorithm>
#include <string>

namespace ahmd {

namespace {

void check_range(const AHSystem& sys, int i, int last_stage)
{
    require(i >= 0 && i < sys.stage_count(), "base stage out of range");
    require(last_stage >= i && last_stage < sys.stage_count(), "truncation stage must satisfy i <= J < stage count");
}

template <class T>
void finish(CapacityReport<T>& report, const T& slack)
{
    report.monotone = true;
    for (std::size_t t = 1; t < report.stages.size(); ++t)
        if (report.stages[t - 1].max + slack < report.stages[t].max)
            report.monotone = false;
    report.limit = report.stages.back().max;
}

/// Legs from block (i, l) into block (j, k) with their image tables.
struct LegCounter {
    std::vector<Leg> legs;
    std::int64_t source_size = 1;
    std::int64_t target_size = 1;

    LegCounter(const AHSystem& sys, int i, int l, int j, int k)
    {
        for (auto& leg : legs_between(sys, i, j, k))
            if (leg.source == l)
                legs.push_back(std::move(leg));
        source_size = sys.block(i, l).size;
        target_size = sys.block(j, k).size;
    }

    Rational value(const SimplexSet& hits, const Complex& target) const
    {
        std::int64_t best = 0;
        for (SimplexId s = 0; s < static_cast<SimplexId>(target.size()); ++s) {
            std::int64_t count = 0;
            for (const Leg& leg : legs)
                if (hits.test(leg.map.image(s)))
                    count += leg.projection.rank;
            best = std::max(best, count);
        }
        return Rational(source_size * best, target_size);
    }
};

}  // namespace

std::vector<std::vector<PLFunction>> pushforward_profiles(const AHSystem& sys, int i,
                                                          const std::vector<TraceData>& f, int last_stage)
{
    check_range(sys, i, last_stage);
    std::vector<std::vector<PLFunction>> out;
    std::vector<PLFunction> current;
    for (const Block& b : sys.stage(i))
        current.push_back(PLFunction::constant(b.space, 0.0));
    for (const TraceData& t : f) {
        require(t.block >= 0 && t.block < static_cast<int>(current.size()), "trace data block out of range");
        require_same_complex(t.profile.complex(), sys.block(i, t.block).space, "trace data");
        std::vector<double> v = current[t.block].values();
        for (std::size_t x = 0; x < v.size(); ++x)
            v[x] += t.profile.values()[x];
        current[t.block] = PLFunction(t.profile.complex(), std::move(v));
    }
    out.push_back(current);
    for (int j = i + 1; j <= last_stage; ++j) {
        const DiagonalMap& m = sys.map(j - 1);
        std::vector<PLFunction> next;
        for (std::size_t k = 0; k < m.legs.size(); ++k) {
            const Complex& space = sys.block(j, static_cast<int>(k)).space;
            std::vector<double> v(space.vertex_count(), 0.0);
            for (const Leg& leg : m.legs[k]) {
                const PLFunction& src = current[leg.source];
                for (Vertex x = 0; x < space.vertex_count(); ++x)
                    v[x] += leg.projection.rank * src(leg.map(x));
            }
            next.emplace_back(space, std::move(v));
        }
        current = std::move(next);
        out.push_back(current);
    }
    return out;
}

CapacityReport<double> ocap_element(const AHSystem& sys, int i, int l, const TraceData& f, int last_stage)
{
    check_range(sys, i, last_stage);
    require(f.block == l, "trace data belongs to block " + std::to_string(f.block) + ", not " + std::to_string(l));
    const auto profiles = pushforward_profiles(sys, i, {f}, last_stage);
    CapacityReport<double> report;
    for (int j = i; j <= last_stage; ++j) {
        CapacityStage<double> s;
        s.stage = j;
        const auto& row = profiles[j - i];
        for (std::size_t k = 0; k < row.size(); ++k) {
            const double v = row[k].max() / sys.block(j, static_cast<int>(k)).size;
            s.values.push_back(v);
            s.max = k == 0 ? v : std::max(s.max, v);
        }
        report.stages.push_back(std::move(s));
    }
    finish(report, 1e-12);
    return report;
}

CapacityReport<Rational> hit_capacity(const AHSystem& sys, int i, int l, const SimplexSet& hits, int last_stage)
{
    check_range(sys, i, last_stage);
    const Block& base = sys.block(i, l);
    require(hits.universe() == base.space.size(), "hit set does not match block space");

    // count[k][s]: rank-weighted number of legs from (i, l) sending s into hits
    std::vector<std::vector<std::int64_t>> count(sys.stage(i).size());
    for (std::size_t k = 0; k < count.size(); ++k)
        count[k].assign(sys.block(i, static_cast<int>(k)).space.size(), 0);
    hits.for_each([&](SimplexId s) { count[l][s] = 1; });

    CapacityReport<Rational> report;
    for (int j = i; j <= last_stage; ++j) {
        if (j > i) {
            const DiagonalMap& m = sys.map(j - 1);
            std::vector<std::vector<std::int64_t>> next(m.legs.size());
            for (std::size_t k = 0; k < m.legs.size(); ++k) {
                const Complex& space = sys.block(j, static_cast<int>(k)).space;
                next[k].assign(space.size(), 0);
                for (const Leg& leg : m.legs[k])
                    for (SimplexId s = 0; s < static_cast<SimplexId>(space.size()); ++s)
                        next[k][s] += leg.projection.rank * count[leg.source][leg.map.image(s)];
            }
            count = std::move(next);
        }
        CapacityStage<Rational> st;
        st.stage = j;
        for (std::size_t k = 0; k < count.size(); ++k) {
            const std::int64_t best = count[k].empty() ? 0 : *std::max_element(count[k].begin(), count[k].end());
            const Rational v(static_cast<std::int64_t>(base.size) * best, sys.block(j, static_cast<int>(k)).size);
            st.values.push_back(v);
            st.max = std::max(st.max, v);
        }
        report.stages.push_back(std::move(st));
    }
    finish(report, Rational(0));
    return report;
}

CapacityReport<Rational> ocap_closed_set(const AHSystem& sys, int i, int l, const ClosedSet& e, int last_stage)
{
    check_range(sys, i, last_stage);
    require_same_complex(e.complex(), sys.block(i, l).space, "closed set");
    return hit_capacity(sys, i, l, e.members(), last_stage);
}

double trace_variation(const std::vector<Block>& blocks, const std::vector<TraceData>& f)
{
    double best = 0.0;
    for (const TraceData& t : f) {
        require(t.block >= 0 && t.block < static_cast<int>(blocks.size()), "trace data block out of range");
        require_same_complex(t.profile.complex(), blocks[t.block].space, "trace data");
        best = std::max(best, (t.profile.max() - t.profile.min()) / blocks[t.block].size);
    }
    return best;
}

SvtReport svt_probe(const AHSystem& sys, int i, const std::vector<TraceData>& f, int last_stage, double epsilon)
{
    require(epsilon > 0.0, "epsilon must be positive");
    const auto profiles = pushforward_profiles(sys, i, f, last_stage);
    SvtReport report;
    for (int j = i; j <= last_stage; ++j) {
        std::vector<TraceData> data;
        for (std::size_t k = 0; k < profiles[j - i].size(); ++k)
            data.push_back({static_cast<int>(k), profiles[j - i][k]});
        const double v = trace_variation(sys.stage(j), data);
        report.values.push_back(v);
        if (!report.satisfied_by_stage && v < epsilon)
            report.satisfied_by_stage = j;
    }
    return report;
}

SbpReport sbp_probe(const AHSystem& sys, int i, int l, const OpenSet& u, SimplexId center, int last_stage,
                    double epsilon, int level)
{
    require(epsilon > 0.0, "epsilon must be positive");
    const Complex& space = sys.block(i, l).space;
    require_same_complex(u.complex(), space, "open set");
    require(center >= 0 && center < static_cast<SimplexId>(space.size()), "center simplex out of range");
    require(u.contains(center), "center simplex must lie in the open set");
    require(level > 0 || space.simplex(center).size() == 1, "at level 0 the center must be a vertex");
    check_range(sys, i, last_stage);

    const Subdivision sd = subdivide(space, level);
    const Complex& k = sd.complex;
    const OpenSet lifted = sd.lift(u);

    SbpReport report;
    report.level = level;
    report.exact = level == 0;

    std::vector<int> dist(k.vertex_count(), -1);
    std::vector<Vertex> ball{sd.barycenter[center]};
    dist[ball.front()] = 0;
    for (int r = 0;; ++r) {
        const OpenSet v = open_star(k, ball);
        if (!v.subset_of(lifted))
            break;
        const auto cb = closure_and_boundary(v);
        const SimplexSet hits = sd.carriers(cb.boundary.members());
        const auto cap = hit_capacity(sys, i, l, hits, last_stage);
        report.candidates.push_back({r, v, cap.limit});

        std::vector<Vertex> frontier;
        for (Vertex x : ball)
            if (dist[x] == r)
                for (Vertex y : k.closed_star_vertices(x))
                    if (dist[y] < 0) {
                        dist[y] = r + 1;
                        frontier.push_back(y);
                    }
        if (frontier.empty())
            break;
        ball.insert(ball.end(), frontier.begin(), frontier.end());
        std::sort(ball.begin(), ball.end());
    }

    for (std::size_t c = 0; c < report.candidates.size(); ++c)
        if (!report.best || report.candidates[c].value < report.candidates[*report.best].value)
            report.best = c;
    report.found = report.best && report.candidates[*report.best].value.to_double() < epsilon;
    return report;
}

namespace {

Rational boundary_capacity(const LegCounter& counter, const Subdivision& sd, const std::vector<OpenSet>& shrinking,
                           int radius, const Complex& target)
{
    const Complex& k = sd.complex;
    SimplexSet boundary = k.none();
    for (const OpenSet& v : shrinking)
        boundary |= closure_and_boundary(v).boundary.members();
    const ClosedSet fat = star_neighbourhood(ClosedSet::unchecked(k, boundary), radius);
    return counter.value(sd.carriers(fat.members()), target);
}

}  // namespace

Rational shrinking_boundary_capacity(const AHSystem& sys, int i, int l, const Subdivision& sd,
                                     const std::vector<OpenSet>& shrinking, int j, int k, int radius)
{
    require(radius >= 0, "neighbourhood radius must be non-negative");
    require_same_complex(sd.base, sys.block(i, l).space, "subdivision base");
    for (const OpenSet& v : shrinking)
        require_same_complex(v.complex(), sd.complex, "shrinking element");
    const LegCounter counter(sys, i, l, j, k);
    return boundary_capacity(counter, sd, shrinking, radius, sys.block(j, k).space);
}

SbrpReport sbrp_probe(const AHSystem& sys, int i, int l, const Cover& a, double epsilon, int j, int k, int radius,
                      int level, std::uint64_t budget)
{
    require(epsilon > 0.0, "epsilon must be positive");
    require(radius >= 0, "neighbourhood radius must be non-negative");
    require(budget > 0, "search budget must be positive");
    require_same_complex(a.complex(), sys.block(i, l).space, "cover");
    require(j >= i && j < sys.stage_count(), "target stage out of range");
    require(k >= 0 && k < static_cast<int>(sys.stage(j).size()), "target block out of range");

    const Subdivision sd = subdivide(a.complex(), level);
    const Complex& cx = sd.complex;
    const Cover lifted = lift(sd, a);
    const LegCounter counter(sys, i, l, j, k);
    const Complex& target = sys.block(j, k).space;

    SbrpReport report;
    report.level = level;
    report.radius = radius;

    const int n = cx.vertex_count();
    std::vector<std::vector<int>> choices(n);
    for (Vertex v = 0; v < n; ++v) {
        const SimplexSet closed_star = cx.down_closure(cx.cofaces(v));
        for (std::size_t c = 0; c < lifted.size(); ++c)
            if (closed_star.subset_of(lifted[c].members()))
                choices[v].push_back(static_cast<int>(c));
        if (choices[v].empty()) {
            report.feasible = false;
            report.exhaustive = true;
            return report;
        }
    }

    std::vector<int> colour(n, -1);
    std::optional<Rational> best;
    bool stopped = false;

    auto evaluate = [&] {
        std::vector<std::vector<Vertex>> classes(lifted.size());
        for (Vertex v = 0; v < n; ++v)
            classes[colour[v]].push_back(v);
        std::vector<OpenSet> shrinking;
        for (const auto& cls : classes)
            shrinking.push_back(open_star(cx, cls));
        const Rational value = boundary_capacity(counter, sd, shrinking, radius, target);
        if (!best || value < *best) {
            best = value;
            report.refinement = std::move(shrinking);
        }
    };

    auto search = [&](auto&& self, Vertex v) -> void {
        if (stopped)
            return;
        if (v == n) {
            evaluate();
            if (best->to_double() < epsilon)
                stopped = true;
            return;
        }
        for (int c : choices[v]) {
            if (stopped)
                return;
            if (report.nodes >= budget) {
                stopped = true;
                return;
            }
            ++report.nodes;
            colour[v] = c;
            self(self, v + 1);
        }
        colour[v] = -1;
    };
    search(search, 0);

    report.exhaustive = !stopped;
    if (best) {
        report.value = *best;
        report.found = best->to_double() < epsilon;
        if (!report.found)
            report.refinement.reset();
    }
    return report;
}

}  // namespace ahmd
