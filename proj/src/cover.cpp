#include "ahmd/cover.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <limits>
#include <numeric>
#include <set>
#include <string>

namespace ahmd {

Cover::Cover(Complex complex, std::vector<OpenSet> elements)
    : complex_(std::move(complex)), elements_(std::move(elements))
{
    require(!elements_.empty(), "cover needs at least one element");
    SimplexSet covered = complex_.none();
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        require_same_complex(elements_[i].complex(), complex_, "cover element");
        require(!elements_[i].empty(), "cover element " + std::to_string(i) + " is empty");
        covered |= elements_[i].members();
    }
    require(covered == complex_.all(), "covers: some simplex lies in no cover element");
}

Cover Cover::vertex_stars(const Complex& c)
{
    std::vector<OpenSet> stars;
    for (Vertex v = 0; v < c.vertex_count(); ++v)
        stars.push_back(open_star(c, {v}));
    return Cover(c, std::move(stars));
}

std::vector<int> Cover::members_at(SimplexId id) const
{
    std::vector<int> out;
    for (std::size_t i = 0; i < elements_.size(); ++i)
        if (elements_[i].contains(id))
            out.push_back(static_cast<int>(i));
    return out;
}

int ord(const Cover& a)
{
    int best = 0;
    for (std::size_t id = 0; id < a.complex().size(); ++id) {
        int count = 0;
        for (const auto& u : a.elements())
            count += u.contains(static_cast<SimplexId>(id)) ? 1 : 0;
        best = std::max(best, count);
    }
    return best - 1;
}

Cover deduplicated(const Cover& a)
{
    std::set<SimplexSet> seen;
    std::vector<OpenSet> out;
    for (const auto& u : a.elements())
        if (seen.insert(u.members()).second)
            out.push_back(u);
    return Cover(a.complex(), std::move(out));
}

Cover reduced(const Cover& a)
{
    const Cover d = deduplicated(a);
    std::vector<OpenSet> out;
    for (std::size_t i = 0; i < d.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < d.size() && !dominated; ++j)
            dominated = i != j && d[i].subset_of(d[j]);
        if (!dominated)
            out.push_back(d[i]);
    }
    return Cover(a.complex(), std::move(out));
}

bool equivalent(const Cover& a, const Cover& b)
{
    if (!(a.complex() == b.complex()))
        return false;
    auto key = [](const Cover& c) {
        std::set<SimplexSet> s;
        const Cover r = reduced(c);
        for (const auto& u : r.elements())
            s.insert(u.members());
        return s;
    };
    return key(a) == key(b);
}

bool refines(const Cover& fine, const Cover& coarse)
{
    if (!(fine.complex() == coarse.complex()))
        return false;
    for (const auto& v : fine.elements()) {
        bool inside = false;
        for (const auto& u : coarse.elements())
            if (v.subset_of(u)) {
                inside = true;
                break;
            }
        if (!inside)
            return false;
    }
    return true;
}

Cover join(const Cover& a, const Cover& b)
{
    require_same_complex(a.complex(), b.complex(), "join");
    std::set<SimplexSet> seen;
    std::vector<OpenSet> out;
    for (const auto& u : a.elements())
        for (const auto& v : b.elements()) {
            SimplexSet w = u.members() & v.members();
            if (!w.empty() && seen.insert(w).second)
                out.push_back(OpenSet::unchecked(a.complex(), std::move(w)));
        }
    return Cover(a.complex(), std::move(out));
}

Cover pullback_cover(const SimplicialMap& f, const Cover& a)
{
    require_same_complex(a.complex(), f.codomain(), "pullback cover");
    std::set<SimplexSet> seen;
    std::vector<OpenSet> out;
    for (const auto& u : a.elements()) {
        OpenSet p = preimage(f, u);
        if (!p.empty() && seen.insert(p.members()).second)
            out.push_back(std::move(p));
    }
    return Cover(f.domain(), std::move(out));
}

Cover lift(const Subdivision& sd, const Cover& a)
{
    std::vector<OpenSet> out;
    out.reserve(a.size());
    for (const auto& u : a.elements())
        out.push_back(sd.lift(u));
    return Cover(sd.complex, std::move(out));
}

bool certificate_valid(const RefinementCertificate& cert, const Cover& coarse_base)
{
    if (cert.level < 0)
        return false;
    const Cover coarse = cert.level == 0 ? coarse_base : lift(subdivide(coarse_base.complex(), cert.level), coarse_base);
    if (!(cert.cover.complex() == coarse.complex()))
        return false;
    if (cert.witness.size() != cert.cover.size())
        return false;
    for (std::size_t i = 0; i < cert.cover.size(); ++i) {
        const int w = cert.witness[i];
        if (w < 0 || w >= static_cast<int>(coarse.size()))
            return false;
        if (!cert.cover[i].subset_of(coarse[w]))
            return false;
        if (!cert.cover.complex().is_up_closed(cert.cover[i].members()))
            return false;
    }
    return cert.achieved_order == ord(cert.cover);
}

double mediant_bound(std::span<const double> numerators, std::span<const double> denominators,
                     std::span<const double> weights)
{
    require(!numerators.empty(), "mediant needs at least one term");
    require(numerators.size() == denominators.size() && numerators.size() == weights.size(),
            "mediant needs equally many numerators, denominators and weights");
    double top = 0.0;
    double bottom = 0.0;
    for (std::size_t i = 0; i < numerators.size(); ++i) {
        require(denominators[i] > 0.0, "mediant: zero denominator");
        require(weights[i] > 0.0, "mediant: weights must be positive");
        top += weights[i] * numerators[i];
        bottom += weights[i] * denominators[i];
    }
    return top / bottom;
}

// ---------------------------------------------------------------------------
// colouring branch and bound

namespace detail {

namespace {

constexpr int kMaxWidth = 24;

class ColouringSearch {
public:
    ColouringSearch(const ColouringProblem& p, std::uint64_t budget) : p_(p), budget_(budget)
    {
        const Complex& c = p.complex;
        for (SimplexId f : c.maximal())
            facets_.push_back(c.simplex(f));
        incident_.resize(c.vertex_count());
        for (std::size_t f = 0; f < facets_.size(); ++f)
            for (Vertex v : facets_[f])
                incident_[v].push_back(static_cast<int>(f));
        counts_.assign(facets_.size(), std::vector<int>(p.colours, 0));
        distinct_.assign(facets_.size(), 0);
        colour_.assign(c.vertex_count(), -1);
        best_colour_ = colour_;
    }

    ColouringResult run()
    {
        const Complex& c = p_.complex;
        std::vector<std::vector<Vertex>> components(c.component_count());
        for (Vertex v = 0; v < c.vertex_count(); ++v) {
            require(!p_.choices[v].empty(), "covers: vertex " + std::to_string(v) + " lies in no element");
            components[c.vertex_components()[v]].push_back(v);
        }

        ColouringResult result;
        result.exact = true;
        int overall = 0;
        for (const auto& comp : components) {
            const int order = solve_component(comp, overall);
            if (aborted_)
                result.exact = false;
            overall = std::max(overall, order);
        }
        result.colour = best_colour_;
        result.order = overall;
        result.nodes = nodes_;
        return result;
    }

private:
    std::vector<Vertex> visit_order(const std::vector<Vertex>& comp) const
    {
        // breadth first from the most constrained vertex
        Vertex start = comp.front();
        for (Vertex v : comp)
            if (p_.choices[v].size() < p_.choices[start].size())
                start = v;
        std::vector<char> seen(p_.complex.vertex_count(), 0);
        std::vector<Vertex> order;
        std::deque<Vertex> queue{start};
        seen[start] = 1;
        while (!queue.empty()) {
            Vertex v = queue.front();
            queue.pop_front();
            order.push_back(v);
            std::vector<Vertex> next;
            for (int f : incident_[v])
                for (Vertex w : facets_[f])
                    if (!seen[w]) {
                        seen[w] = 1;
                        next.push_back(w);
                    }
            std::sort(next.begin(), next.end(), [&](Vertex a, Vertex b) {
                if (p_.choices[a].size() != p_.choices[b].size())
                    return p_.choices[a].size() < p_.choices[b].size();
                return a < b;
            });
            queue.insert(queue.end(), next.begin(), next.end());
        }
        return order;
    }

    int lower_bound(const std::vector<Vertex>& comp) const
    {
        if (comp.size() <= 1)
            return 0;
        std::vector<int> common = p_.choices[comp.front()];
        for (Vertex v : comp) {
            std::vector<int> next;
            std::set_intersection(common.begin(), common.end(), p_.choices[v].begin(), p_.choices[v].end(),
                                  std::back_inserter(next));
            common.swap(next);
            if (common.empty())
                return 1;
        }
        return 0;
    }

    int current_max() const
    {
        for (int d = kMaxWidth - 1; d > 0; --d)
            if (hist_[d] > 0)
                return d;
        return 0;
    }

    void assign(Vertex v, int c)
    {
        colour_[v] = c;
        for (int f : incident_[v]) {
            if (counts_[f][c]++ == 0) {
                --hist_[distinct_[f]];
                ++hist_[++distinct_[f]];
            }
        }
    }

    void unassign(Vertex v)
    {
        const int c = colour_[v];
        for (int f : incident_[v]) {
            if (--counts_[f][c] == 0) {
                --hist_[distinct_[f]];
                ++hist_[--distinct_[f]];
            }
        }
        colour_[v] = -1;
    }

    int solve_component(const std::vector<Vertex>& comp, int good_enough)
    {
        order_ = visit_order(comp);
        const int lb = lower_bound(comp);
        stop_at_ = std::max(lb, good_enough);
        comp_best_ = std::numeric_limits<int>::max();
        hist_.fill(0);
        for (Vertex v : comp)
            for (int f : incident_[v])
                distinct_[f] = 0;
        std::set<int> comp_facets;
        for (Vertex v : comp)
            for (int f : incident_[v])
                comp_facets.insert(f);
        hist_[0] = static_cast<int>(comp_facets.size());
        done_ = false;
        dfs(0);
        // clear state touched by this component
        for (Vertex v : comp)
            if (colour_[v] >= 0)
                unassign(v);
        return comp_best_;
    }

    void dfs(std::size_t depth)
    {
        if (done_)
            return;
        const int cost = std::max(current_max() - 1, 0);
        if (cost >= comp_best_)
            return;
        if (depth == order_.size()) {
            comp_best_ = cost;
            for (Vertex v : order_)
                best_colour_[v] = colour_[v];
            if (comp_best_ <= stop_at_)
                done_ = true;
            return;
        }
        const Vertex v = order_[depth];
        // order candidate colours: smallest resulting local width first,
        // then fewest facets receiving a new colour
        struct Option {
            int width;
            int fresh;
            int colour;
        };
        std::vector<Option> options;
        for (int c : p_.choices[v]) {
            int width = 0;
            int fresh = 0;
            for (int f : incident_[v]) {
                const bool is_new = counts_[f][c] == 0;
                fresh += is_new ? 1 : 0;
                width = std::max(width, distinct_[f] + (is_new ? 1 : 0));
            }
            options.push_back({width, fresh, c});
        }
        std::sort(options.begin(), options.end(), [](const Option& a, const Option& b) {
            if (a.width != b.width)
                return a.width < b.width;
            if (a.fresh != b.fresh)
                return a.fresh < b.fresh;
            return a.colour < b.colour;
        });
        for (const auto& opt : options) {
            if (opt.width - 1 >= comp_best_)
                continue;
            if (nodes_ >= budget_) {
                aborted_ = true;
                done_ = true;
                return;
            }
            ++nodes_;
            assign(v, opt.colour);
            dfs(depth + 1);
            unassign(v);
            if (done_)
                return;
        }
    }

    const ColouringProblem& p_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;
    bool done_ = false;

    std::vector<Simplex> facets_;
    std::vector<std::vector<int>> incident_;
    std::vector<std::vector<int>> counts_;
    std::vector<int> distinct_;
    std::array<int, kMaxWidth> hist_{};
    std::vector<int> colour_;
    std::vector<int> best_colour_;
    std::vector<Vertex> order_;
    int comp_best_ = 0;
    int stop_at_ = 0;
};

}  // namespace

ColouringResult minimise_colouring(const ColouringProblem& problem, std::uint64_t budget)
{
    require(budget > 0, "search budget must be positive");
    require(static_cast<int>(problem.choices.size()) == problem.complex.vertex_count(),
            "colouring needs one choice list per vertex");
    require(problem.complex.dimension() + 1 < kMaxWidth, "complex dimension too large for the search");
    ColouringSearch search(problem, budget);
    ColouringResult r = search.run();
    // no complete colouring within budget: first admissible colour everywhere
    for (Vertex v = 0; v < problem.complex.vertex_count(); ++v)
        if (r.colour[v] < 0) {
            r.colour[v] = problem.choices[v].front();
            r.exact = false;
        }
    return r;
}

RefinementCertificate certificate_from_colouring(const Complex& complex, const std::vector<int>& colour)
{
    std::map<int, std::vector<Vertex>> classes;
    for (Vertex v = 0; v < complex.vertex_count(); ++v)
        classes[colour[v]].push_back(v);
    std::vector<OpenSet> elements;
    RefinementCertificate cert;
    for (const auto& [c, verts] : classes) {
        elements.push_back(open_star(complex, verts));
        cert.witness.push_back(c);
    }
    cert.cover = Cover(complex, std::move(elements));
    cert.achieved_order = ord(cert.cover);
    return cert;
}

}  // namespace detail

RefinementResult refinement_dimension(const Cover& a, int level, std::uint64_t budget)
{
    require(budget > 0, "search budget must be positive");
    require(level >= 0, "subdivision level must be non-negative");
    const Subdivision sd = subdivide(a.complex(), level);
    const Cover lifted = lift(sd, a);

    detail::ColouringProblem problem{sd.complex, {}, static_cast<int>(a.size())};
    problem.choices.resize(sd.complex.vertex_count());
    for (Vertex v = 0; v < sd.complex.vertex_count(); ++v)
        for (std::size_t i = 0; i < lifted.size(); ++i)
            if (lifted[i].contains(v))
                problem.choices[v].push_back(static_cast<int>(i));

    const auto found = detail::minimise_colouring(problem, budget);
    RefinementResult result;
    result.certificate = detail::certificate_from_colouring(sd.complex, found.colour);
    result.certificate.level = level;
    result.exact = found.exact;
    result.nodes = found.nodes;
    result.value = result.certificate.achieved_order;
    if (found.exact)
        ensure(result.value == found.order, "refinement search: certificate order disagrees with search");
    return result;
}

RefinementCertificate greedy_refinement(const Cover& a, int level)
{
    const Subdivision sd = subdivide(a.complex(), level);
    const Complex& k = sd.complex;
    std::vector<SimplexSet> sets;
    for (const auto& u : a.elements())
        sets.push_back(sd.lift(u).members());

    std::vector<int> mult(k.size(), 0);
    for (const auto& s : sets)
        s.for_each([&](SimplexId id) { ++mult[id]; });

    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<SimplexId> order(k.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](SimplexId x, SimplexId y) { return mult[x] > mult[y]; });
        for (SimplexId sigma : order) {
            if (mult[sigma] < 2)
                break;
            std::vector<int> holders;
            for (std::size_t i = 0; i < sets.size(); ++i)
                if (sets[i].test(sigma))
                    holders.push_back(static_cast<int>(i));
            std::stable_sort(holders.begin(), holders.end(),
                             [&](int x, int y) { return sets[x].count() > sets[y].count(); });
            for (int i : holders) {
                // removing sigma from an up-closed set removes its faces there too
                const SimplexSet removed = k.faces(sigma) & sets[i];
                bool still_covered = true;
                removed.for_each([&](SimplexId id) { still_covered = still_covered && mult[id] >= 2; });
                if (!still_covered)
                    continue;
                sets[i] -= removed;
                removed.for_each([&](SimplexId id) { --mult[id]; });
                changed = true;
                break;
            }
            if (changed)
                break;
        }
    }

    RefinementCertificate cert;
    std::vector<OpenSet> elements;
    for (std::size_t i = 0; i < sets.size(); ++i)
        if (!sets[i].empty()) {
            elements.push_back(OpenSet::unchecked(k, sets[i]));
            cert.witness.push_back(static_cast<int>(i));
        }
    cert.cover = Cover(k, std::move(elements));
    cert.achieved_order = ord(cert.cover);
    cert.level = level;
    return cert;
}

}  // namespace ahmd
