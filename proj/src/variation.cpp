#include "ahmd/variation.hpp"

#include <algorithm>
#include <string>

#include "ahmd/nerve.hpp"
#include "ahmd/parallel.hpp"

namespace ahmd {

FunctionFamily::FunctionFamily(Complex complex, std::vector<Member> members)
    : complex_(std::move(complex)), members_(std::move(members))
{
    for (std::size_t m = 0; m < members_.size(); ++m) {
        require(!members_[m].empty(), "family member " + std::to_string(m) + " has no entries");
        for (const auto& e : members_[m])
            require_same_complex(e.complex(), complex_, "family entry");
    }
}

FunctionFamily FunctionFamily::lift(const Subdivision& sd) const
{
    require_same_complex(sd.base, complex_, "family lift");
    std::vector<Member> out;
    for (const auto& m : members_) {
        Member lifted;
        for (const auto& e : m)
            lifted.push_back(sd.lift(e));
        out.push_back(std::move(lifted));
    }
    return FunctionFamily(sd.complex, std::move(out));
}

double oscillation(const Member& m, const OpenSet& u)
{
    double best = 0.0;
    for (const auto& e : m) {
        require_same_complex(e.complex(), u.complex(), "oscillation");
        best = std::max(best, e.oscillation_on(u.members()));
    }
    return best;
}

bool admissible(const FunctionFamily& f, const Cover& a, double epsilon)
{
    require_same_complex(f.complex(), a.complex(), "admissibility");
    for (const auto& u : a.elements())
        for (const auto& m : f.members())
            if (oscillation(m, u) >= epsilon)
                return false;
    return true;
}

namespace {

/// Maximal cliques by Bron-Kerbosch with pivoting, in a canonical order.
class CliqueEnumerator {
public:
    CliqueEnumerator(const std::vector<std::vector<char>>& adj, std::uint64_t budget) : adj_(adj), budget_(budget) {}

    std::vector<std::vector<Vertex>> run()
    {
        std::vector<Vertex> p(adj_.size());
        for (std::size_t v = 0; v < adj_.size(); ++v)
            p[v] = static_cast<Vertex>(v);
        std::vector<Vertex> r;
        expand(r, p, {});
        std::sort(out_.begin(), out_.end());
        return out_;
    }

    bool complete() const { return !aborted_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    void expand(std::vector<Vertex>& r, std::vector<Vertex> p, std::vector<Vertex> x)
    {
        if (aborted_)
            return;
        if (++nodes_ > budget_) {
            aborted_ = true;
            return;
        }
        if (p.empty()) {
            if (x.empty()) {
                std::vector<Vertex> clique = r;
                std::sort(clique.begin(), clique.end());
                out_.push_back(std::move(clique));
            }
            return;
        }
        Vertex pivot = p.front();
        std::size_t best = 0;
        for (const auto* set : {&p, &x})
            for (Vertex u : *set) {
                std::size_t n = 0;
                for (Vertex w : p)
                    n += adj_[u][w] ? 1 : 0;
                if (n >= best) {
                    best = n;
                    pivot = u;
                }
            }
        std::vector<Vertex> candidates;
        for (Vertex v : p)
            if (!adj_[pivot][v])
                candidates.push_back(v);
        for (Vertex v : candidates) {
            std::vector<Vertex> np;
            std::vector<Vertex> nx;
            for (Vertex w : p)
                if (adj_[v][w])
                    np.push_back(w);
            for (Vertex w : x)
                if (adj_[v][w])
                    nx.push_back(w);
            r.push_back(v);
            expand(r, std::move(np), std::move(nx));
            r.pop_back();
            p.erase(std::find(p.begin(), p.end(), v));
            x.push_back(v);
        }
    }

    const std::vector<std::vector<char>>& adj_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;
    std::vector<std::vector<Vertex>> out_;
};

}  // namespace

VariationResult variation_dimension(const FunctionFamily& f, double epsilon, int level, std::uint64_t budget)
{
    require(epsilon > 0.0, "epsilon must be positive");
    require(budget > 0, "search budget must be positive");
    const Subdivision sd = subdivide(f.complex(), level);
    const FunctionFamily g = f.lift(sd);
    const Complex& k = sd.complex;
    const int n = k.vertex_count();

    std::vector<PLFunction> entries;
    for (const auto& m : g.members())
        for (const auto& e : m)
            if (std::find(entries.begin(), entries.end(), e) == entries.end())
                entries.push_back(e);

    // value range of every entry over every closed vertex star
    std::vector<std::vector<double>> lo(entries.size(), std::vector<double>(n));
    std::vector<std::vector<double>> hi(entries.size(), std::vector<double>(n));
    for (Vertex v = 0; v < n; ++v) {
        const auto star = k.closed_star_vertices(v);
        for (std::size_t e = 0; e < entries.size(); ++e) {
            double a = entries[e](v);
            double b = a;
            for (Vertex w : star) {
                a = std::min(a, entries[e](w));
                b = std::max(b, entries[e](w));
            }
            lo[e][v] = a;
            hi[e][v] = b;
            if (b - a >= epsilon)
                throw SubdivisionRequired("closed star of vertex " + std::to_string(v) + " oscillates by " +
                                          std::to_string(b - a) + " >= epsilon at level " + std::to_string(level));
        }
    }

    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) {
            bool ok = true;
            for (std::size_t e = 0; e < entries.size() && ok; ++e)
                ok = std::max(hi[e][u], hi[e][v]) - std::min(lo[e][u], lo[e][v]) < epsilon;
            adj[u][v] = adj[v][u] = ok ? 1 : 0;
        }

    CliqueEnumerator cliques(adj, budget);
    const auto sets = cliques.run();

    VariationResult result;
    detail::ColouringProblem problem{k, std::vector<std::vector<int>>(n), static_cast<int>(sets.size())};
    for (std::size_t c = 0; c < sets.size(); ++c) {
        result.admissible_sets.push_back(open_star(k, sets[c]));
        for (Vertex v : sets[c])
            problem.choices[v].push_back(static_cast<int>(c));
    }
    for (Vertex v = 0; v < n; ++v)
        if (problem.choices[v].empty()) {
            // vertices missed by a truncated enumeration get singletons
            problem.choices[v].push_back(static_cast<int>(result.admissible_sets.size()));
            result.admissible_sets.push_back(open_star(k, {v}));
            ++problem.colours;
        }

    const std::uint64_t left = budget > cliques.nodes() ? budget - cliques.nodes() : 1;
    const auto found = detail::minimise_colouring(problem, left);
    result.certificate = detail::certificate_from_colouring(k, found.colour);
    result.certificate.level = level;
    result.value = result.certificate.achieved_order;
    result.exact = cliques.complete() && found.exact;
    result.nodes = cliques.nodes() + found.nodes;
    return result;
}

FunctionFamily pushforward_family(const AHSystem& sys, int i, const StageFamily& f, int j, int k)
{
    require(f.size() == sys.stage(i).size(), "stage family needs one family per block");
    const std::size_t count = f.front().members().size();
    for (std::size_t l = 0; l < f.size(); ++l) {
        require_same_complex(f[l].complex(), sys.block(i, static_cast<int>(l)).space, "stage family block");
        require(f[l].members().size() == count, "every block family needs the same number of members");
    }
    const auto legs = legs_between(sys, i, j, k);
    std::vector<Member> members(count);
    for (std::size_t m = 0; m < count; ++m)
        for (const Leg& leg : legs)
            for (const auto& e : f[leg.source].members()[m]) {
                PLFunction pulled = e.pull_back(leg.map);
                if (std::find(members[m].begin(), members[m].end(), pulled) == members[m].end())
                    members[m].push_back(std::move(pulled));
            }
    return FunctionFamily(sys.block(j, k).space, std::move(members));
}

MeanDimEstimate variation_mean_dimension_sequence(const AHSystem& sys, int i, const StageFamily& f, double epsilon,
                                                  int last_stage, int level, std::uint64_t budget)
{
    require(last_stage >= i && last_stage < sys.stage_count(), "truncation stage must satisfy i <= J < stage count");
    struct Job {
        int stage;
        int block;
    };
    std::vector<Job> jobs;
    for (int j = i; j <= last_stage; ++j)
        for (int k = 0; k < static_cast<int>(sys.stage(j).size()); ++k)
            jobs.push_back({j, k});

    std::vector<BlockEstimate> results(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t n) {
        const Job& job = jobs[n];
        const FunctionFamily pushed = pushforward_family(sys, i, f, job.stage, job.block);
        const auto r = variation_dimension(pushed, epsilon, level, budget);
        BlockEstimate& b = results[n];
        b.block = job.block;
        b.value = r.value;
        b.size = sys.block(job.stage, job.block).size;
        b.ratio = Rational(r.value, b.size);
        b.exact = r.exact;
        b.nodes = r.nodes;
        b.cover_elements = static_cast<int>(r.admissible_sets.size());
    });

    MeanDimEstimate est;
    est.base_stage = i;
    est.level = level;
    est.all_exact = true;
    std::size_t n = 0;
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

PartitionFamily partition_family_lower_bound(const Cover& a, int level)
{
    const PartitionOfUnity p = subordinate_partition(a, level);
    std::vector<Member> members;
    for (const auto& phi : p.functions)
        members.push_back({phi});
    return {FunctionFamily(p.subdivision.complex, std::move(members)), ord(a)};
}

}  // namespace ahmd
