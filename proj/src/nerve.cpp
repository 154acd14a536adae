#include "ahmd/nerve.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace ahmd {

PartitionOfUnity subordinate_partition(const Cover& a, int level)
{
    require(level >= 0, "subdivision level must be non-negative");
    PartitionOfUnity p;
    p.subdivision = subdivide(a.complex(), level);
    p.cover = lift(p.subdivision, a);
    const Complex& k = p.subdivision.complex;
    const int n = k.vertex_count();

    p.witness.assign(n, -1);
    for (Vertex v = 0; v < n; ++v) {
        for (std::size_t u = 0; u < p.cover.size(); ++u)
            if (k.cofaces(v).subset_of(p.cover[u].members())) {
                p.witness[v] = static_cast<int>(u);
                break;
            }
        if (p.witness[v] < 0)
            throw SubdivisionRequired("vertex " + std::to_string(v) + " has an open star inside no element at level " +
                                      std::to_string(level));
    }

    for (std::size_t u = 0; u < p.cover.size(); ++u) {
        std::vector<double> values(n, 0.0);
        for (Vertex v = 0; v < n; ++v)
            if (p.witness[v] == static_cast<int>(u))
                values[v] = 1.0;
        p.functions.emplace_back(k, std::move(values));

        Vertex anchor = -1;
        for (Vertex v = 0; v < n && anchor < 0; ++v)
            if (k.cofaces(v).subset_of(p.cover[u].members()))
                anchor = v;
        if (anchor < 0)
            anchor = k.vertices_of_closure(p.cover[u].members()).front();
        p.anchors.push_back(anchor);
    }
    verify_partition(p);
    return p;
}

void verify_partition(const PartitionOfUnity& p)
{
    const Complex& k = p.subdivision.complex;
    ensure(p.functions.size() == p.cover.size(), "partition: one function per element");
    for (Vertex v = 0; v < k.vertex_count(); ++v) {
        double sum = 0.0;
        for (std::size_t u = 0; u < p.functions.size(); ++u) {
            const double x = p.functions[u](v);
            ensure(x >= 0.0, "partition: negative value");
            if (x > 0.0)
                ensure(k.cofaces(v).subset_of(p.cover[u].members()), "partition: support leaves its element");
            sum += x;
        }
        ensure(std::abs(sum - 1.0) <= 1e-12, "partition: values do not sum to one");
    }
}

PLFunction theta(const PartitionOfUnity& p, const PLFunction& f)
{
    const Complex& k = p.subdivision.complex;
    require_same_complex(f.complex(), k, "theta");
    std::vector<double> values(k.vertex_count(), 0.0);
    for (std::size_t u = 0; u < p.functions.size(); ++u) {
        const double at_anchor = f(p.anchors[u]);
        for (Vertex v = 0; v < k.vertex_count(); ++v)
            values[v] += p.functions[u](v) * at_anchor;
    }
    return PLFunction(k, std::move(values));
}

NerveComplex nerve(const Cover& a)
{
    const Complex& c = a.complex();
    std::set<Simplex> facets;
    for (SimplexId s : c.maximal())
        facets.insert(a.members_at(s));
    NerveComplex out;
    out.nerve = Complex::from_facets(static_cast<int>(a.size()), {facets.begin(), facets.end()});
    out.dimension = out.nerve.dimension();
    ensure(out.dimension == ord(a), "nerve dimension differs from the cover order");
    return out;
}

std::vector<std::vector<std::pair<int, double>>> nerve_map(const PartitionOfUnity& p)
{
    const Complex& k = p.subdivision.complex;
    std::vector<std::vector<std::pair<int, double>>> out(k.vertex_count());
    for (Vertex v = 0; v < k.vertex_count(); ++v)
        for (std::size_t u = 0; u < p.functions.size(); ++u)
            if (p.functions[u](v) != 0.0)
                out[v].emplace_back(static_cast<int>(u), p.functions[u](v));
    return out;
}

double nerve_extension(const std::vector<double>& vertex_values, const std::vector<std::pair<int, double>>& point)
{
    double total = 0.0;
    for (auto [u, w] : point) {
        require(u >= 0 && u < static_cast<int>(vertex_values.size()), "nerve vertex out of range");
        total += w * vertex_values[u];
    }
    return total;
}

}  // namespace ahmd
