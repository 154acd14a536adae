#include "ahmd/simplicial.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace ahmd {

// ---------------------------------------------------------------------------
// SimplexSet

SimplexSet::SimplexSet(std::size_t size, bool filled) : words_((size + 63) / 64, 0), size_(size)
{
    if (filled) {
        for (auto& w : words_)
            w = ~std::uint64_t{0};
        if (size % 64 != 0 && !words_.empty())
            words_.back() = (std::uint64_t{1} << (size % 64)) - 1;
    }
}

std::size_t SimplexSet::count() const
{
    std::size_t n = 0;
    for (auto w : words_)
        n += static_cast<std::size_t>(__builtin_popcountll(w));
    return n;
}

bool SimplexSet::empty() const
{
    return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

bool SimplexSet::subset_of(const SimplexSet& other) const
{
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~other.words_[i])
            return false;
    return true;
}

bool SimplexSet::intersects(const SimplexSet& other) const
{
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & other.words_[i])
            return true;
    return false;
}

SimplexSet& SimplexSet::operator&=(const SimplexSet& o)
{
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] &= o.words_[i];
    return *this;
}

SimplexSet& SimplexSet::operator|=(const SimplexSet& o)
{
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] |= o.words_[i];
    return *this;
}

SimplexSet& SimplexSet::operator-=(const SimplexSet& o)
{
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] &= ~o.words_[i];
    return *this;
}

std::vector<SimplexId> SimplexSet::ids() const
{
    std::vector<SimplexId> out;
    for_each([&](SimplexId id) { out.push_back(id); });
    return out;
}

// ---------------------------------------------------------------------------
// Complex

namespace detail {

struct ComplexData {
    int vertex_count = 0;
    int dimension = -1;
    std::vector<Simplex> simplices;
    std::map<Simplex, SimplexId> index;
    std::vector<SimplexId> maximal;
    std::vector<SimplexSet> up;
    std::vector<SimplexSet> down;
    std::vector<int> vertex_component;
    int components = 0;
};

}  // namespace detail

namespace {

bool simplex_order(const Simplex& a, const Simplex& b)
{
    if (a.size() != b.size())
        return a.size() < b.size();
    return a < b;
}

std::shared_ptr<const detail::ComplexData> build(int vertex_count, std::set<Simplex> simplex_set)
{
    auto d = std::make_shared<detail::ComplexData>();
    d->vertex_count = vertex_count;
    d->simplices.assign(simplex_set.begin(), simplex_set.end());
    std::sort(d->simplices.begin(), d->simplices.end(), simplex_order);
    const auto n = d->simplices.size();
    for (std::size_t i = 0; i < n; ++i) {
        d->index.emplace(d->simplices[i], static_cast<SimplexId>(i));
        d->dimension = std::max(d->dimension, static_cast<int>(d->simplices[i].size()) - 1);
    }

    d->up.assign(n, SimplexSet(n));
    d->down.assign(n, SimplexSet(n));
    for (std::size_t i = 0; i < n; ++i) {
        const Simplex& s = d->simplices[i];
        // enumerate nonempty subsets of s
        const std::size_t k = s.size();
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
            Simplex f;
            for (std::size_t b = 0; b < k; ++b)
                if (mask >> b & 1u)
                    f.push_back(s[b]);
            const SimplexId fid = d->index.at(f);
            d->down[i].set(fid);
            d->up[fid].set(static_cast<SimplexId>(i));
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (d->up[i].count() == 1)
            d->maximal.push_back(static_cast<SimplexId>(i));

    // components from the 1-skeleton
    std::vector<int> parent(vertex_count);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& s : d->simplices)
        if (s.size() == 2)
            parent[find(s[0])] = find(s[1]);
    std::map<int, int> label;
    d->vertex_component.resize(vertex_count);
    for (int v = 0; v < vertex_count; ++v) {
        auto [it, inserted] = label.emplace(find(v), static_cast<int>(label.size()));
        d->vertex_component[v] = it->second;
    }
    d->components = static_cast<int>(label.size());
    return d;
}

void validate_simplex(int vertex_count, Simplex& s, bool sort)
{
    require(!s.empty(), "empty simplex");
    if (sort)
        std::sort(s.begin(), s.end());
    for (std::size_t i = 0; i < s.size(); ++i) {
        require(s[i] >= 0 && s[i] < vertex_count,
                "vertex index " + std::to_string(s[i]) + " out of range [0, " + std::to_string(vertex_count) + ")");
        require(i == 0 || s[i] != s[i - 1], "repeated vertex in simplex");
    }
    require(s.size() <= 20, "simplex dimension too large");
}

}  // namespace

Complex::Complex() : data_(build(0, {})) {}

Complex Complex::from_facets(int vertex_count, std::vector<Simplex> facets)
{
    require(vertex_count >= 0, "negative vertex count");
    std::set<Simplex> all;
    for (int v = 0; v < vertex_count; ++v)
        all.insert(Simplex{v});
    for (auto& f : facets) {
        validate_simplex(vertex_count, f, true);
        const std::size_t k = f.size();
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
            Simplex sub;
            for (std::size_t b = 0; b < k; ++b)
                if (mask >> b & 1u)
                    sub.push_back(f[b]);
            all.insert(std::move(sub));
        }
    }
    return Complex(build(vertex_count, std::move(all)));
}

Complex Complex::from_simplices(int vertex_count, std::vector<Simplex> simplices)
{
    require(vertex_count >= 0, "negative vertex count");
    std::set<Simplex> all;
    for (auto& s : simplices) {
        validate_simplex(vertex_count, s, true);
        all.insert(s);
    }
    for (int v = 0; v < vertex_count; ++v)
        require(all.count(Simplex{v}) == 1, "face-closure: vertex " + std::to_string(v) + " is not a 0-simplex");
    for (const auto& s : all) {
        for (std::size_t skip = 0; s.size() > 1 && skip < s.size(); ++skip) {
            Simplex f;
            for (std::size_t b = 0; b < s.size(); ++b)
                if (b != skip)
                    f.push_back(s[b]);
            require(all.count(f) == 1, "face-closure: a facet of a listed simplex is missing");
        }
    }
    return Complex(build(vertex_count, std::move(all)));
}

Complex Complex::path(int vertices)
{
    require(vertices >= 1, "path needs at least one vertex");
    std::vector<Simplex> edges;
    for (int v = 0; v + 1 < vertices; ++v)
        edges.push_back({v, v + 1});
    return from_facets(vertices, std::move(edges));
}

Complex Complex::cycle(int vertices)
{
    require(vertices >= 3, "cycle needs at least three vertices");
    std::vector<Simplex> edges;
    for (int v = 0; v < vertices; ++v)
        edges.push_back({v, (v + 1) % vertices});
    return from_facets(vertices, std::move(edges));
}

Complex Complex::full_simplex(int dimension)
{
    require(dimension >= 0, "negative dimension");
    Simplex s(dimension + 1);
    std::iota(s.begin(), s.end(), 0);
    return from_facets(dimension + 1, {s});
}

Complex Complex::simplex_boundary(int dimension)
{
    require(dimension >= 1, "boundary needs dimension >= 1");
    std::vector<Simplex> facets;
    for (int skip = 0; skip <= dimension; ++skip) {
        Simplex f;
        for (int v = 0; v <= dimension; ++v)
            if (v != skip)
                f.push_back(v);
        facets.push_back(std::move(f));
    }
    return from_facets(dimension + 1, std::move(facets));
}

int Complex::vertex_count() const { return data_->vertex_count; }
std::size_t Complex::size() const { return data_->simplices.size(); }
int Complex::dimension() const { return data_->dimension; }
const Simplex& Complex::simplex(SimplexId id) const { return data_->simplices.at(id); }

std::optional<SimplexId> Complex::find(const Simplex& s) const
{
    auto it = data_->index.find(s);
    if (it == data_->index.end())
        return std::nullopt;
    return it->second;
}

SimplexId Complex::id_of(const Simplex& s) const
{
    Simplex sorted = s;
    std::sort(sorted.begin(), sorted.end());
    auto id = find(sorted);
    require(id.has_value(), "not a simplex of the complex");
    return *id;
}

const std::vector<SimplexId>& Complex::maximal() const { return data_->maximal; }
const SimplexSet& Complex::cofaces(SimplexId id) const { return data_->up.at(id); }
const SimplexSet& Complex::faces(SimplexId id) const { return data_->down.at(id); }
const std::vector<int>& Complex::vertex_components() const { return data_->vertex_component; }
int Complex::component_count() const { return data_->components; }

SimplexSet Complex::up_closure(const SimplexSet& s) const
{
    SimplexSet out = none();
    s.for_each([&](SimplexId id) { out |= data_->up[id]; });
    return out;
}

SimplexSet Complex::down_closure(const SimplexSet& s) const
{
    SimplexSet out = none();
    s.for_each([&](SimplexId id) { out |= data_->down[id]; });
    return out;
}

bool Complex::is_up_closed(const SimplexSet& s) const
{
    bool ok = true;
    s.for_each([&](SimplexId id) { ok = ok && data_->up[id].subset_of(s); });
    return ok;
}

bool Complex::is_down_closed(const SimplexSet& s) const
{
    bool ok = true;
    s.for_each([&](SimplexId id) { ok = ok && data_->down[id].subset_of(s); });
    return ok;
}

std::vector<Vertex> Complex::closed_star_vertices(Vertex v) const
{
    std::vector<char> seen(vertex_count(), 0);
    data_->up.at(v).for_each([&](SimplexId id) {
        for (Vertex w : data_->simplices[id])
            seen[w] = 1;
    });
    std::vector<Vertex> out;
    for (int w = 0; w < vertex_count(); ++w)
        if (seen[w])
            out.push_back(w);
    return out;
}

std::vector<Vertex> Complex::vertices_of_closure(const SimplexSet& s) const
{
    std::vector<char> seen(vertex_count(), 0);
    s.for_each([&](SimplexId id) {
        for (Vertex w : data_->simplices[id])
            seen[w] = 1;
    });
    std::vector<Vertex> out;
    for (int w = 0; w < vertex_count(); ++w)
        if (seen[w])
            out.push_back(w);
    return out;
}

bool operator==(const Complex& a, const Complex& b)
{
    if (a.data_ == b.data_)
        return true;
    return a.data_->vertex_count == b.data_->vertex_count && a.data_->simplices == b.data_->simplices;
}

void require_same_complex(const Complex& a, const Complex& b, const char* what)
{
    if (!(a == b))
        throw ValidationError(std::string("complex mismatch: ") + what);
}

// ---------------------------------------------------------------------------
// OpenSet / ClosedSet

OpenSet::OpenSet(Complex complex, SimplexSet members) : complex_(std::move(complex)), members_(std::move(members))
{
    require(members_.universe() == complex_.size(), "open set sized for a different complex");
    require(complex_.is_up_closed(members_), "up-closed: open set is not closed under cofaces");
}

OpenSet OpenSet::unchecked(Complex complex, SimplexSet members)
{
    OpenSet u;
    u.complex_ = std::move(complex);
    u.members_ = std::move(members);
    return u;
}

OpenSet operator&(const OpenSet& a, const OpenSet& b)
{
    require_same_complex(a.complex_, b.complex_, "open set intersection");
    return OpenSet::unchecked(a.complex_, a.members_ & b.members_);
}

OpenSet operator|(const OpenSet& a, const OpenSet& b)
{
    require_same_complex(a.complex_, b.complex_, "open set union");
    return OpenSet::unchecked(a.complex_, a.members_ | b.members_);
}

ClosedSet::ClosedSet(Complex complex, SimplexSet members) : complex_(std::move(complex)), members_(std::move(members))
{
    require(members_.universe() == complex_.size(), "closed set sized for a different complex");
    require(complex_.is_down_closed(members_), "down-closed: closed set is not a subcomplex");
}

ClosedSet ClosedSet::unchecked(Complex complex, SimplexSet members)
{
    ClosedSet e;
    e.complex_ = std::move(complex);
    e.members_ = std::move(members);
    return e;
}

// ---------------------------------------------------------------------------
// SimplicialMap

SimplicialMap::SimplicialMap(Complex domain, Complex codomain, std::vector<Vertex> vertex_image)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), vertex_image_(std::move(vertex_image))
{
    require(static_cast<int>(vertex_image_.size()) == domain_.vertex_count(),
            "simplicial map needs one image per domain vertex");
    for (Vertex w : vertex_image_)
        require(w >= 0 && w < codomain_.vertex_count(), "simplicial map image vertex out of range");
    simplex_image_.resize(domain_.size());
    for (std::size_t id = 0; id < domain_.size(); ++id) {
        Simplex img;
        for (Vertex v : domain_.simplex(static_cast<SimplexId>(id)))
            img.push_back(vertex_image_[v]);
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        auto found = codomain_.find(img);
        require(found.has_value(), "simplicial map sends a simplex to a non-simplex");
        simplex_image_[id] = *found;
    }
}

SimplicialMap SimplicialMap::identity(const Complex& c)
{
    std::vector<Vertex> img(c.vertex_count());
    std::iota(img.begin(), img.end(), 0);
    return SimplicialMap(c, c, std::move(img));
}

SimplicialMap SimplicialMap::constant(const Complex& domain, const Complex& codomain, Vertex target)
{
    return SimplicialMap(domain, codomain, std::vector<Vertex>(domain.vertex_count(), target));
}

bool SimplicialMap::is_identity() const
{
    if (!(domain_ == codomain_))
        return false;
    for (std::size_t v = 0; v < vertex_image_.size(); ++v)
        if (vertex_image_[v] != static_cast<Vertex>(v))
            return false;
    return true;
}

bool SimplicialMap::is_constant() const
{
    return std::adjacent_find(vertex_image_.begin(), vertex_image_.end(), std::not_equal_to<>()) ==
           vertex_image_.end();
}

SimplicialMap SimplicialMap::after(const SimplicialMap& inner) const
{
    require_same_complex(inner.codomain_, domain_, "map composition");
    std::vector<Vertex> img(inner.domain_.vertex_count());
    for (std::size_t v = 0; v < img.size(); ++v)
        img[v] = vertex_image_[inner.vertex_image_[v]];
    return SimplicialMap(inner.domain_, codomain_, std::move(img));
}

// ---------------------------------------------------------------------------
// PLFunction

PLFunction::PLFunction(Complex complex, std::vector<double> vertex_values)
    : complex_(std::move(complex)), values_(std::move(vertex_values))
{
    require(static_cast<int>(values_.size()) == complex_.vertex_count(),
            "PL function needs one value per vertex");
}

PLFunction PLFunction::constant(const Complex& c, double value)
{
    return PLFunction(c, std::vector<double>(c.vertex_count(), value));
}

double PLFunction::min() const
{
    require(!values_.empty(), "PL function on an empty complex");
    return *std::min_element(values_.begin(), values_.end());
}

double PLFunction::max() const
{
    require(!values_.empty(), "PL function on an empty complex");
    return *std::max_element(values_.begin(), values_.end());
}

double PLFunction::oscillation_on(const SimplexSet& simplices) const
{
    const auto verts = complex_.vertices_of_closure(simplices);
    if (verts.empty())
        return 0.0;
    double lo = values_[verts[0]];
    double hi = lo;
    for (Vertex v : verts) {
        lo = std::min(lo, values_[v]);
        hi = std::max(hi, values_[v]);
    }
    return hi - lo;
}

PLFunction PLFunction::pull_back(const SimplicialMap& f) const
{
    require_same_complex(f.codomain(), complex_, "PL function pull-back");
    std::vector<double> out(f.domain().vertex_count());
    for (std::size_t v = 0; v < out.size(); ++v)
        out[v] = values_[f(static_cast<Vertex>(v))];
    return PLFunction(f.domain(), std::move(out));
}

// ---------------------------------------------------------------------------
// Subdivision

Subdivision barycentric_subdivide(const Complex& c)
{
    // vertices of sd(c) are the simplices of c, simplices are chains under
    // face inclusion listed in increasing id order
    const auto n = c.size();
    std::vector<Simplex> chains;
    Simplex chain;
    auto extend = [&](auto&& self, SimplexId top) -> void {
        chains.push_back(chain);
        c.cofaces(top).for_each([&](SimplexId up) {
            if (up == top)
                return;
            chain.push_back(up);
            self(self, up);
            chain.pop_back();
        });
    };
    for (std::size_t s = 0; s < n; ++s) {
        chain = {static_cast<Vertex>(s)};
        extend(extend, static_cast<SimplexId>(s));
    }

    Subdivision sd;
    sd.base = c;
    sd.level = 1;
    sd.complex = Complex::from_simplices(static_cast<int>(n), chains);
    sd.carrier.resize(sd.complex.size());
    for (std::size_t id = 0; id < sd.complex.size(); ++id)
        sd.carrier[id] = sd.complex.simplex(static_cast<SimplexId>(id)).back();
    sd.coordinates.resize(n);
    sd.barycenter.resize(n);
    for (std::size_t s = 0; s < n; ++s) {
        const auto& verts = c.simplex(static_cast<SimplexId>(s));
        const double w = 1.0 / static_cast<double>(verts.size());
        for (Vertex v : verts)
            sd.coordinates[s].emplace_back(v, w);
        sd.barycenter[s] = static_cast<Vertex>(s);
    }
    return sd;
}

Subdivision subdivide(const Complex& c, int level)
{
    require(level >= 0, "subdivision level must be non-negative");
    Subdivision acc;
    acc.base = c;
    acc.complex = c;
    acc.level = 0;
    acc.carrier.resize(c.size());
    std::iota(acc.carrier.begin(), acc.carrier.end(), 0);
    acc.coordinates.resize(c.vertex_count());
    for (int v = 0; v < c.vertex_count(); ++v)
        acc.coordinates[v] = {{v, 1.0}};
    acc.barycenter.resize(c.size());
    for (std::size_t s = 0; s < c.size(); ++s)
        acc.barycenter[s] = static_cast<Vertex>(s);  // only meaningful for 0-simplices at level 0

    for (int step = 0; step < level; ++step) {
        Subdivision next = barycentric_subdivide(acc.complex);
        Subdivision merged;
        merged.base = c;
        merged.complex = next.complex;
        merged.level = acc.level + 1;
        merged.carrier.resize(next.complex.size());
        for (std::size_t id = 0; id < next.complex.size(); ++id)
            merged.carrier[id] = acc.carrier[next.carrier[id]];
        merged.coordinates.resize(next.complex.vertex_count());
        for (int v = 0; v < next.complex.vertex_count(); ++v) {
            std::map<Vertex, double> coords;
            for (auto [mid, w] : next.coordinates[v])
                for (auto [base_v, w2] : acc.coordinates[mid])
                    coords[base_v] += w * w2;
            merged.coordinates[v].assign(coords.begin(), coords.end());
        }
        merged.barycenter.resize(c.size());
        for (std::size_t s = 0; s < c.size(); ++s) {
            // barycenter of base simplex s at the previous level is a vertex
            // there (or, at level 0, the simplex itself); the 0-simplex of it
            // becomes the new vertex with the same id.
            const SimplexId prev = (acc.level == 0) ? static_cast<SimplexId>(s) : acc.barycenter[s];
            merged.barycenter[s] = static_cast<Vertex>(prev);
        }
        acc = std::move(merged);
    }
    return acc;
}

OpenSet Subdivision::lift(const OpenSet& u) const
{
    require_same_complex(u.complex(), base, "lift of open set");
    SimplexSet out = complex.none();
    for (std::size_t id = 0; id < carrier.size(); ++id)
        if (u.contains(carrier[id]))
            out.set(static_cast<SimplexId>(id));
    return OpenSet::unchecked(complex, std::move(out));
}

ClosedSet Subdivision::lift(const ClosedSet& e) const
{
    require_same_complex(e.complex(), base, "lift of closed set");
    SimplexSet out = complex.none();
    for (std::size_t id = 0; id < carrier.size(); ++id)
        if (e.contains(carrier[id]))
            out.set(static_cast<SimplexId>(id));
    return ClosedSet::unchecked(complex, std::move(out));
}

PLFunction Subdivision::lift(const PLFunction& f) const
{
    require_same_complex(f.complex(), base, "lift of PL function");
    std::vector<double> out(complex.vertex_count(), 0.0);
    for (int v = 0; v < complex.vertex_count(); ++v)
        for (auto [bv, w] : coordinates[v])
            out[v] += w * f(bv);
    return PLFunction(complex, std::move(out));
}

SimplexSet Subdivision::carriers(const SimplexSet& s) const
{
    SimplexSet out = base.none();
    s.for_each([&](SimplexId id) { out.set(carrier[id]); });
    return out;
}

// ---------------------------------------------------------------------------
// operations

OpenSet preimage(const SimplicialMap& f, const OpenSet& u)
{
    require_same_complex(u.complex(), f.codomain(), "preimage");
    SimplexSet out = f.domain().none();
    for (std::size_t id = 0; id < f.domain().size(); ++id)
        if (u.contains(f.image(static_cast<SimplexId>(id))))
            out.set(static_cast<SimplexId>(id));
    return OpenSet::unchecked(f.domain(), std::move(out));
}

OpenSet open_star(const Complex& c, std::span<const Vertex> vertices)
{
    std::vector<char> chosen(c.vertex_count(), 0);
    for (Vertex v : vertices) {
        require(v >= 0 && v < c.vertex_count(), "open star vertex " + std::to_string(v) + " out of range");
        chosen[v] = 1;
    }
    SimplexSet out = c.none();
    for (std::size_t id = 0; id < c.size(); ++id)
        for (Vertex v : c.simplex(static_cast<SimplexId>(id)))
            if (chosen[v]) {
                out.set(static_cast<SimplexId>(id));
                break;
            }
    return OpenSet::unchecked(c, std::move(out));
}

OpenSet open_star(const Complex& c, std::initializer_list<Vertex> vertices)
{
    return open_star(c, std::span<const Vertex>(vertices.begin(), vertices.size()));
}

ClosureBoundary closure_and_boundary(const OpenSet& u)
{
    const Complex& c = u.complex();
    SimplexSet closure = c.down_closure(u.members());
    // interior simplices: every coface (itself included) lies in u
    SimplexSet interior = c.none();
    u.members().for_each([&](SimplexId id) {
        if (c.cofaces(id).subset_of(u.members()))
            interior.set(id);
    });
    SimplexSet boundary = closure - interior;
    return {ClosedSet::unchecked(c, std::move(closure)), ClosedSet::unchecked(c, std::move(boundary))};
}

ClosedSet star_neighbourhood(const ClosedSet& e, int radius)
{
    require(radius >= 0, "neighbourhood radius must be non-negative");
    const Complex& c = e.complex();
    SimplexSet current = e.members();
    for (int r = 0; r < radius; ++r) {
        SimplexSet grown = c.up_closure(current);
        current = c.down_closure(grown);
    }
    return ClosedSet::unchecked(c, std::move(current));
}

}  // namespace ahmd
