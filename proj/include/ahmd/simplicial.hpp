#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ahmd/errors.hpp"

namespace ahmd {

using Vertex = int;
using SimplexId = int;
using Simplex = std::vector<Vertex>;  // sorted, nonempty

/// Dynamic bitset indexed by simplex id.
class SimplexSet {
public:
    SimplexSet() = default;
    explicit SimplexSet(std::size_t size, bool filled = false);

    std::size_t universe() const { return size_; }
    bool test(SimplexId id) const { return (words_[id >> 6] >> (id & 63)) & 1u; }
    void set(SimplexId id) { words_[id >> 6] |= std::uint64_t{1} << (id & 63); }
    void reset(SimplexId id) { words_[id >> 6] &= ~(std::uint64_t{1} << (id & 63)); }

    std::size_t count() const;
    bool empty() const;
    bool subset_of(const SimplexSet& other) const;
    bool intersects(const SimplexSet& other) const;

    SimplexSet& operator&=(const SimplexSet& o);
    SimplexSet& operator|=(const SimplexSet& o);
    SimplexSet& operator-=(const SimplexSet& o);
    friend SimplexSet operator&(SimplexSet a, const SimplexSet& b) { return a &= b; }
    friend SimplexSet operator|(SimplexSet a, const SimplexSet& b) { return a |= b; }
    friend SimplexSet operator-(SimplexSet a, const SimplexSet& b) { return a -= b; }

    friend bool operator==(const SimplexSet&, const SimplexSet&) = default;
    friend auto operator<=>(const SimplexSet& a, const SimplexSet& b)
    {
        if (auto c = a.size_ <=> b.size_; c != 0)
            return c;
        return a.words_ <=> b.words_;
    }

    std::vector<SimplexId> ids() const;

    template <class Fn>
    void for_each(Fn&& fn) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                const int b = __builtin_ctzll(bits);
                fn(static_cast<SimplexId>(w * 64 + b));
                bits &= bits - 1;
            }
        }
    }

private:
    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
};

namespace detail {
struct ComplexData;
}

/// Finite abstract simplicial complex. Immutable; copies share storage.
///
/// Simplices are numbered by (dimension, lexicographic order), so the
/// 0-simplex {v} always has id v.
class Complex {
public:
    Complex();

    /// Closes the given simplices under taking faces.
    static Complex from_facets(int vertex_count, std::vector<Simplex> facets);
    /// The simplex list must already be face-closed; it is validated.
    static Complex from_simplices(int vertex_count, std::vector<Simplex> simplices);

    static Complex path(int vertices);
    static Complex cycle(int vertices);
    static Complex full_simplex(int dimension);
    static Complex simplex_boundary(int dimension);

    int vertex_count() const;
    std::size_t size() const;
    int dimension() const;

    const Simplex& simplex(SimplexId id) const;
    std::optional<SimplexId> find(const Simplex& s) const;
    SimplexId id_of(const Simplex& s) const;

    const std::vector<SimplexId>& maximal() const;
    /// All simplices containing `id`, including itself.
    const SimplexSet& cofaces(SimplexId id) const;
    /// All faces of `id`, including itself.
    const SimplexSet& faces(SimplexId id) const;

    const std::vector<int>& vertex_components() const;
    int component_count() const;

    SimplexSet all() const { return SimplexSet(size(), true); }
    SimplexSet none() const { return SimplexSet(size(), false); }

    SimplexSet up_closure(const SimplexSet& s) const;
    SimplexSet down_closure(const SimplexSet& s) const;
    bool is_up_closed(const SimplexSet& s) const;
    bool is_down_closed(const SimplexSet& s) const;

    /// Vertices of the closed star of v (v and its neighbours).
    std::vector<Vertex> closed_star_vertices(Vertex v) const;
    /// Vertex set of the closure of the given simplices.
    std::vector<Vertex> vertices_of_closure(const SimplexSet& s) const;

    bool same_as(const Complex& other) const { return data_ == other.data_; }
    friend bool operator==(const Complex& a, const Complex& b);

private:
    explicit Complex(std::shared_ptr<const detail::ComplexData> d) : data_(std::move(d)) {}
    std::shared_ptr<const detail::ComplexData> data_;
};

void require_same_complex(const Complex& a, const Complex& b, const char* what);

/// Up-closed simplex family: a union of open simplex interiors.
class OpenSet {
public:
    OpenSet() = default;
    OpenSet(Complex complex, SimplexSet members);  // validates up-closure
    static OpenSet unchecked(Complex complex, SimplexSet members);
    static OpenSet whole(const Complex& c) { return unchecked(c, c.all()); }

    const Complex& complex() const { return complex_; }
    const SimplexSet& members() const { return members_; }
    bool contains(SimplexId id) const { return members_.test(id); }
    bool empty() const { return members_.empty(); }
    std::size_t size() const { return members_.count(); }
    bool subset_of(const OpenSet& o) const { return members_.subset_of(o.members_); }

    friend OpenSet operator&(const OpenSet& a, const OpenSet& b);
    friend OpenSet operator|(const OpenSet& a, const OpenSet& b);
    friend bool operator==(const OpenSet& a, const OpenSet& b) { return a.members_ == b.members_; }

private:
    Complex complex_;
    SimplexSet members_;
};

/// Down-closed simplex family: a subcomplex.
class ClosedSet {
public:
    ClosedSet() = default;
    ClosedSet(Complex complex, SimplexSet members);  // validates down-closure
    static ClosedSet unchecked(Complex complex, SimplexSet members);

    const Complex& complex() const { return complex_; }
    const SimplexSet& members() const { return members_; }
    bool contains(SimplexId id) const { return members_.test(id); }
    bool empty() const { return members_.empty(); }
    std::size_t size() const { return members_.count(); }
    friend bool operator==(const ClosedSet& a, const ClosedSet& b) { return a.members_ == b.members_; }

private:
    Complex complex_;
    SimplexSet members_;
};

/// Vertex map carrying simplices to simplices.
class SimplicialMap {
public:
    SimplicialMap() = default;
    SimplicialMap(Complex domain, Complex codomain, std::vector<Vertex> vertex_image);

    static SimplicialMap identity(const Complex& c);
    static SimplicialMap constant(const Complex& domain, const Complex& codomain, Vertex target);

    const Complex& domain() const { return domain_; }
    const Complex& codomain() const { return codomain_; }
    const std::vector<Vertex>& vertex_image() const { return vertex_image_; }
    Vertex operator()(Vertex v) const { return vertex_image_[v]; }
    /// Image simplex id of a domain simplex.
    SimplexId image(SimplexId id) const { return simplex_image_[id]; }

    bool is_identity() const;
    bool is_constant() const;

    /// `this` after `inner`: x -> this(inner(x)).
    SimplicialMap after(const SimplicialMap& inner) const;

    friend bool operator==(const SimplicialMap& a, const SimplicialMap& b)
    {
        return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.vertex_image_ == b.vertex_image_;
    }

private:
    Complex domain_;
    Complex codomain_;
    std::vector<Vertex> vertex_image_;
    std::vector<SimplexId> simplex_image_;
};

/// Function affine on every simplex, given by its vertex values.
class PLFunction {
public:
    PLFunction() = default;
    PLFunction(Complex complex, std::vector<double> vertex_values);
    static PLFunction constant(const Complex& c, double value);

    const Complex& complex() const { return complex_; }
    const std::vector<double>& values() const { return values_; }
    double operator()(Vertex v) const { return values_[v]; }

    double min() const;
    double max() const;
    /// max - min over the vertices of the closure of the given simplices.
    double oscillation_on(const SimplexSet& simplices) const;

    /// this o f, a PL function on f's domain.
    PLFunction pull_back(const SimplicialMap& f) const;

    friend bool operator==(const PLFunction& a, const PLFunction& b)
    {
        return a.complex_ == b.complex_ && a.values_ == b.values_;
    }

private:
    Complex complex_;
    std::vector<double> values_;
};

/// An iterated barycentric subdivision together with its carrier data.
struct Subdivision {
    Complex base;
    Complex complex;
    int level = 0;
    /// Carrier of each simplex of `complex`: the smallest base simplex
    /// whose closed realisation contains it.
    std::vector<SimplexId> carrier;
    /// Barycentric coordinates of each subdivision vertex in base vertices.
    std::vector<std::vector<std::pair<Vertex, double>>> coordinates;
    /// Vertex of `complex` sitting at the barycenter of each base simplex.
    std::vector<Vertex> barycenter;

    OpenSet lift(const OpenSet& u) const;
    ClosedSet lift(const ClosedSet& e) const;
    PLFunction lift(const PLFunction& f) const;
    /// Base simplices whose open interior meets the given set.
    SimplexSet carriers(const SimplexSet& s) const;
};

Subdivision barycentric_subdivide(const Complex& c);
Subdivision subdivide(const Complex& c, int level);

OpenSet preimage(const SimplicialMap& f, const OpenSet& u);
OpenSet open_star(const Complex& c, std::span<const Vertex> vertices);
OpenSet open_star(const Complex& c, std::initializer_list<Vertex> vertices);

struct ClosureBoundary {
    ClosedSet closure;
    ClosedSet boundary;
};
ClosureBoundary closure_and_boundary(const OpenSet& u);

/// Closed simplicial neighbourhood: closure of every simplex meeting e.
ClosedSet star_neighbourhood(const ClosedSet& e, int radius);

}  // namespace ahmd
