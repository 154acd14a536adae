#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ahmd/simplicial.hpp"

namespace ahmd {

/// Finite cover of a complex by nonempty open sets.
class Cover {
public:
    Cover() = default;
    Cover(Complex complex, std::vector<OpenSet> elements);  // validates

    static Cover trivial(const Complex& c) { return Cover(c, {OpenSet::whole(c)}); }
    /// Open stars of the vertices, one element per vertex.
    static Cover vertex_stars(const Complex& c);

    const Complex& complex() const { return complex_; }
    const std::vector<OpenSet>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    const OpenSet& operator[](std::size_t i) const { return elements_[i]; }

    /// Indices of the elements containing simplex `id`.
    std::vector<int> members_at(SimplexId id) const;

    friend bool operator==(const Cover& a, const Cover& b)
    {
        return a.complex_ == b.complex_ && a.elements_ == b.elements_;
    }

private:
    Complex complex_;
    std::vector<OpenSet> elements_;
};

int ord(const Cover& a);

/// Drops repeated elements, keeping first occurrences.
Cover deduplicated(const Cover& a);
/// Keeps only elements not strictly contained in another (first copy of
/// equal ones). Refinement dimension is unchanged by this reduction.
Cover reduced(const Cover& a);
/// Same reduced form.
bool equivalent(const Cover& a, const Cover& b);
/// Every element of `fine` lies in some element of `coarse`.
bool refines(const Cover& fine, const Cover& coarse);

Cover join(const Cover& a, const Cover& b);
Cover pullback_cover(const SimplicialMap& f, const Cover& a);
Cover lift(const Subdivision& sd, const Cover& a);

struct RefinementCertificate {
    Cover cover;
    /// Index into the coarser cover for each element of `cover`.
    std::vector<int> witness;
    int achieved_order = 0;
    /// Subdivision level of `cover` relative to the coarse cover.
    int level = 0;
};

/// Independently rechecks both certificate invariants against the lift of
/// `coarse` to the certificate's level.
bool certificate_valid(const RefinementCertificate& cert, const Cover& coarse);

struct RefinementResult {
    int value = 0;
    RefinementCertificate certificate;
    bool exact = false;
    std::uint64_t nodes = 0;
};

/// Minimum order over shrinkings of the level-fold subdivision lift of `a`,
/// by branch and bound with a node budget. When `exact` is false the value
/// is the best order found before the budget ran out.
RefinementResult refinement_dimension(const Cover& a, int level, std::uint64_t budget);

/// Greedy shrinking of the lift; an upper bound for refinement_dimension.
RefinementCertificate greedy_refinement(const Cover& a, int level);

double mediant_bound(std::span<const double> numerators, std::span<const double> denominators,
                     std::span<const double> weights);

namespace detail {

/// Vertex-colouring form of the shrinking search. Colour c(v) must be drawn
/// from `choices[v]`; the cost of a colouring is the largest number of
/// distinct colours on a maximal simplex, minus one.
struct ColouringProblem {
    Complex complex;
    std::vector<std::vector<int>> choices;
    int colours = 0;
};

struct ColouringResult {
    std::vector<int> colour;
    int order = 0;
    bool exact = false;
    std::uint64_t nodes = 0;
};

ColouringResult minimise_colouring(const ColouringProblem& problem, std::uint64_t budget);

/// Builds the shrinking V_c = star(colour^-1(c)) with its witnesses.
RefinementCertificate certificate_from_colouring(const Complex& complex, const std::vector<int>& colour);

}  // namespace detail

}  // namespace ahmd
