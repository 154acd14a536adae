#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ahmd/ah_system.hpp"
#include "ahmd/rational.hpp"

namespace ahmd {

/// An open set carrying one projection class. `origin` identifies the
/// projection the class was restricted from; pairs with equal set, label
/// and origin are the same pair.
struct BranchedPair {
    OpenSet set;
    ProjectionClass projection;
    int origin = 0;
};

class BranchedCover {
public:
    BranchedCover() = default;
    /// Validates that the sets cover and that equal labels carry equal ranks.
    /// Duplicate pairs are dropped.
    BranchedCover(Complex complex, std::vector<BranchedPair> pairs);
    /// Restrictions of one projection to every element of `a`.
    static BranchedCover from_cover(const Cover& a, const ProjectionClass& projection, int origin = 0);

    const Complex& complex() const { return complex_; }
    const std::vector<BranchedPair>& pairs() const { return pairs_; }
    /// Distinct underlying sets, in first-appearance order.
    Cover underlying() const;

private:
    Complex complex_;
    std::vector<BranchedPair> pairs_;
};

/// min over labels of (number of distinct origins) * rank, for one set.
int class_multiplicity(const std::vector<BranchedPair>& classes);
/// Minimum of class_multiplicity over the distinct sets.
int multiplicity(const BranchedCover& bc);

BranchedCover branched_join(const BranchedCover& a, const BranchedCover& b);
/// Each W of b receives the classes of every pair whose set contains W.
BranchedCover induce(const BranchedCover& bc, const Cover& b);

/// Branched pullback of a cover through one leg with the given class.
BranchedCover branched_pullback(const SimplicialMap& f, const Cover& a, const ProjectionClass& projection, int origin);

/// Classes for the legs into one target block, in legs_between order.
using LegClasses = std::vector<ProjectionClass>;

struct CuntzResult {
    Rational value;
    int order = 0;
    int multiplicity = 1;
    RefinementCertificate certificate;  // refines the ordinary join
    BranchedCover branched;             // the joined branched cover
    bool exact = false;
    std::uint64_t nodes = 0;
};

/// Minimises ord(beta) / mul(Ind(beta)) over shrinkings beta of the joined
/// pullback cover into block (j, k) at the given subdivision level. A leg's
/// class rank is scaled by its source block size, which also tags the label
/// when above one; `classes` overrides the classes stored on the legs.
CuntzResult cuntz_ratio(const AHSystem& sys, int i, const StageCover& a, int j, int k,
                        const std::optional<LegClasses>& classes, int level, std::uint64_t budget);

/// Projection classes for every leg of every connecting map:
/// pairing[map][target block][leg].
using Pairing = std::vector<std::vector<std::vector<ProjectionClass>>>;

/// The same system with the leg classes replaced; unitality is rechecked.
AHSystem with_pairing(const AHSystem& sys, const Pairing& pairing);

struct CuntzStage {
    int stage = 0;
    std::vector<Rational> blocks;  // min over pairings, per block
    Rational value;                // max over blocks
    bool exact = false;
};

/// r_j(a) for j = i + 1..J, minimised over the given pairings (the system's
/// own classes when empty).
std::vector<CuntzStage> cuntz_mean_dimension_sequence(const AHSystem& sys, int i, const StageCover& a, int last_stage,
                                                      int level, std::uint64_t budget,
                                                      const std::vector<Pairing>& pairings = {});

}  // namespace ahmd
