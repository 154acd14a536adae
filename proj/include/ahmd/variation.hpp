#pragma once

#include <cstdint>
#include <vector>

#include "ahmd/ah_system.hpp"

namespace ahmd {

/// Diagonal entries of one element, all on the same complex.
using Member = std::vector<PLFunction>;

class FunctionFamily {
public:
    FunctionFamily() = default;
    FunctionFamily(Complex complex, std::vector<Member> members);  // validates

    const Complex& complex() const { return complex_; }
    const std::vector<Member>& members() const { return members_; }
    FunctionFamily lift(const Subdivision& sd) const;

private:
    Complex complex_;
    std::vector<Member> members_;
};

/// Largest entry range over the vertices of the closure of u.
double oscillation(const Member& m, const OpenSet& u);

/// Every element has oscillation < epsilon for every member.
bool admissible(const FunctionFamily& f, const Cover& a, double epsilon);

struct VariationResult {
    int value = 0;
    /// Witnesses index `admissible_sets`, which already live on the
    /// subdivision; `level` records the subdivision level of the family.
    RefinementCertificate certificate;
    /// Maximal epsilon-admissible vertex sets, as open stars.
    std::vector<OpenSet> admissible_sets;
    bool exact = false;
    std::uint64_t nodes = 0;
};

/// Minimum order of an (F, epsilon)-admissible cover at the given level.
/// Throws SubdivisionRequired when a single closed vertex star already
/// oscillates by epsilon or more.
VariationResult variation_dimension(const FunctionFamily& f, double epsilon, int level, std::uint64_t budget);

/// One family per block of a stage, all with the same number of members.
using StageFamily = std::vector<FunctionFamily>;

/// Family on block (j, k): member m collects the pulled-back entries of
/// member m over every leg, identical entries kept once.
FunctionFamily pushforward_family(const AHSystem& sys, int i, const StageFamily& f, int j, int k);

MeanDimEstimate variation_mean_dimension_sequence(const AHSystem& sys, int i, const StageFamily& f, double epsilon,
                                                  int last_stage, int level, std::uint64_t budget);

struct PartitionFamily {
    FunctionFamily family;  // on the level-fold subdivision
    int d = 0;
};

/// One single-entry member per partition function of a, and d = ord(a).
PartitionFamily partition_family_lower_bound(const Cover& a, int level);

}  // namespace ahmd
