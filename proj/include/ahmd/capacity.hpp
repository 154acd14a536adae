#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ahmd/ah_system.hpp"
#include "ahmd/rational.hpp"

namespace ahmd {

/// Trace profile x -> Tr(f(x)) of a central positive element on one block.
struct TraceData {
    int block = 0;
    PLFunction profile;
};

template <class T>
struct CapacityStage {
    int stage = 0;
    std::vector<T> values;  // one per block
    T max{};
};

/// Per-(j, k) capacities for j = i..J. `limit` is the last stage maximum.
template <class T>
struct CapacityReport {
    std::vector<CapacityStage<T>> stages;
    T limit{};
    bool monotone = true;
};

/// Pushes a trace profile through every leg into each block of stage j.
/// Leg ranks multiply the summands.
std::vector<std::vector<PLFunction>> pushforward_profiles(const AHSystem& sys, int i,
                                                          const std::vector<TraceData>& f, int last_stage);

CapacityReport<double> ocap_element(const AHSystem& sys, int i, int l, const TraceData& f, int last_stage);
CapacityReport<Rational> ocap_closed_set(const AHSystem& sys, int i, int l, const ClosedSet& e, int last_stage);

/// Capacity of an arbitrary family of simplices of block (i, l): a target
/// simplex counts a leg when the leg image lies in `hits`.
CapacityReport<Rational> hit_capacity(const AHSystem& sys, int i, int l, const SimplexSet& hits, int last_stage);

double trace_variation(const std::vector<Block>& blocks, const std::vector<TraceData>& f);

struct SvtReport {
    std::optional<int> satisfied_by_stage;
    std::vector<double> values;  // stages i..J
};

SvtReport svt_probe(const AHSystem& sys, int i, const std::vector<TraceData>& f, int last_stage, double epsilon);

struct SbpCandidate {
    int radius = 0;
    OpenSet set;  // on the subdivision
    Rational value;
};

struct SbpReport {
    int level = 0;
    std::vector<SbpCandidate> candidates;
    std::optional<std::size_t> best;  // index into candidates
    bool found = false;
    /// Values are exact at level 0 and upper bounds otherwise.
    bool exact = false;
};

/// Neighbourhoods of `center` (a simplex of u) grown by 1-skeleton radius at
/// the given subdivision level while they stay inside u. Each is scored by
/// the stage-J capacity of its boundary.
SbpReport sbp_probe(const AHSystem& sys, int i, int l, const OpenSet& u, SimplexId center, int last_stage,
                    double epsilon, int level);

struct SbrpReport {
    int level = 0;
    int radius = 0;
    /// Best shrinking found, on the subdivision; witness i is element i.
    std::optional<std::vector<OpenSet>> refinement;
    Rational value;
    bool found = false;
    bool exhaustive = false;
    /// False when some vertex fits in no element with its closed star.
    bool feasible = true;
    std::uint64_t nodes = 0;
};

/// Searches shrinkings V_c = star(c^-1(i)) with closed stars inside U_i and
/// scores the star-neighbourhood of radius `radius` of the union of their
/// boundaries by its capacity at block (j, k).
SbrpReport sbrp_probe(const AHSystem& sys, int i, int l, const Cover& a, double epsilon, int j, int k, int radius,
                      int level, std::uint64_t budget);

/// Capacity at (j, k) of the boundary union of a shrinking, shared with the
/// probe so callers can score their own candidates.
Rational shrinking_boundary_capacity(const AHSystem& sys, int i, int l, const Subdivision& sd,
                                     const std::vector<OpenSet>& shrinking, int j, int k, int radius);

}  // namespace ahmd
