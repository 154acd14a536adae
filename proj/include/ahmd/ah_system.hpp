#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ahmd/cover.hpp"
#include "ahmd/rational.hpp"

namespace ahmd {

/// Murray-von Neumann class of a projection, modelled as a label with a rank.
struct ProjectionClass {
    std::string label = "p";
    int rank = 1;
    friend bool operator==(const ProjectionClass&, const ProjectionClass&) = default;
};

/// One homogeneous summand: a connected base space and a matrix size.
struct Block {
    Complex space;
    int size = 1;
    friend bool operator==(const Block&, const Block&) = default;
};

/// One eigenvalue map of a connecting map: `map` runs from the target
/// block's space to the space of source block `source`.
struct Leg {
    int source = 0;
    SimplicialMap map;
    ProjectionClass projection;
    friend bool operator==(const Leg&, const Leg&) = default;
};

/// Diagonal connecting map between two stages; legs are grouped by target
/// block and kept in storage order.
struct DiagonalMap {
    std::vector<std::vector<Leg>> legs;

    int multiplicity(int source, int target) const;
    int multiplicity(int target) const { return static_cast<int>(legs.at(target).size()); }
    friend bool operator==(const DiagonalMap&, const DiagonalMap&) = default;
};

class AHSystem {
public:
    AHSystem() = default;
    /// Validates block connectivity, leg domains and unitality.
    AHSystem(std::vector<std::vector<Block>> stages, std::vector<DiagonalMap> maps);

    int stage_count() const { return static_cast<int>(stages_.size()); }
    const std::vector<Block>& stage(int i) const;
    const Block& block(int i, int l) const;
    /// Connecting map from stage i to stage i + 1.
    const DiagonalMap& map(int i) const;

    const std::vector<std::vector<Block>>& stages() const { return stages_; }
    const std::vector<DiagonalMap>& maps() const { return maps_; }

    friend bool operator==(const AHSystem&, const AHSystem&) = default;

private:
    std::vector<std::vector<Block>> stages_;
    std::vector<DiagonalMap> maps_;
};

/// Composite map from stage i to stage j (i < j). For each target block the
/// legs are ordered by last-step leg first, then by the composite leg it
/// extends. Projection labels compose as "inner.outer", ranks multiply.
DiagonalMap compose_maps(const AHSystem& sys, int i, int j);

/// Legs into block (j, k) from stage i; j == i yields the identity leg.
std::vector<Leg> legs_between(const AHSystem& sys, int i, int j, int k);

/// Per-block covers of a stage; one cover per block.
using StageCover = std::vector<Cover>;

/// Join over every leg into (j, k) of the pulled-back source-block cover.
Cover pullback_stage_cover(const AHSystem& sys, int i, int j, int k, const StageCover& a);

/// Reduced pulled-back covers of every block of stage j, computed one
/// connecting map at a time.
std::vector<Cover> pulled_back_stage(const AHSystem& sys, int i, int j, const StageCover& a);

struct BlockEstimate {
    int block = 0;
    int value = 0;
    int size = 1;
    Rational ratio;
    bool exact = false;
    std::uint64_t nodes = 0;
    int cover_elements = 0;
};

struct StageEstimate {
    int stage = 0;
    std::vector<BlockEstimate> blocks;
    Rational max_ratio;
    bool exact = false;
};

struct MeanDimEstimate {
    int base_stage = 0;
    int level = 0;
    std::vector<StageEstimate> stages;
    bool all_exact = false;
    bool non_increasing = false;
};

MeanDimEstimate mean_dimension_sequence(const AHSystem& sys, int i, const StageCover& a, int last_stage, int level,
                                        std::uint64_t budget);

/// Single-block stages over a path; stage n -> n + 1 has m[n] - 1 identity
/// legs followed by one constant leg at point_vertices[n].
AHSystem build_goodearl(const std::vector<int>& m, const std::vector<int>& point_vertices, int path_resolution);

/// Stages C(X), M_2(C(X)), M_4(C(X)), ... with legs id and sigma.
AHSystem build_ah_model(const SimplicialMap& sigma, int stages);

void validate_stage_cover(const AHSystem& sys, int i, const StageCover& a);

}  // namespace ahmd
