#pragma once

#include <utility>
#include <vector>

#include "ahmd/cover.hpp"

namespace ahmd {

/// Witness partition of unity on the level-fold subdivision of a cover.
struct PartitionOfUnity {
    Subdivision subdivision;
    Cover cover;  // the lifted cover, on subdivision.complex
    std::vector<PLFunction> functions;
    std::vector<Vertex> anchors;
    /// Element whose open set contains the open star of each vertex.
    std::vector<int> witness;
};

/// Each vertex goes to the lowest-index element containing its open star;
/// phi_U is the sum of the hat functions of the vertices sent to U.
PartitionOfUnity subordinate_partition(const Cover& a, int level);

/// Checks sum-to-one and subordination; throws InvariantViolation.
void verify_partition(const PartitionOfUnity& p);

/// Sum over U of phi_U * f(anchor_U). `f` lives on the subdivision.
PLFunction theta(const PartitionOfUnity& p, const PLFunction& f);

struct NerveComplex {
    Complex nerve;
    int dimension = 0;
};

NerveComplex nerve(const Cover& a);

/// Sparse nerve coordinates (element, phi_U(v)) of every subdivision vertex.
std::vector<std::vector<std::pair<int, double>>> nerve_map(const PartitionOfUnity& p);

/// Affine extension over the nerve of the values given at its vertices,
/// evaluated at a point in sparse barycentric coordinates.
double nerve_extension(const std::vector<double>& vertex_values, const std::vector<std::pair<int, double>>& point);

}  // namespace ahmd
