// Symmetric TSP domain: instances with zero-diagonal symmetric distance
// matrices, closed-cycle tour evaluation, reciprocal cost matrices, a TSPLIB
// EUC_2D reader, and the exhaustive oracle for small instances.
//
// Distances are exact (unrounded) Euclidean values; note that canonical
// TSPLIB rounds EUC_2D edge weights to the nearest integer, this reader
// deliberately does not.

#ifndef GRIDSCHED_TSP_HPP
#define GRIDSCHED_TSP_HPP

#include <optional>
#include <string>
#include <vector>

#include "gridsched/matrix.hpp"

namespace gridsched {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct TspInstance {
    std::string name;
    std::size_t n = 0;
    std::optional<std::vector<Point>> coords;
    SquareMatrix distances;

    void validate() const;  // zero diagonal, symmetry, n >= 3
};

struct Tour {
    std::vector<std::size_t> order;  // permutation of node indices
    double length = 0.0;
};

struct CostMatrix {
    SquareMatrix entries;  // positive off-diagonal, zero diagonal
};

// Euclidean instance from point coordinates; at least three points.
TspInstance build_distance_matrix(const std::vector<Point>& coords);

// c_ij = 1 / max(d_ij, epsilon) off the diagonal. The epsilon floor guards
// coincident points.
CostMatrix build_cost_matrix(const TspInstance& instance, double epsilon = 1e-9);

// Closed-cycle length of the permutation (includes the return arc).
double tour_length(const std::vector<std::size_t>& order, const TspInstance& instance);

// Assembled tour with its length; validates the permutation.
Tour make_tour(std::vector<std::size_t> order, const TspInstance& instance);

bool is_permutation(const std::vector<std::size_t>& order, std::size_t n);

// TSPLIB subset reader: NAME, DIMENSION, EDGE_WEIGHT_TYPE: EUC_2D and a
// 1-based NODE_COORD_SECTION.
TspInstance parse_tsplib(const std::string& text);

// Writes the same TSPLIB subset this toolkit reads.
std::string write_tsplib(const TspInstance& instance);

// Exact minimum over all closed cycles, n <= 10. Ties resolve to the
// lexicographically smallest order starting at node 0.
Tour brute_force_tsp(const TspInstance& instance);

}  // namespace gridsched

#endif
