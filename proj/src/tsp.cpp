#include "gridsched/tsp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "gridsched/errors.hpp"

namespace gridsched {

void TspInstance::validate() const {
    if (n < 3) throw InstanceError("TSP instances need at least 3 nodes");
    if (distances.size() != n) throw InstanceError("distance matrix size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (distances(i, i) != 0.0)
            throw InstanceError("distance matrix diagonal must be zero");
        for (std::size_t j = i + 1; j < n; ++j) {
            if (distances(i, j) < 0.0)
                throw InstanceError("distances must be nonnegative");
            if (distances(i, j) != distances(j, i))
                throw InstanceError("distance matrix must be symmetric");
        }
    }
    if (coords && coords->size() != n)
        throw InstanceError("coordinate count does not match node count");
}

TspInstance build_distance_matrix(const std::vector<Point>& coords) {
    if (coords.size() < 3)
        throw InstanceError("need at least 3 points to build a TSP instance");
    TspInstance instance;
    instance.n = coords.size();
    instance.coords = coords;
    instance.distances = SquareMatrix(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i)
        for (std::size_t j = i + 1; j < coords.size(); ++j) {
            const double d = std::hypot(coords[i].x - coords[j].x,
                                        coords[i].y - coords[j].y);
            instance.distances(i, j) = d;
            instance.distances(j, i) = d;
        }
    return instance;
}

CostMatrix build_cost_matrix(const TspInstance& instance, double epsilon) {
    CostMatrix cost;
    cost.entries = SquareMatrix(instance.n);
    for (std::size_t i = 0; i < instance.n; ++i)
        for (std::size_t j = 0; j < instance.n; ++j)
            if (i != j)
                cost.entries(i, j) = 1.0 / std::max(instance.distances(i, j), epsilon);
    return cost;
}

bool is_permutation(const std::vector<std::size_t>& order, std::size_t n) {
    if (order.size() != n) return false;
    std::vector<bool> seen(n, false);
    for (std::size_t v : order) {
        if (v >= n || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

double tour_length(const std::vector<std::size_t>& order, const TspInstance& instance) {
    if (!is_permutation(order, instance.n))
        throw InstanceError("tour order is not a permutation of the nodes");
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
        total += instance.distances(order[i], order[i + 1]);
    total += instance.distances(order.back(), order.front());
    return total;
}

Tour make_tour(std::vector<std::size_t> order, const TspInstance& instance) {
    Tour tour;
    tour.length = tour_length(order, instance);
    tour.order = std::move(order);
    return tour;
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

// Splits "KEY : VALUE" headers; returns false for section lines.
bool split_header(const std::string& line, std::string& key, std::string& value) {
    const auto colon = line.find(':');
    if (colon == std::string::npos) return false;
    key = trim(line.substr(0, colon));
    value = trim(line.substr(colon + 1));
    return true;
}

}  // namespace

TspInstance parse_tsplib(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::string name = "unnamed";
    long dimension = -1;
    std::string edge_weight_type;
    std::vector<Point> coords;
    bool in_coords = false;
    std::vector<bool> seen;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t == "EOF") break;
        if (t == "NODE_COORD_SECTION") {
            if (dimension <= 0)
                throw ParseError("NODE_COORD_SECTION before DIMENSION", line_no);
            if (edge_weight_type.empty())
                throw ParseError("NODE_COORD_SECTION before EDGE_WEIGHT_TYPE", line_no);
            in_coords = true;
            coords.assign(dimension, Point{});
            seen.assign(dimension, false);
            continue;
        }
        if (in_coords) {
            std::istringstream fields(t);
            long id;
            double x, y;
            if (!(fields >> id >> x >> y))
                throw ParseError("malformed node coordinate line", line_no);
            if (id < 1 || id > dimension)
                throw ParseError("node id " + std::to_string(id) + " outside 1.." +
                                     std::to_string(dimension),
                                 line_no);
            if (seen[id - 1])
                throw ParseError("duplicate node id " + std::to_string(id), line_no);
            seen[id - 1] = true;
            coords[id - 1] = {x, y};
            continue;
        }
        std::string key, value;
        if (!split_header(t, key, value))
            throw ParseError("unrecognized line: " + t, line_no);
        if (key == "NAME") name = value;
        else if (key == "DIMENSION") dimension = std::stol(value);
        else if (key == "EDGE_WEIGHT_TYPE") {
            if (value != "EUC_2D")
                throw UnsupportedFormatError("unsupported EDGE_WEIGHT_TYPE: " + value, line_no);
            edge_weight_type = value;
        }
        // TYPE, COMMENT and other headers are accepted and ignored.
    }
    if (dimension <= 0) throw ParseError("missing DIMENSION header");
    if (edge_weight_type.empty()) throw ParseError("missing EDGE_WEIGHT_TYPE header");
    const long have = std::count(seen.begin(), seen.end(), true);
    if (have != dimension)
        throw ParseError("DIMENSION is " + std::to_string(dimension) + " but " +
                             std::to_string(have) + " coordinates were given",
                         line_no);
    TspInstance instance = build_distance_matrix(coords);
    instance.name = name;
    return instance;
}

std::string write_tsplib(const TspInstance& instance) {
    if (!instance.coords)
        throw InstanceError("cannot write a coordinate-free instance as EUC_2D");
    std::ostringstream out;
    out << "NAME: " << (instance.name.empty() ? "unnamed" : instance.name) << "\n";
    out << "TYPE: TSP\n";
    out << "DIMENSION: " << instance.n << "\n";
    out << "EDGE_WEIGHT_TYPE: EUC_2D\n";
    out << "NODE_COORD_SECTION\n";
    out.precision(17);
    for (std::size_t i = 0; i < instance.n; ++i)
        out << (i + 1) << " " << (*instance.coords)[i].x << " "
            << (*instance.coords)[i].y << "\n";
    out << "EOF\n";
    return out.str();
}

Tour brute_force_tsp(const TspInstance& instance) {
    instance.validate();
    if (instance.n > 10)
        throw InstanceTooLargeError("exhaustive tour search is capped at 10 nodes");
    std::vector<std::size_t> rest(instance.n - 1);
    std::iota(rest.begin(), rest.end(), 1);

    std::vector<std::size_t> best_order;
    double best_length = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> order(instance.n);
    order[0] = 0;
    do {
        std::copy(rest.begin(), rest.end(), order.begin() + 1);
        const double len = tour_length(order, instance);
        if (len < best_length) {  // strict: first hit is lexicographically smallest
            best_length = len;
            best_order = order;
        }
    } while (std::next_permutation(rest.begin(), rest.end()));

    Tour tour;
    tour.order = std::move(best_order);
    tour.length = best_length;
    return tour;
}

}  // namespace gridsched
