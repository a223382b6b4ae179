#include "hamconc/sets.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace hamconc {

SetSpec SetSpec::points(std::vector<Point> members) {
    SetSpec s;
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    s.explicit_ = std::move(members);
    s.label_ = "points";
    return s;
}

SetSpec SetSpec::predicate(Predicate contains, std::string label) {
    if (!contains) throw std::invalid_argument("SetSpec::predicate: empty predicate");
    SetSpec s;
    s.predicate_ = std::move(contains);
    s.label_ = std::move(label);
    return s;
}

SetSpec SetSpec::whole_space() {
    return predicate([](const Point&) { return true; }, "whole space");
}

bool SetSpec::contains(const Point& x) const {
    if (predicate_) return predicate_(x);
    return std::binary_search(explicit_.begin(), explicit_.end(), x);
}

std::vector<Point> SetSpec::members(const FiniteSpace& space, std::uint64_t cap) const {
    std::vector<Point> out;
    if (!predicate_) {
        // Lexicographic order of symbol vectors is rank order.
        for (const auto& y : explicit_)
            if (space.contains(y)) out.push_back(y);
        return out;
    }
    space.require_enumerable(cap);
    Point x(std::vector<Symbol>(space.dimension(), 0));
    do {
        if (predicate_(x)) out.push_back(x);
    } while (space.advance(x));
    return out;
}

double distance_to_set(const AlphaWeights& alpha, const Point& x, const SetSpec& a,
                       const FiniteSpace& space) {
    return SetDistance(alpha, a, space)(x);
}

SetDistance::SetDistance(const AlphaWeights& alpha, const SetSpec& a, const FiniteSpace& space,
                         std::uint64_t cap)
    : alpha_(alpha), members_(a.members(space, cap)) {
    if (alpha.dimension() != space.dimension())
        throw std::invalid_argument("distance_to_set: weights and space differ in dimension");
    if (members_.empty()) throw std::invalid_argument("empty set has infinite distance");
}

double SetDistance::operator()(const Point& x) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& y : members_) {
        best = std::min(best, hamming_distance(alpha_, x, y));
        if (best == 0.0) break;
    }
    return best;
}

}  // namespace hamconc
