// sets.hpp
#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hamconc/hamming.hpp"
#include "hamconc/space.hpp"

namespace hamconc {

/// A subset A of a finite space, given either by its members or by a
/// membership predicate.
class SetSpec {
public:
    using Predicate = std::function<bool(const Point&)>;

    static SetSpec points(std::vector<Point> members);
    static SetSpec predicate(Predicate contains, std::string label);
    static SetSpec whole_space();

    bool contains(const Point& x) const;
    bool is_explicit() const noexcept { return !predicate_; }
    const std::string& label() const noexcept { return label_; }

    // Members inside the space, sorted by rank, duplicates removed. Predicate
    // sets are found by scanning every outcome.
    std::vector<Point> members(const FiniteSpace& space,
                               std::uint64_t cap = default_enumeration_cap()) const;

private:
    std::vector<Point> explicit_;
    Predicate predicate_;
    std::string label_;
};

// d_alpha(x, A) = min over y in A of d_alpha(x, y). Costs O(|A| n) for
// explicit sets and O(|space| n) for predicate sets. Throws
// std::invalid_argument("empty set has infinite distance") when A has no
// member in the space.
double distance_to_set(const AlphaWeights& alpha, const Point& x, const SetSpec& a,
                       const FiniteSpace& space);

/// d_alpha(., A) with the member list materialized once, for repeated queries.
class SetDistance {
public:
    SetDistance(const AlphaWeights& alpha, const SetSpec& a, const FiniteSpace& space,
                std::uint64_t cap = default_enumeration_cap());

    double operator()(const Point& x) const;
    std::size_t member_count() const noexcept { return members_.size(); }

private:
    AlphaWeights alpha_;
    std::vector<Point> members_;
};

}  // namespace hamconc
