// space.hpp
#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hamconc/hamming.hpp"

namespace hamconc {

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

// Environment variable overriding the default enumeration cap.
inline constexpr const char* kEnumerationCapEnv = "HAMCONC_ENUM_CAP";

// kDefaultEnumerationCap unless HAMCONC_ENUM_CAP holds a positive integer.
std::uint64_t default_enumeration_cap();

class CapExceeded : public std::length_error {
public:
    CapExceeded(std::uint64_t count, std::uint64_t cap);
    std::uint64_t count() const noexcept { return count_; }
    std::uint64_t cap() const noexcept { return cap_; }

private:
    std::uint64_t count_;
    std::uint64_t cap_;
};

/// E_1 x ... x E_n with |E_i| = alphabet_sizes[i].
///
/// Outcomes are ranked in mixed radix with the last coordinate varying
/// fastest, which is lexicographic order of the symbol vectors.
class FiniteSpace {
public:
    explicit FiniteSpace(std::vector<std::uint32_t> alphabet_sizes);
    static FiniteSpace binary(std::size_t n);

    std::size_t dimension() const noexcept { return sizes_.size(); }
    std::span<const std::uint32_t> alphabet_sizes() const noexcept { return sizes_; }
    std::uint32_t alphabet_size(std::size_t i) const { return sizes_[i]; }
    std::uint64_t outcome_count() const noexcept { return count_; }

    bool contains(const Point& x) const noexcept;
    std::uint64_t rank(const Point& x) const;
    Point unrank(std::uint64_t r) const;

    // Space with coordinate i removed. Dropping the only coordinate gives an
    // empty product with a single (empty) outcome.
    FiniteSpace without(std::size_t i) const;

    // Throws CapExceeded when the outcome count is above cap.
    void require_enumerable(std::uint64_t cap) const;

    // Steps x to the next outcome in rank order; false after the last one.
    bool advance(Point& x) const noexcept;

    friend bool operator==(const FiniteSpace&, const FiniteSpace&) = default;

private:
    FiniteSpace() = default;
    std::vector<std::uint32_t> sizes_;
    std::uint64_t count_{1};
};

Point drop_coordinate(const Point& x, std::size_t i);
Point insert_coordinate(const Point& reduced, std::size_t i, Symbol s);

/// Law of X on a FiniteSpace: either independent coordinates (product) or
/// an explicit table over outcome ranks (joint).
class Distribution {
public:
    enum class Kind { product, joint };

    static Distribution product(const FiniteSpace& space, std::vector<std::vector<double>> pmfs);
    static Distribution uniform(const FiniteSpace& space);
    static Distribution joint(const FiniteSpace& space, std::vector<double> table);

    Kind kind() const noexcept { return kind_; }
    bool is_product() const noexcept { return kind_ == Kind::product; }
    const std::vector<std::uint32_t>& alphabet_sizes() const noexcept { return sizes_; }
    const std::vector<std::vector<double>>& pmfs() const noexcept { return pmfs_; }
    const std::vector<double>& table() const noexcept { return table_; }

    double probability(const Point& x, std::uint64_t rank) const;
    double probability(const FiniteSpace& space, const Point& x) const;

    // Full pmf over outcome ranks; product kind is multiplied out.
    std::vector<double> to_joint_table(const FiniteSpace& space) const;
    // Per-coordinate marginal pmfs.
    std::vector<std::vector<double>> marginals(const FiniteSpace& space) const;

    // Throws std::invalid_argument when built for a different space.
    void require_space(const FiniteSpace& space) const;

private:
    Kind kind_{Kind::product};
    std::vector<std::uint32_t> sizes_;
    std::vector<std::vector<double>> pmfs_;
    std::vector<double> table_;
};

struct WeightedPoint {
    Point point;
    std::uint64_t rank{0};
    double probability{0.0};
};

// Calls visit(point, rank, probability) for every outcome in rank order.
template <class Visitor>
void for_each_outcome(const FiniteSpace& space, const Distribution& dist, Visitor&& visit,
                      std::uint64_t cap = default_enumeration_cap()) {
    dist.require_space(space);
    space.require_enumerable(cap);
    Point x(std::vector<Symbol>(space.dimension(), 0));
    std::uint64_t r = 0;
    do {
        visit(static_cast<const Point&>(x), r, dist.probability(x, r));
        ++r;
    } while (space.advance(x));
}

std::vector<WeightedPoint> enumerate_outcomes(const FiniteSpace& space, const Distribution& dist,
                                              std::uint64_t cap = default_enumeration_cap());

// Name of the generator behind Rng, recorded in reports.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64 seeded by seed_seq(seed, substream)";

/// Seeded generator with deterministic substreams.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t substream = 0);

    std::uint64_t next() { return engine_(); }
    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t substream() const noexcept { return substream_; }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
    std::uint64_t substream_;
};

// Inverse-CDF draw from a (not necessarily normalized) weight vector.
std::size_t draw_index(std::span<const double> cumulative, double u);

/// Draws i.i.d. points. Product kind samples each coordinate independently;
/// joint kind inverts the CDF of the rank table.
class Sampler {
public:
    Sampler(const FiniteSpace& space, const Distribution& dist, std::uint64_t seed,
            std::uint64_t substream = 0);

    Point next();

private:
    FiniteSpace space_;
    bool product_;
    std::vector<std::vector<double>> cumulative_;
    Rng rng_;
};

std::vector<Point> sample(const FiniteSpace& space, const Distribution& dist, std::uint64_t seed,
                          std::size_t count, std::uint64_t substream = 0);

}  // namespace hamconc
