#include "hamconc/space.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

namespace hamconc {

namespace {

constexpr double kPmfTolerance = 1e-12;

void check_pmf(std::span<const double> pmf, const std::string& what) {
    double total = 0.0;
    for (double p : pmf) {
        if (!(p >= 0.0) || !std::isfinite(p))
            throw std::invalid_argument(what + ": probabilities must be finite and >= 0");
        total += p;
    }
    if (std::abs(total - 1.0) > kPmfTolerance)
        throw std::invalid_argument(what + ": probabilities sum to " + std::to_string(total) +
                                    ", expected 1");
}

std::vector<double> cumulative_of(std::span<const double> w) {
    std::vector<double> c(w.size());
    std::partial_sum(w.begin(), w.end(), c.begin());
    return c;
}

}  // namespace

std::uint64_t default_enumeration_cap() {
    const char* env = std::getenv(kEnumerationCapEnv);
    if (env == nullptr) return kDefaultEnumerationCap;
    std::string_view s(env);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || value == 0) return kDefaultEnumerationCap;
    return value;
}

CapExceeded::CapExceeded(std::uint64_t count, std::uint64_t cap)
    : std::length_error("outcome count " + std::to_string(count) + " exceeds enumeration cap " +
                        std::to_string(cap)),
      count_(count),
      cap_(cap) {}

FiniteSpace::FiniteSpace(std::vector<std::uint32_t> alphabet_sizes) : sizes_(std::move(alphabet_sizes)) {
    if (sizes_.empty()) throw std::invalid_argument("finite space: dimension must be >= 1");
    count_ = 1;
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
        if (sizes_[i] == 0)
            throw std::invalid_argument("finite space: alphabet " + std::to_string(i) + " is empty");
        if (count_ > std::numeric_limits<std::uint64_t>::max() / sizes_[i])
            throw std::invalid_argument("finite space: outcome count overflows 64 bits");
        count_ *= sizes_[i];
    }
}

FiniteSpace FiniteSpace::binary(std::size_t n) {
    return FiniteSpace(std::vector<std::uint32_t>(n, 2));
}

bool FiniteSpace::contains(const Point& x) const noexcept {
    if (x.dimension() != sizes_.size()) return false;
    for (std::size_t i = 0; i < sizes_.size(); ++i)
        if (x[i] >= sizes_[i]) return false;
    return true;
}

std::uint64_t FiniteSpace::rank(const Point& x) const {
    if (!contains(x)) throw std::invalid_argument("rank: point is not in the space");
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < sizes_.size(); ++i) r = r * sizes_[i] + x[i];
    return r;
}

Point FiniteSpace::unrank(std::uint64_t r) const {
    if (r >= count_) throw std::out_of_range("unrank: rank out of range");
    Point x(std::vector<Symbol>(sizes_.size(), 0));
    for (std::size_t i = sizes_.size(); i-- > 0;) {
        x[i] = static_cast<Symbol>(r % sizes_[i]);
        r /= sizes_[i];
    }
    return x;
}

FiniteSpace FiniteSpace::without(std::size_t i) const {
    if (i >= sizes_.size()) throw std::out_of_range("without: coordinate out of range");
    FiniteSpace reduced;
    reduced.sizes_ = sizes_;
    reduced.sizes_.erase(reduced.sizes_.begin() + static_cast<std::ptrdiff_t>(i));
    reduced.count_ = count_ / sizes_[i];
    return reduced;
}

void FiniteSpace::require_enumerable(std::uint64_t cap) const {
    if (count_ > cap) throw CapExceeded(count_, cap);
}

bool FiniteSpace::advance(Point& x) const noexcept {
    for (std::size_t i = sizes_.size(); i-- > 0;) {
        if (++x[i] < sizes_[i]) return true;
        x[i] = 0;
    }
    return false;
}

Point drop_coordinate(const Point& x, std::size_t i) {
    if (i >= x.dimension()) throw std::out_of_range("drop_coordinate: coordinate out of range");
    Point r = x;
    r.symbols.erase(r.symbols.begin() + static_cast<std::ptrdiff_t>(i));
    return r;
}

Point insert_coordinate(const Point& reduced, std::size_t i, Symbol s) {
    if (i > reduced.dimension()) throw std::out_of_range("insert_coordinate: coordinate out of range");
    Point x = reduced;
    x.symbols.insert(x.symbols.begin() + static_cast<std::ptrdiff_t>(i), s);
    return x;
}

Distribution Distribution::product(const FiniteSpace& space, std::vector<std::vector<double>> pmfs) {
    if (pmfs.size() != space.dimension())
        throw std::invalid_argument("product distribution: expected " +
                                    std::to_string(space.dimension()) + " coordinate pmfs");
    for (std::size_t i = 0; i < pmfs.size(); ++i) {
        if (pmfs[i].size() != space.alphabet_size(i))
            throw std::invalid_argument("product distribution: pmf " + std::to_string(i) +
                                        " length does not match its alphabet");
        check_pmf(pmfs[i], "product distribution pmf " + std::to_string(i));
    }
    Distribution d;
    d.kind_ = Kind::product;
    d.sizes_.assign(space.alphabet_sizes().begin(), space.alphabet_sizes().end());
    d.pmfs_ = std::move(pmfs);
    return d;
}

Distribution Distribution::uniform(const FiniteSpace& space) {
    std::vector<std::vector<double>> pmfs;
    for (auto k : space.alphabet_sizes()) pmfs.emplace_back(k, 1.0 / k);
    return product(space, std::move(pmfs));
}

Distribution Distribution::joint(const FiniteSpace& space, std::vector<double> table) {
    if (table.size() != space.outcome_count())
        throw std::invalid_argument("joint distribution: table length " + std::to_string(table.size()) +
                                    " != outcome count " + std::to_string(space.outcome_count()));
    check_pmf(table, "joint distribution table");
    Distribution d;
    d.kind_ = Kind::joint;
    d.sizes_.assign(space.alphabet_sizes().begin(), space.alphabet_sizes().end());
    d.table_ = std::move(table);
    return d;
}

double Distribution::probability(const Point& x, std::uint64_t rank) const {
    if (kind_ == Kind::joint) return table_[rank];
    double p = 1.0;
    for (std::size_t i = 0; i < pmfs_.size(); ++i) p *= pmfs_[i][x[i]];
    return p;
}

double Distribution::probability(const FiniteSpace& space, const Point& x) const {
    return probability(x, space.rank(x));
}

std::vector<double> Distribution::to_joint_table(const FiniteSpace& space) const {
    if (kind_ == Kind::joint) return table_;
    std::vector<double> table;
    table.reserve(space.outcome_count());
    for_each_outcome(space, *this, [&](const Point&, std::uint64_t, double p) { table.push_back(p); });
    return table;
}

std::vector<std::vector<double>> Distribution::marginals(const FiniteSpace& space) const {
    if (kind_ == Kind::product) return pmfs_;
    std::vector<std::vector<double>> m;
    for (auto k : sizes_) m.emplace_back(k, 0.0);
    for_each_outcome(space, *this, [&](const Point& x, std::uint64_t, double p) {
        for (std::size_t i = 0; i < m.size(); ++i) m[i][x[i]] += p;
    });
    return m;
}

void Distribution::require_space(const FiniteSpace& space) const {
    if (!std::equal(sizes_.begin(), sizes_.end(), space.alphabet_sizes().begin(),
                    space.alphabet_sizes().end()))
        throw std::invalid_argument("distribution was built for a different space");
}

std::vector<WeightedPoint> enumerate_outcomes(const FiniteSpace& space, const Distribution& dist,
                                              std::uint64_t cap) {
    std::vector<WeightedPoint> out;
    space.require_enumerable(cap);
    out.reserve(space.outcome_count());
    for_each_outcome(
        space, dist, [&](const Point& x, std::uint64_t r, double p) { out.push_back({x, r, p}); }, cap);
    return out;
}

Rng::Rng(std::uint64_t seed, std::uint64_t substream) : seed_(seed), substream_(substream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(substream), static_cast<std::uint32_t>(substream >> 32)};
    engine_.seed(seq);
}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: empty range");
    // Rejection keeps the draw exactly uniform.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do v = engine_();
    while (v >= limit);
    return v % n;
}

std::size_t draw_index(std::span<const double> cumulative, double u) {
    const double target = u * cumulative.back();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    if (it == cumulative.end()) {
        // Rounding pushed target past the total: take the last positive-mass entry.
        std::size_t i = cumulative.size() - 1;
        while (i > 0 && cumulative[i] == cumulative[i - 1]) --i;
        return i;
    }
    return static_cast<std::size_t>(it - cumulative.begin());
}

Sampler::Sampler(const FiniteSpace& space, const Distribution& dist, std::uint64_t seed,
                 std::uint64_t substream)
    : space_(space), product_(dist.is_product()), rng_(seed, substream) {
    dist.require_space(space);
    if (product_) {
        for (const auto& pmf : dist.pmfs()) cumulative_.push_back(cumulative_of(pmf));
    } else {
        cumulative_.push_back(cumulative_of(dist.table()));
    }
}

Point Sampler::next() {
    if (!product_) return space_.unrank(draw_index(cumulative_.front(), rng_.uniform()));
    Point x(std::vector<Symbol>(space_.dimension(), 0));
    for (std::size_t i = 0; i < cumulative_.size(); ++i)
        x[i] = static_cast<Symbol>(draw_index(cumulative_[i], rng_.uniform()));
    return x;
}

std::vector<Point> sample(const FiniteSpace& space, const Distribution& dist, std::uint64_t seed,
                          std::size_t count, std::uint64_t substream) {
    if (count == 0) throw std::invalid_argument("sample: count must be >= 1");
    Sampler sampler(space, dist, seed, substream);
    std::vector<Point> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) out.push_back(sampler.next());
    return out;
}

}  // namespace hamconc
