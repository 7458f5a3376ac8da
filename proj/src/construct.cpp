#include "turan/construct.hpp"

#include "turan/rng.hpp"

#include <stdexcept>

namespace turan {

void PairColoring::set(Vertex x, Vertex y, Color c)
{
    if (x == y || x >= n_ || y >= n_)
        throw std::invalid_argument("pair colouring needs two distinct vertices in range");
    if (c >= k_)
        throw std::invalid_argument("colour index " + std::to_string(c) + " outside a base of " +
                                    std::to_string(k_) + " colours");
    c_[static_cast<std::size_t>(x) * n_ + y] = c;
    c_[static_cast<std::size_t>(y) * n_ + x] = c;
}

PairColoring random_pair_coloring(std::size_t n, const WeightedColorSet& base, std::uint64_t seed)
{
    BigInt common = 1;
    for (const auto& w : base.weights())
        common = boost::multiprecision::lcm(common, denominator_of(w));
    if (common > BigInt(UINT64_MAX))
        throw std::invalid_argument("colour weights need a common denominator below 2^64");
    const auto den = common.convert_to<std::uint64_t>();
    std::vector<std::uint64_t> cumulative;
    std::uint64_t acc = 0;
    for (const auto& w : base.weights()) {
        acc += (numerator_of(w) * (common / denominator_of(w))).convert_to<std::uint64_t>();
        cumulative.push_back(acc);
    }

    PairColoring phi(n, base.size());
    Rng rng(seed);
    for (Vertex x = 0; x < n; ++x)
        for (Vertex y = x + 1; y < n; ++y) {
            const std::uint64_t u = rng.uniform(den);
            Color c = 0;
            while (u >= cumulative[c])
                ++c;
            phi.set(x, y, c);
        }
    return phi;
}

Hypergraph3 build_H(const PairColoring& phi, const Palette& p, Exec exec)
{
    if (phi.colors() > p.colors())
        throw std::invalid_argument("colouring uses " + std::to_string(phi.colors()) +
                                    " colours but the palette has only " + std::to_string(p.colors()));
    const std::size_t n = phi.order();
    std::vector<std::vector<Triple>> per(n);
#pragma omp parallel for schedule(dynamic, 1) if (exec == Exec::parallel)
    for (long long xi = 0; xi < static_cast<long long>(n); ++xi) {
        const auto x = static_cast<Vertex>(xi);
        for (Vertex y = x + 1; y < n; ++y) {
            const Color cxy = phi.color(x, y);
            for (Vertex z = y + 1; z < n; ++z)
                if (p.contains(cxy, phi.color(x, z), phi.color(y, z)))
                    per[x].push_back({x, y, z});
        }
    }
    std::vector<Triple> edges;
    for (auto& v : per)
        edges.insert(edges.end(), v.begin(), v.end());
    return Hypergraph3::make(n, edges);
}

Hypergraph3 tournament_hypergraph(std::size_t n, std::uint64_t seed)
{
    if (n < 3)
        throw std::invalid_argument("tournament hypergraph needs n >= 3");
    const auto palette = builtin("tournament").palette;
    return build_H(random_pair_coloring(n, palette.base(), seed), palette);
}

Hypergraph3 roedl_hypergraph(std::size_t n, std::uint64_t seed)
{
    if (n < 3)
        throw std::invalid_argument("roedl hypergraph needs n >= 3");
    const auto palette = builtin("roedl").palette;
    return build_H(random_pair_coloring(n, palette.base(), seed), palette);
}

void PartitionedColoring::set(Vertex x, Vertex y, Local v)
{
    if (x >= order() || y >= order() || part_of(x) == part_of(y))
        throw std::invalid_argument("partitioned colouring covers crossing pairs only");
    local_[static_cast<std::size_t>(x) * order() + y] = v;
    local_[static_cast<std::size_t>(y) * order() + x] = v;
}

PartitionedColoring random_partitioned_coloring(const ReducedHypergraph& a, std::size_t h, std::uint64_t seed)
{
    if (h == 0)
        throw std::invalid_argument("block size must be at least 1");
    PartitionedColoring phi(a.indices(), h);
    Rng rng(seed);
    const auto n = static_cast<Vertex>(phi.order());
    for (Vertex x = 0; x < n; ++x)
        for (Vertex y = x + 1; y < n; ++y)
            if (phi.part_of(x) != phi.part_of(y))
                phi.set(x, y, static_cast<Local>(rng.uniform(a.class_size(phi.part_of(x), phi.part_of(y)))));
    return phi;
}

Lift lift_reduced(const ReducedHypergraph& a, std::size_t h, std::uint64_t seed)
{
    return lift_reduced(a, random_partitioned_coloring(a, h, seed));
}

Lift lift_reduced(const ReducedHypergraph& a, PartitionedColoring phi)
{
    if (phi.parts() != a.indices())
        throw std::invalid_argument("colouring has " + std::to_string(phi.parts()) + " blocks, reduced hypergraph " +
                                    std::to_string(a.indices()) + " indices");
    const auto n = static_cast<Vertex>(phi.order());
    for (Vertex x = 0; x < n; ++x)
        for (Vertex y = x + 1; y < n; ++y)
            if (phi.part_of(x) != phi.part_of(y) &&
                phi.local(x, y) >= a.class_size(phi.part_of(x), phi.part_of(y)))
                throw std::invalid_argument("pair " + std::to_string(x) + "," + std::to_string(y) +
                                            " is coloured outside its class");
    std::vector<Triple> edges;
    // Blocks are contiguous and increasing, so x < y < z in distinct blocks has part indices i < j < k.
    for (Vertex x = 0; x < n; ++x)
        for (Vertex y = x + 1; y < n; ++y) {
            if (phi.part_of(x) == phi.part_of(y))
                continue;
            for (Vertex z = y + 1; z < n; ++z) {
                if (phi.part_of(y) == phi.part_of(z))
                    continue;
                const auto& c = a.constituent(phi.part_of(x), phi.part_of(y), phi.part_of(z));
                if (c.has(phi.local(x, y), phi.local(x, z), phi.local(y, z)))
                    edges.push_back({x, y, z});
            }
        }
    return {Hypergraph3::make(n, edges), std::move(phi)};
}

} // namespace turan
