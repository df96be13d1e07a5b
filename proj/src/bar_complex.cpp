#include "schurlab/multiplier.hpp"

namespace schurlab {

MultiplicationTable multiplication_table(const PcGroup& g) {
    const auto& els = g.enumerate();
    const size_t m = els.size();
    MultiplicationTable t(m, std::vector<std::uint32_t>(m));
    for (size_t a = 0; a < m; ++a)
        for (size_t b = 0; b < m; ++b) t[a][b] = static_cast<std::uint32_t>(g.mul(a, b));
    return t;
}

AbelianInvariants bar_homology(const MultiplicationTable& table, int degree, std::uint64_t cap) {
    if (degree != 1 && degree != 2) throw std::invalid_argument("bar homology is implemented in degrees 1 and 2");
    if (cap > kBarMaxCap) throw std::invalid_argument("bar oracle cap above " + std::to_string(kBarMaxCap));
    const size_t m = table.size();
    if (m > cap)
        throw CapExceeded("bar oracle: group order " + std::to_string(m) + " above cap " + std::to_string(cap));
    for (size_t x = 0; x < m; ++x)
        if (table[x].size() != m || table[0][x] != x || table[x][0] != x)
            throw std::invalid_argument("table is not square with identity at index 0");
    if (m <= 1) return {};

    // normalized chains: non-identity elements 1..m-1 mapped to 0..m-2
    const size_t k = m - 1;
    auto cell1 = [&](size_t g) { return g - 1; };
    auto cell2 = [&](size_t g, size_t h) { return (g - 1) * k + (h - 1); };

    SparseIntMatrix d2(k * k, k);
    for (size_t g = 1; g < m; ++g)
        for (size_t h = 1; h < m; ++h) {
            size_t r = cell2(g, h);
            size_t gh = table[g][h];
            d2.add(r, cell1(h), 1);
            if (gh != 0) d2.add(r, cell1(gh), -1);
            d2.add(r, cell1(g), 1);
        }
    if (degree == 1) return cokernel_invariants(d2);

    SparseIntMatrix d3(k * k * k, k * k);
    size_t r = 0;
    for (size_t g = 1; g < m; ++g)
        for (size_t h = 1; h < m; ++h)
            for (size_t x = 1; x < m; ++x, ++r) {
                size_t gh = table[g][h], hx = table[h][x];
                d3.add(r, cell2(h, x), 1);
                if (gh != 0) d3.add(r, cell2(gh, x), -1);
                if (hx != 0) d3.add(r, cell2(g, hx), 1);
                d3.add(r, cell2(g, h), -1);
            }
    SNFResult s2 = snf(d2, false);
    SNFResult s3 = snf(d3, false);
    AbelianInvariants inv;
    for (const auto& d : s3.diagonal)
        if (d > 1) inv.torsion.push_back(d);
    const long long free = static_cast<long long>(k * k) - static_cast<long long>(s2.rank) - static_cast<long long>(s3.rank);
    if (free != 0) throw MultiplierError("bar complex gives free rank " + std::to_string(free) + " in degree 2");
    return inv;
}

}  // namespace schurlab
