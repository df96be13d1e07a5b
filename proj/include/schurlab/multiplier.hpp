#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "schurlab/pcgroup.hpp"

namespace schurlab {

struct SparseIntMatrix {
    size_t rows = 0, cols = 0;
    std::vector<std::map<size_t, mpz_class>> row_entries;  // no stored zeros

    SparseIntMatrix() = default;
    SparseIntMatrix(size_t r, size_t c) : rows(r), cols(c), row_entries(r) {}

    void set(size_t r, size_t c, const mpz_class& v);
    void add(size_t r, size_t c, const mpz_class& v);
    mpz_class get(size_t r, size_t c) const;
    size_t nonzeros() const;
    size_t append_row(const std::map<size_t, mpz_class>& entries);
};

using DenseMatrix = std::vector<std::vector<mpz_class>>;

struct SNFResult {
    // min(rows, cols) entries, nonnegative, each dividing the next
    std::vector<mpz_class> diagonal;
    size_t rank = 0;
    // row_transform * A * col_transform = diag, both unimodular
    std::optional<DenseMatrix> row_transform, col_transform;
};

// Dense elimination with transforms; sparse unit-pivot elimination followed
// by a dense finish otherwise.
SNFResult snf(const SparseIntMatrix& a, bool want_transforms = false);

struct AbelianInvariants {
    std::vector<mpz_class> torsion;  // entries > 1, each dividing the next
    size_t free_rank = 0;

    bool operator==(const AbelianInvariants& o) const { return torsion == o.torsion && free_rank == o.free_rank; }
    bool operator!=(const AbelianInvariants& o) const { return !(*this == o); }
    mpz_class order() const;     // product of torsion (ignores free rank)
    mpz_class exponent() const;  // last torsion entry, 1 when trivial
    std::string to_string() const;
};

// Invariants of Z^cols / rowspace(a).
AbelianInvariants cokernel_invariants(const SparseIntMatrix& a);

class MultiplierError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// table[g][h] = index of gh; index 0 must be the identity.
using MultiplicationTable = std::vector<std::vector<std::uint32_t>>;
MultiplicationTable multiplication_table(const PcGroup& g);

inline constexpr std::uint64_t kBarDefaultCap = 32;
inline constexpr std::uint64_t kBarMaxCap = 81;

// Homology of the normalized bar complex with integer coefficients.
// degree 1 or 2; throws CapExceeded above cap, MultiplierError on a nonzero
// free rank in degree 2.
AbelianInvariants bar_homology(const MultiplicationTable& table, int degree, std::uint64_t cap = kBarDefaultCap);

// One row per overlap test: left tails minus right tails.
SparseIntMatrix tails_matrix(const PcPresentation& p);

enum class MultiplierMethod { tails, bar, both };

AbelianInvariants schur_multiplier(const PcPresentation& p, MultiplierMethod method = MultiplierMethod::tails,
                                   std::uint64_t bar_cap = kBarDefaultCap);

struct CoverResult {
    PcPresentation cover;
    std::vector<int> kernel_generators;  // 0-based, appended after the original generators
    AbelianInvariants multiplier;
    std::uint64_t gamma2_order = 1;
    std::uint64_t exterior_exponent = 1;  // exp(gamma_2(cover))
};

// The cover defined by the SNF basis of the tail lattice.  tail_order
// permutes the tail columns before the SNF (used by the probe).  Throws
// CapExceeded when |G||M(G)| exceeds cap, MultiplierError when a self-check
// fails.
CoverResult schur_cover(const PcPresentation& p, std::uint64_t cap = kDefaultEnumerationCap,
                        const std::vector<size_t>* tail_order = nullptr);

std::uint64_t exterior_exponent(const PcPresentation& p, std::uint64_t cap = kDefaultEnumerationCap);

struct ProbeResult {
    bool agree = true;
    std::vector<std::string> runs;  // one line per tail order
};

// Rebuilds the cover under two fixed tail permutations and compares the
// multiplier invariants and exp(gamma_2) with the identity order.
ProbeResult tail_permutation_probe(const PcPresentation& p, std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace schurlab
