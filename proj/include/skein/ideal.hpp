#pragma once

// Ideals of Z[u] as integer lattices in the power basis 1, u, ..., u^{D-1}.

#include <vector>

#include "skein/cyclotomic.hpp"
#include "skein/tqft.hpp"

namespace skein {

// Represents (1/X^denom_scale) * J for an ideal J. The stored lattice is
// denominator * (1/X^denom_scale) * J, which is integral; denominator is 1
// whenever denom_scale is 0.
class IdealLattice {
public:
    explicit IdealLattice(const Level& level);  // the zero ideal

    const Level& level() const { return level_; }
    int denom_scale() const { return denom_scale_; }
    const Integer& denominator() const { return denominator_; }
    // Upper triangular, row i has its positive pivot in column i, entries above a
    // pivot reduced into [0, pivot). Empty for the zero ideal.
    const std::vector<std::vector<Integer>>& hnf() const { return hnf_; }

    bool is_zero() const { return hnf_.empty(); }
    bool is_trivial() const;
    // Index of the stored lattice in Z^D; 0 for the zero ideal.
    Integer index() const;

    bool operator==(const IdealLattice& o) const;
    bool operator!=(const IdealLattice& o) const { return !(*this == o); }

    friend IdealLattice ideal_from_generators(const Level& level, const std::vector<CycNum>& gs);
    friend IdealLattice scale_by_inverse_X(const IdealLattice& I, int g);

private:
    Level level_;
    int denom_scale_ = 0;
    Integer denominator_ = 1;
    std::vector<std::vector<Integer>> hnf_;
};

// The ideal generated by gs. Generators must be integral and at the given level.
IdealLattice ideal_from_generators(const Level& level, const std::vector<CycNum>& gs);
// Generated by the entries of a partition vector.
IdealLattice ideal_from_partition_vector(const PartitionVector& pv);

// Elements represented by the basis rows.
std::vector<CycNum> basis_elements(const IdealLattice& I);

bool contains(const IdealLattice& I, const CycNum& x);
// Both ideals must carry the same X scale; throws ScaleMismatch otherwise.
bool subset(const IdealLattice& I, const IdealLattice& J);
bool equal(const IdealLattice& I, const IdealLattice& J);
// u times every basis row stays in the lattice.
bool closed_under_u(const IdealLattice& I);

// (1/X^g) I. Integral (scale 0) when X^g divides every generator.
IdealLattice scale_by_inverse_X(const IdealLattice& I, int g);

Json to_json(const IdealLattice& I);

}  // namespace skein
