#ifndef AUTOREDUX_WITNESS_HPP
#define AUTOREDUX_WITNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "autoredux/enumop.hpp"
#include "autoredux/universe.hpp"

namespace autoredux {

// An exhaustive-mode verdict is ground truth; sampled mode reports only
// failures as definitive.
struct WitnessReport {
    bool holds = false;
    std::optional<std::size_t> counterexample_index;
    std::optional<BitVector> counterexample_subset;
    bool exhaustive = true;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

std::string format_report(const WitnessReport& r);

// holds iff apply(gamma, complement(a)) == a.
WitnessReport is_cototal_witness(const BitVector& a, const EnumerationOperator& gamma);

// holds iff apply(gamma, y) == x for every infinite-like subset y of x.
// Exhaustive when 2^|x| <= 2^20, sampled otherwise.
WitnessReport is_uie_witness(const BitVector& x, const EnumerationOperator& gamma,
                             std::size_t tau, std::uint64_t samples = 512,
                             std::uint64_t seed = 0);

// Axioms <a, {b}> for all a, b in x: any nonempty subset regenerates x.
EnumerationOperator gen_trivial_uie(const BitVector& x);

// A = evens, Gamma = { <2k, {2k+1}> : k < n/2 }; requires n even.
std::pair<BitVector, EnumerationOperator> gen_cototal_example(std::size_t n);

}  // namespace autoredux

#endif
