#ifndef AUTOREDUX_DIAGONAL_HPP
#define AUTOREDUX_DIAGONAL_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "autoredux/autoreduce.hpp"
#include "autoredux/enumop.hpp"
#include "autoredux/universe.hpp"

namespace autoredux {

// A committed prefix string: positions [0, len) are decided, the rest zero.
struct PrefixString {
    BitVector bits;
    std::size_t len = 0;
};

struct StageOutcome {
    enum Kind { Case1, Case2, Compressible } kind = Case1;
    std::size_t op_index = 0;
    std::size_t witness = 0;                 // Case1: n (or |e|); Case2: m (or |e|)
    std::optional<std::size_t> excluded;     // Case2 of the degree engine: the new n in D
};

struct DiagonalState {
    std::size_t stage = 0;
    PrefixString prefix;
    BitVector excluded;  // D_i; used by the degree engine only
    std::vector<StageOutcome> log;

    static DiagonalState initial(std::size_t n);
};

// One stage of the subset construction against Gamma_i. Case 1 commits
// A's bits up to the least n whose operator image escapes A; Case 2 commits a
// zero block whose tail image lands strictly inside A; otherwise the stage is
// Compressible and hands off to the relativized machine.
DiagonalState diag_step_subset(const BitVector& a, const EnumerationOperator& gamma_i,
                               DiagonalState state, std::size_t tau);

struct DiagResult {
    bool success = false;
    BitVector subset;  // B, on success
    DiagonalState state;
    std::optional<std::size_t> compress_index;
};

DiagResult diag_run(const BitVector& a, std::span<const EnumerationOperator> ops,
                    std::size_t tau);

// One stage of the degree construction: prefixes extend along
// c_i · Phi(A − D_i)↾[|c_i|, N) and must add at least one element; Case 2 may
// additionally exclude one n. Preconditions A = Delta(B), B = Phi(A) are
// checked.
DiagonalState diag_step_degree(const BitVector& a, const BitVector& b,
                               const EnumerationOperator& phi, const EnumerationOperator& delta,
                               const EnumerationOperator& gamma_i, DiagonalState state,
                               std::size_t tau);

// The Psi handed off by a Compressible degree stage.
AutoreductionProcedure make_diag_psi(const EnumerationOperator& gamma_i,
                                     const EnumerationOperator& phi,
                                     const EnumerationOperator& delta, const DiagonalState& state,
                                     std::size_t tau);

// Brute-force oracle: subset ⊆ target, subset infinite-like, and
// apply(op, subset) != target for every op.
bool verify_diag(const BitVector& target, std::span<const EnumerationOperator> ops,
                 const BitVector& subset, std::size_t tau);

// Did both cases fail for gamma_i at this prefix? The hypothesis of the
// relativized compression hand-off.
bool subset_cases_failed(const BitVector& a, const EnumerationOperator& gamma_i,
                         const PrefixString& prefix, std::size_t tau);

// Stage log lines: `stage <i> case<1|2|C> <witness...>`.
std::string format_stage_log(const DiagonalState& state);

}  // namespace autoredux

#endif
