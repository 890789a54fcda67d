#include "autoredux/diagonal.hpp"

#include <sstream>

namespace autoredux {

DiagonalState DiagonalState::initial(std::size_t n) {
    DiagonalState s;
    s.prefix = {BitVector(n), 0};
    s.excluded = BitVector(n);
    return s;
}

namespace {

void check_subset_pre(const BitVector& a, const DiagonalState& state, std::size_t tau) {
    if (!state.prefix.bits.subset_of(a))
        throw Error("precondition", "diagonal prefix is not a subset of the target");
    const std::size_t from = std::max(tau, state.prefix.len);
    if (!infinite_like(a, from))
        throw Error("universe_too_small", "target has no element >= tau beyond the prefix");
}

bool proper_subset(const BitVector& x, const BitVector& y) {
    return x.subset_of(y) && x != y;
}

}  // namespace

DiagonalState diag_step_subset(const BitVector& a, const EnumerationOperator& gamma_i,
                               DiagonalState state, std::size_t tau) {
    check_subset_pre(a, state, tau);
    const std::size_t n_univ = a.size();
    const std::size_t len = state.prefix.len;

    // Case 1: least n with apply(Gamma_i, b_i · A↾[|b_i|, n)) ⊄ A.
    for (std::size_t n = len; n <= n_univ; ++n) {
        const BitVector input = state.prefix.bits | a.range(len, n);
        if (!apply(gamma_i, input).subset_of(a)) {
            state.prefix = {input, n};
            state.log.push_back({StageOutcome::Case1, state.stage, n, std::nullopt});
            ++state.stage;
            return state;
        }
    }
    // Case 2: least m with apply(Gamma_i, b_i · 0^m · A↾[|b_i|+m, N)) ⊊ A.
    // Only tails that keep the input infinite-like count; the construction
    // must stay extendable past tau.
    for (std::size_t m = 0; len + m <= n_univ; ++m) {
        const BitVector input = state.prefix.bits | a.range(len + m, n_univ);
        if (!infinite_like(input, tau)) break;
        if (proper_subset(apply(gamma_i, input), a)) {
            state.prefix.len = len + m;
            state.log.push_back({StageOutcome::Case2, state.stage, m, std::nullopt});
            ++state.stage;
            return state;
        }
    }
    state.log.push_back({StageOutcome::Compressible, state.stage, 0, std::nullopt});
    ++state.stage;
    return state;
}

bool subset_cases_failed(const BitVector& a, const EnumerationOperator& gamma_i,
                         const PrefixString& prefix, std::size_t tau) {
    const std::size_t n_univ = a.size();
    for (std::size_t n = prefix.len; n <= n_univ; ++n) {
        if (!apply(gamma_i, prefix.bits | a.range(prefix.len, n)).subset_of(a)) return false;
    }
    for (std::size_t m = 0; prefix.len + m <= n_univ; ++m) {
        const BitVector input = prefix.bits | a.range(prefix.len + m, n_univ);
        if (!infinite_like(input, tau)) break;
        if (proper_subset(apply(gamma_i, input), a)) return false;
    }
    return true;
}

DiagResult diag_run(const BitVector& a, std::span<const EnumerationOperator> ops,
                    std::size_t tau) {
    DiagResult res;
    res.state = DiagonalState::initial(a.size());
    if (!infinite_like(a, tau))
        throw Error("precondition", "diag_run target must be infinite-like");

    for (std::size_t i = 0; i < ops.size(); ++i) {
        res.state = diag_step_subset(a, ops[i], std::move(res.state), tau);
        if (res.state.log.back().kind == StageOutcome::Compressible) {
            res.compress_index = i;
            return res;
        }
    }
    // Pad with A's remaining elements above the final prefix.
    BitVector b = res.state.prefix.bits | a.range(res.state.prefix.len, a.size());
    if (!infinite_like(b, tau)) throw Error("universe_too_small", "constructed subset lost its tail");
    res.success = true;
    res.subset = std::move(b);
    return res;
}

DiagonalState diag_step_degree(const BitVector& a, const BitVector& b,
                               const EnumerationOperator& phi, const EnumerationOperator& delta,
                               const EnumerationOperator& gamma_i, DiagonalState state,
                               std::size_t tau) {
    if (apply(delta, b) != a || apply(phi, a) != b)
        throw Error("precondition", "degree engine requires A = Delta(B) and B = Phi(A)");
    const std::size_t n_univ = a.size();
    const std::size_t len = state.prefix.len;
    const std::size_t have = state.prefix.bits.count();

    const BitVector phi_tail = apply(phi, a & ~state.excluded);
    if (!infinite_like(phi_tail, tau))
        throw Error("universe_too_small", "Phi(A - D) has no element >= tau");
    const BitVector ambient = state.prefix.bits | phi_tail.range(len, n_univ);

    // Case 1: least extension e along the ambient string, adding an element,
    // with apply(Gamma_i, e) ⊄ B.
    for (std::size_t l = len + 1; l <= n_univ; ++l) {
        const BitVector e = ambient.range(0, l);
        if (e.count() <= have) continue;
        if (!apply(gamma_i, e).subset_of(b)) {
            state.prefix = {e, l};
            state.log.push_back({StageOutcome::Case1, state.stage, l, std::nullopt});
            ++state.stage;
            return state;
        }
    }
    // Case 2: least (e, n) with Phi(A - D ∪ {n}) still infinite-like and
    // apply(Gamma_i, e · Phi(A - D ∪ {n})↾[|e|, N)) ⊊ B.
    for (std::size_t l = len + 1; l <= n_univ; ++l) {
        const BitVector e = ambient.range(0, l);
        if (e.count() <= have) continue;
        for (std::size_t n = 0; n < n_univ; ++n) {
            if (state.excluded.test(n)) continue;
            BitVector d = state.excluded;
            d.set(n);
            const BitVector t = apply(phi, a & ~d);
            if (!infinite_like(t, tau)) continue;
            if (proper_subset(apply(gamma_i, e | t.range(l, n_univ)), b)) {
                state.prefix = {e, l};
                state.excluded = std::move(d);
                state.log.push_back({StageOutcome::Case2, state.stage, l, n});
                ++state.stage;
                return state;
            }
        }
    }
    state.log.push_back({StageOutcome::Compressible, state.stage, 0, std::nullopt});
    ++state.stage;
    return state;
}

AutoreductionProcedure make_diag_psi(const EnumerationOperator& gamma_i,
                                     const EnumerationOperator& phi,
                                     const EnumerationOperator& delta, const DiagonalState& state,
                                     std::size_t tau) {
    return AutoreductionProcedure::diag(gamma_i, phi, delta, state.prefix.bits, state.prefix.len,
                                        state.excluded, tau);
}

bool verify_diag(const BitVector& target, std::span<const EnumerationOperator> ops,
                 const BitVector& subset, std::size_t tau) {
    if (!subset.subset_of(target)) return false;
    if (!infinite_like(subset, tau)) return false;
    for (const auto& op : ops)
        if (apply(op, subset) == target) return false;
    return true;
}

std::string format_stage_log(const DiagonalState& state) {
    std::ostringstream out;
    for (const auto& o : state.log) {
        out << "stage " << o.op_index;
        switch (o.kind) {
            case StageOutcome::Case1:
                out << " case1 " << o.witness;
                break;
            case StageOutcome::Case2:
                out << " case2 " << o.witness;
                if (o.excluded) out << ' ' << *o.excluded;
                break;
            case StageOutcome::Compressible:
                out << " caseC";
                break;
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace autoredux
