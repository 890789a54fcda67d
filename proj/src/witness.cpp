#include "autoredux/witness.hpp"

#include <random>
#include <sstream>

namespace autoredux {

std::string format_report(const WitnessReport& r) {
    std::ostringstream out;
    out << "holds " << (r.holds ? "true" : "false") << "\n";
    out << "mode " << (r.exhaustive ? "exhaustive" : "sampled") << "\n";
    if (!r.exhaustive) out << "samples " << r.samples << "\nseed " << r.seed << "\n";
    if (r.counterexample_index) out << "counterexample index " << *r.counterexample_index << "\n";
    if (r.counterexample_subset) out << "counterexample subset " << r.counterexample_subset->str() << "\n";
    return out.str();
}

WitnessReport is_cototal_witness(const BitVector& a, const EnumerationOperator& gamma) {
    WitnessReport r;
    const BitVector got = apply(gamma, ~a);
    r.holds = (got == a);
    if (!r.holds) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (got.test(i) != a.test(i)) {
                r.counterexample_index = i;
                break;
            }
        }
    }
    return r;
}

namespace {

// Map a word mask over x's elements to the corresponding subset of x.
BitVector subset_from_mask(const std::vector<std::size_t>& elems, std::uint64_t mask,
                           std::size_t n) {
    BitVector y(n);
    for (std::size_t j = 0; j < elems.size(); ++j)
        if ((mask >> j) & 1) y.set(elems[j]);
    return y;
}

}  // namespace

WitnessReport is_uie_witness(const BitVector& x, const EnumerationOperator& gamma,
                             std::size_t tau, std::uint64_t samples, std::uint64_t seed) {
    if (!infinite_like(x, tau))
        throw Error("precondition", "is_uie_witness requires an infinite-like x");
    const auto elems = x.elements();
    WitnessReport r;
    r.holds = true;

    if (elems.size() <= 20) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << elems.size()); ++mask) {
            BitVector y = subset_from_mask(elems, mask, x.size());
            if (!infinite_like(y, tau)) continue;
            if (apply(gamma, y) != x) {
                r.holds = false;
                r.counterexample_subset = std::move(y);
                return r;
            }
        }
        return r;
    }

    r.exhaustive = false;
    r.samples = samples;
    r.seed = seed;
    std::mt19937_64 rng(seed ^ 0xc0707a1u);
    for (std::uint64_t s = 0; s < samples; ++s) {
        BitVector y(x.size());
        bool ok = false;
        while (!ok) {
            for (auto e : elems)
                y.set(e, rng() & 1);
            ok = infinite_like(y, tau);
        }
        if (apply(gamma, y) != x) {
            r.holds = false;
            r.counterexample_subset = std::move(y);
            return r;
        }
    }
    return r;
}

EnumerationOperator gen_trivial_uie(const BitVector& x) {
    if (x.none()) throw Error("precondition", "gen_trivial_uie requires a nonempty set");
    EnumerationOperator op(Universe{x.size()}, "trivial_uie");
    const auto elems = x.elements();
    for (auto a : elems) {
        for (auto b : elems) {
            BitVector body(x.size());
            body.set(b);
            op.add_axiom(a, body);
        }
    }
    return op;
}

std::pair<BitVector, EnumerationOperator> gen_cototal_example(std::size_t n) {
    if (n == 0 || n % 2 != 0)
        throw Error("precondition", "gen_cototal_example requires an even universe size");
    BitVector a(n);
    EnumerationOperator gamma(Universe{n}, "evens_from_odds");
    for (std::size_t k = 0; 2 * k < n; ++k) {
        a.set(2 * k);
        BitVector body(n);
        body.set(2 * k + 1);
        gamma.add_axiom(2 * k, body);
    }
    return {a, gamma};
}

}  // namespace autoredux
