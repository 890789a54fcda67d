#ifndef AUTOREDUX_TESTS_FIXTURES_HPP
#define AUTOREDUX_TESTS_FIXTURES_HPP

#include <algorithm>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "autoredux/autoreduce.hpp"
#include "autoredux/enumop.hpp"
#include "autoredux/universe.hpp"
#include "autoredux/witness.hpp"

namespace autoredux::fixtures {

// Evens on {0, ..., n-1}.
inline BitVector evens(std::size_t n) {
    BitVector a(n);
    for (std::size_t i = 0; i < n; i += 2) a.set(i);
    return a;
}

// A uniform introenumerator for `a` whose early axioms make the prefix
// machine's staged search land inside the universe: for every element x of a
// below `m_max`, an axiom <x, {y*}> with y* the least element of a at or past
// m_max comes first, then the full trivial-uie tail.
inline EnumerationOperator machine_friendly_uie(const BitVector& a, std::size_t m_max) {
    const auto elems = a.elements();
    std::size_t anchor = elems.back();
    for (auto e : elems)
        if (e >= m_max) {
            anchor = e;
            break;
        }
    EnumerationOperator op(Universe{a.size()}, "machine_uie");
    for (auto x : elems) {
        if (x >= m_max) break;
        BitVector body(a.size());
        body.set(anchor);
        op.add_axiom(x, body);
    }
    for (auto x : elems)
        for (auto y : elems) {
            BitVector body(a.size());
            body.set(y);
            op.add_axiom(x, body);
        }
    return op;
}

// A random infinite-like set with about half its positions filled, always
// containing an element in the top quarter.
inline BitVector random_infinite_like(std::size_t n, std::mt19937_64& rng) {
    BitVector a(n);
    while (true) {
        for (std::size_t i = 0; i < n; ++i) a.set(i, rng() & 1);
        if (infinite_like(a, (3 * n + 3) / 4) && !a.none()) return a;
    }
}

struct MachineFixture {
    BitVector a;
    EnumerationOperator gamma;
    std::size_t m;
};

// The uie fixture corpus for the codec bound checks: >= 50 triples, m up to
// 64, N up to 256.
inline std::vector<MachineFixture> machine_corpus() {
    std::vector<MachineFixture> corpus;
    std::mt19937_64 rng(20240817);

    auto add_family = [&](const BitVector& a, std::size_t n, std::vector<std::size_t> ms) {
        const std::size_t m_max = *std::max_element(ms.begin(), ms.end());
        EnumerationOperator g = machine_friendly_uie(a, m_max + 1);
        for (auto m : ms) corpus.push_back({a, g, m});
        (void)n;
    };

    add_family(evens(16), 16, {1, 2, 3, 4});
    add_family(evens(64), 64, {1, 4, 8, 12, 16});
    add_family(evens(128), 128, {8, 16, 24, 32, 40});
    add_family(evens(256), 256, {16, 32, 48, 64});

    // every third element
    for (std::size_t n : {std::size_t{96}, std::size_t{192}}) {
        BitVector a(n);
        for (std::size_t i = 0; i < n; i += 3) a.set(i);
        add_family(a, n, {6, 12, 24, 32});
    }

    // random dense sets
    for (int t = 0; t < 7; ++t) {
        const std::size_t n = 128;
        BitVector a(n);
        for (std::size_t i = 0; i < n; ++i) a.set(i, rng() % 3 != 0);
        a.set(n - 1);  // keep the tail anchored
        add_family(a, n, {8, 16, 32, 40});
    }
    return corpus;
}

// The Psi test family used by the measure-side checks: one of each kind plus
// an adversarial random table.
inline std::vector<AutoreductionProcedure> psi_family(std::size_t n, std::uint64_t seed = 1) {
    std::vector<AutoreductionProcedure> family;
    if (n % 2 == 0 && n >= 2)
        family.push_back(AutoreductionProcedure::cototal(gen_cototal_example(n).second));

    EnumerationOperator id(Universe{n}, "id");
    for (std::size_t x = 0; x < n; ++x) {
        BitVector body(n);
        body.set(x);
        id.add_axiom(x, body);
    }
    const std::size_t tau = (3 * n + 3) / 4;
    family.push_back(AutoreductionProcedure::uie(id, gen_trivial_uie(evens(n)), id, tau));
    family.push_back(AutoreductionProcedure::zero());
    family.push_back(AutoreductionProcedure::custom(
        "copy_next_bit", [n](std::size_t i, const BitVector& z) { return z.test((i + 1) % n); }));

    if (n <= 16) {
        std::mt19937_64 rng(seed);
        auto table = std::make_shared<std::vector<std::uint8_t>>();
        table->resize(n << n);
        for (auto& b : *table) b = rng() & 1;
        family.push_back(AutoreductionProcedure::custom(
            "table", [table, n](std::size_t i, const BitVector& z) {
                return (*table)[(i << n) | z.low_mask()] != 0;
            }));
    }
    return family;
}

}  // namespace autoredux::fixtures

#endif
