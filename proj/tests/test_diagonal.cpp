#include <doctest.h>

#include <random>
#include <vector>

#include "autoredux/diagonal.hpp"
#include "autoredux/prefixmachine.hpp"
#include "autoredux/witness.hpp"
#include "fixtures.hpp"

using namespace autoredux;

namespace {

// The three-operator fixture the subset engine is exercised on: one escape,
// one shrink, one dead end.
EnumerationOperator escape_op(std::size_t n) {
    EnumerationOperator op(Universe{n}, "escape");
    op.add_axiom(5, parse_set("set: 0", Universe{n}));
    return op;
}

EnumerationOperator evens_identity(std::size_t n) {
    EnumerationOperator op(Universe{n}, "evens_id");
    for (std::size_t x = 0; x < n; x += 2) {
        BitVector body(n);
        body.set(x);
        op.add_axiom(x, body);
    }
    return op;
}

EnumerationOperator full_identity(std::size_t n) {
    EnumerationOperator op(Universe{n}, "id");
    for (std::size_t x = 0; x < n; ++x) {
        BitVector body(n);
        body.set(x);
        op.add_axiom(x, body);
    }
    return op;
}

}  // namespace

TEST_CASE("subset engine: frozen three-stage walk") {
    const BitVector a = fixtures::evens(8);
    const std::size_t tau = 6;

    auto state = DiagonalState::initial(8);
    state = diag_step_subset(a, escape_op(8), std::move(state), tau);
    REQUIRE(state.log.back().kind == StageOutcome::Case1);
    CHECK(state.log.back().witness == 1);
    CHECK(state.prefix.len == 1);
    CHECK(state.prefix.bits == parse_set("set: 0", Universe{8}));

    state = diag_step_subset(a, evens_identity(8), std::move(state), tau);
    REQUIRE(state.log.back().kind == StageOutcome::Case2);
    CHECK(state.log.back().witness == 2);
    CHECK(state.prefix.len == 3);
    CHECK(state.prefix.bits == parse_set("set: 0", Universe{8}));

    state = diag_step_subset(a, gen_trivial_uie(a), std::move(state), tau);
    REQUIRE(state.log.back().kind == StageOutcome::Compressible);

    CHECK(format_stage_log(state) == "stage 0 case1 1\nstage 1 case2 2\nstage 2 caseC\n");
}

TEST_CASE("subset engine: one-step exemplars at N = 16") {
    const BitVector a = fixtures::evens(16);
    const std::size_t tau = 12;
    std::mt19937_64 rng(404);

    // escape: any input containing 0 emits 5, which is odd
    auto s1 = diag_step_subset(a, escape_op(16), DiagonalState::initial(16), tau);
    REQUIRE(s1.log.back().kind == StageOutcome::Case1);
    CHECK(s1.log.back().witness == 1);
    // Case 1 is permanent: every superset of the committed prefix still escapes
    for (int t = 0; t < 50; ++t) {
        BitVector sup = s1.prefix.bits;
        for (std::size_t i = 0; i < 16; ++i)
            if (rng() & 1) sup.set(i);
        CHECK_FALSE(apply(escape_op(16), sup).subset_of(a));
    }

    // bodies-{0} introenumerator: dropping 0 collapses the output to nothing
    EnumerationOperator through_zero(Universe{16}, "through_zero");
    for (std::size_t x = 0; x < 16; x += 2)
        through_zero.add_axiom(x, parse_set("set: 0", Universe{16}));
    auto s2 = diag_step_subset(a, through_zero, DiagonalState::initial(16), tau);
    REQUIRE(s2.log.back().kind == StageOutcome::Case2);
    CHECK(s2.log.back().witness == 1);
    CHECK(s2.prefix.len == 1);
    CHECK(s2.prefix.bits.none());
    // Case 2 is permanent: every subset of the ambient set stays strictly inside
    const BitVector ambient = a.range(1, 16);
    for (int t = 0; t < 50; ++t) {
        BitVector sub = ambient;
        for (std::size_t i = 0; i < 16; ++i)
            if (rng() & 1) sub.set(i, false);
        CHECK(apply(through_zero, sub).none());
    }

    // the full introenumerator: any surviving even element regenerates all of A
    auto s3 = diag_step_subset(a, gen_trivial_uie(a), DiagonalState::initial(16), tau);
    REQUIRE(s3.log.back().kind == StageOutcome::Compressible);
    CHECK(subset_cases_failed(a, gen_trivial_uie(a), DiagonalState::initial(16).prefix, tau));
}

TEST_CASE("subset engine preconditions") {
    const BitVector a = fixtures::evens(8);
    auto state = DiagonalState::initial(8);
    state.prefix = {parse_set("set: 1", Universe{8}), 2};  // 1 is not in A
    CHECK_THROWS_AS(diag_step_subset(a, escape_op(8), std::move(state), 6), Error);

    auto tall = DiagonalState::initial(8);
    tall.prefix = {parse_set("set: 0,2,4,6", Universe{8}), 8};  // nothing left past the prefix
    CHECK_THROWS_AS(diag_step_subset(a, escape_op(8), std::move(tall), 6), Error);
}

TEST_CASE("diag_run: success path yields a verified subset") {
    const BitVector a = fixtures::evens(8);
    const std::vector<EnumerationOperator> ops = {escape_op(8), evens_identity(8)};
    const auto res = diag_run(a, ops, 6);
    REQUIRE(res.success);
    CHECK(res.subset == parse_set("set: 0,4,6", Universe{8}));
    CHECK(verify_diag(a, ops, res.subset, 6));
    CHECK_FALSE(res.compress_index.has_value());

    CHECK_THROWS_AS(diag_run(parse_set("set: 0,2", Universe{8}), ops, 6), Error);
}

TEST_CASE("diag_run: the dead-end operator hands off to compression") {
    const BitVector a = fixtures::evens(8);
    const std::vector<EnumerationOperator> ops = {escape_op(8), evens_identity(8),
                                                  gen_trivial_uie(a)};
    const auto res = diag_run(a, ops, 6);
    CHECK_FALSE(res.success);
    REQUIRE(res.compress_index == 2);

    // the hand-off hypothesis holds at the final prefix...
    CHECK(subset_cases_failed(a, ops[2], res.state.prefix, 6));
    CHECK_FALSE(subset_cases_failed(a, ops[0], DiagonalState::initial(8).prefix, 6));

    // ...and the relativized machine accepts it
    const auto in = machine_encode_rel(a, ops[2], res.state.prefix.bits, res.state.prefix.len, 1);
    CHECK(in.gamma == "01111");
    const BitVector out = machine_decode_rel(in.gamma, ops[2], res.state.prefix.bits,
                                             res.state.prefix.len,
                                             a.range(0, res.state.prefix.len).count());
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(out.test(i) == a.test(i));
}

TEST_CASE("verify_diag is a real oracle") {
    const BitVector a = fixtures::evens(8);
    const std::vector<EnumerationOperator> ops = {gen_trivial_uie(a)};
    // any nonempty subset regenerates A under the trivial introenumerator
    CHECK_FALSE(verify_diag(a, ops, parse_set("set: 0,4,6", Universe{8}), 6));
    CHECK_FALSE(verify_diag(a, ops, parse_set("set: 0,1", Universe{8}), 6));   // not a subset
    CHECK_FALSE(verify_diag(a, ops, parse_set("set: 0,2", Universe{8}), 6));   // loses the tail
    const std::vector<EnumerationOperator> weak = {escape_op(8)};
    CHECK(verify_diag(a, weak, parse_set("set: 0,4,6", Universe{8}), 6));
}

TEST_CASE("random subset runs: success verifies, hand-offs compress") {
    std::mt19937_64 rng(2718);
    int successes = 0, handoffs = 0;
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 10 + rng() % 5;
        const std::size_t tau = (3 * n + 3) / 4;
        const BitVector a = fixtures::random_infinite_like(n, rng);
        std::vector<EnumerationOperator> ops;
        // every third family leads with its exact introenumerator, the
        // guaranteed dead end
        if (t % 3 == 0) ops.push_back(gen_trivial_uie(a));
        const std::size_t k = 1 + rng() % 3;
        for (std::size_t i = 0; i < k; ++i) {
            EnumerationOperator op(Universe{n});
            const std::size_t axioms = 1 + rng() % (n - 1);  // keep |axioms| <= N
            for (std::size_t j = 0; j < axioms; ++j) {
                BitVector body(n);
                for (std::size_t x = 0; x < n; ++x)
                    if (rng() % 4 == 0) body.set(x);
                op.add_axiom(rng() % n, body);
            }
            ops.push_back(std::move(op));
        }
        DiagResult res;
        try {
            res = diag_run(a, ops, tau);
        } catch (const Error& e) {
            CHECK(e.code() == "universe_too_small");
            continue;
        }
        if (res.success) {
            ++successes;
            REQUIRE(verify_diag(a, ops, res.subset, tau));
        } else {
            ++handoffs;
            const auto& pre = res.state.prefix;
            REQUIRE(subset_cases_failed(a, ops[*res.compress_index], pre, tau));
            const bool m1_live =
                pre.len + 1 < n && infinite_like(pre.bits | a.range(pre.len + 1, n), tau);
            if (m1_live) {
                const auto in =
                    machine_encode_rel(a, ops[*res.compress_index], pre.bits, pre.len, 1);
                const BitVector out =
                    machine_decode_rel(in.gamma, ops[*res.compress_index], pre.bits, pre.len,
                                       a.range(0, pre.len).count());
                for (std::size_t i = 0; i < out.size(); ++i) REQUIRE(out.test(i) == a.test(i));
            }
        }
    }
    CHECK(successes > 0);
    CHECK(handoffs > 0);
}

TEST_CASE("degree engine: frozen Case 1 and Case 2 outcomes") {
    const BitVector a = fixtures::evens(8);
    const auto id = full_identity(8);
    const std::size_t tau = 6;

    auto s1 = diag_step_degree(a, a, id, id, escape_op(8), DiagonalState::initial(8), tau);
    REQUIRE(s1.log.back().kind == StageOutcome::Case1);
    CHECK(s1.log.back().witness == 1);
    CHECK(s1.prefix.bits == parse_set("set: 0", Universe{8}));
    CHECK(format_stage_log(s1) == "stage 0 case1 1\n");

    auto s2 = diag_step_degree(a, a, id, id, evens_identity(8), DiagonalState::initial(8), tau);
    REQUIRE(s2.log.back().kind == StageOutcome::Case2);
    CHECK(s2.log.back().witness == 1);
    CHECK(s2.log.back().excluded == 2);
    CHECK(s2.excluded == parse_set("set: 2", Universe{8}));
    CHECK(format_stage_log(s2) == "stage 0 case2 1 2\n");
}

TEST_CASE("degree engine: preconditions are checked") {
    const BitVector a = fixtures::evens(8);
    const auto id = full_identity(8);
    CHECK_THROWS_AS(
        diag_step_degree(a, ~a, id, id, escape_op(8), DiagonalState::initial(8), 6), Error);
}

TEST_CASE("degree engine: the dead end hands off an autoreduction that works") {
    const BitVector a = fixtures::evens(8);
    const auto id = full_identity(8);
    const auto gamma = gen_trivial_uie(a);
    const std::size_t tau = 6;

    const auto s = diag_step_degree(a, a, id, id, gamma, DiagonalState::initial(8), tau);
    REQUIRE(s.log.back().kind == StageOutcome::Compressible);

    const auto psi = make_diag_psi(gamma, id, id, s, tau);
    CHECK(psi.kind() == "diag");
    CHECK(is_autoreducible(psi, a).autoreducible);

    // structural flip-invariance carries over
    std::mt19937_64 rng(99);
    for (int t = 0; t < 2000; ++t) {
        const BitVector z = BitVector::from_mask(8, rng() & 0xFF);
        const std::size_t i = rng() % 8;
        CHECK(psi_eval(psi, i, z) == psi_eval(psi, i, flip(z, i)));
    }
}
