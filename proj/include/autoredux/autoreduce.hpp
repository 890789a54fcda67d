#ifndef AUTOREDUX_AUTOREDUCE_HPP
#define AUTOREDUX_AUTOREDUCE_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "autoredux/enumop.hpp"
#include "autoredux/universe.hpp"

namespace autoredux {

// An autoreduction procedure Psi : (index, set) -> bit. Evaluation never
// depends on bit n of the argument: eval always masks position n first, so
// flip-invariance at the queried position is structural.
class AutoreductionProcedure {
public:
    // The callback receives the already-masked set.
    using Fn = std::function<bool(std::size_t, const BitVector&)>;

    // Psi(n, Z) = 1 iff n in Delta(complement(Z)).
    static AutoreductionProcedure cototal(EnumerationOperator delta);

    // Psi(n, Z) = 1 iff n in Delta(Gamma(Phi(Z))) or Phi(Z) is not
    // infinite-like.
    static AutoreductionProcedure uie(EnumerationOperator phi, EnumerationOperator gamma,
                                      EnumerationOperator delta, std::size_t tau);

    // Psi(n, Z) = 1 iff n in Delta(Gamma_i(c · Phi(Z − D)↾[|c|, N))) or
    // Phi(Z − D) is not infinite-like. The diagonalization hand-off shape.
    static AutoreductionProcedure diag(EnumerationOperator gamma_i, EnumerationOperator phi,
                                       EnumerationOperator delta, BitVector c_prefix,
                                       std::size_t c_len, BitVector excluded, std::size_t tau);

    static AutoreductionProcedure custom(std::string kind, Fn fn);
    static AutoreductionProcedure zero();

    bool eval(std::size_t n, const BitVector& a) const { return fn_(n, mask_out(a, n)); }
    const std::string& kind() const { return kind_; }

private:
    AutoreductionProcedure(std::string kind, Fn fn)
        : kind_(std::move(kind)), fn_(std::move(fn)) {}

    std::string kind_;
    Fn fn_;
};

bool psi_eval(const AutoreductionProcedure& psi, std::size_t n, const BitVector& a);

struct AutoCheck {
    bool autoreducible = false;
    std::optional<std::size_t> witness;  // least failing n
};

// true iff A(n) = Psi(n, A − {n}) for every n < N.
AutoCheck is_autoreducible(const AutoreductionProcedure& psi, const BitVector& a);

// flip(a, n); guaranteed to fail autoreducibility at or below n.
// Precondition: a is Psi-autoreducible.
BitVector flip_refute(const AutoreductionProcedure& psi, const BitVector& a, std::size_t n);

// |{ A in 2^N : A is Psi-autoreducible }|; exhaustive, guarded at N <= 24.
std::uint64_t count_autoreducible(const AutoreductionProcedure& psi, std::size_t n);

struct WilsonInterval {
    double low = 0.0;
    double high = 1.0;
};

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t samples);

struct SampleResult {
    double fraction = 0.0;
    WilsonInterval ci;
    std::uint64_t successes = 0;
    std::uint64_t samples = 0;
};

// Fraction of uniformly sampled A that are Psi-autoreducible, with a 95%
// Wilson interval. Deterministic given the seed; chunked so the result is
// independent of the worker count.
SampleResult sample_fraction(const AutoreductionProcedure& psi, std::size_t n,
                             std::uint64_t samples, std::uint64_t seed,
                             unsigned threads = 1);

// Exact count over 2^k, reported as count / 2^log2_den.
struct DyadicMeasure {
    std::uint64_t count = 0;
    std::size_t log2_den = 0;

    double value() const { return (double)count / std::exp2((double)log2_den); }
};

// The partition the measure-zero argument runs on, inside the cylinder [sigma]:
// P_i = { X in S ∩ [sigma] : Psi(n, X − {n}) = i }, and P2 = the flip-image at
// n of the larger part. Measures are relative to [sigma].
struct DensityReport {
    BitVector sigma;
    std::size_t sigma_len = 0;
    std::size_t position = 0;
    DyadicMeasure s_in_cylinder;
    DyadicMeasure p0, p1, p2;
    int source_value = 0;       // which of P0/P1 was flipped into P2
    bool p2_meets_class = false;  // P2 ∩ S ∩ [sigma] nonempty
};

using ClassPredicate = std::function<bool(const BitVector&)>;

DensityReport density_experiment(const AutoreductionProcedure& psi, const ClassPredicate& in_class,
                                 const BitVector& sigma_bits, std::size_t sigma_len,
                                 std::size_t position, std::size_t n);

}  // namespace autoredux

#endif
