#include "autoredux/autoreduce.hpp"

#include <atomic>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

namespace autoredux {

AutoreductionProcedure AutoreductionProcedure::cototal(EnumerationOperator delta) {
    return AutoreductionProcedure(
        "cototal", [delta = std::move(delta)](std::size_t n, const BitVector& z) {
            return apply(delta, ~z).test(n);
        });
}

AutoreductionProcedure AutoreductionProcedure::uie(EnumerationOperator phi,
                                                  EnumerationOperator gamma,
                                                  EnumerationOperator delta, std::size_t tau) {
    return AutoreductionProcedure(
        "uie", [phi = std::move(phi), gamma = std::move(gamma), delta = std::move(delta),
                tau](std::size_t n, const BitVector& z) {
            const BitVector phi_z = apply(phi, z);
            if (!infinite_like(phi_z, tau)) return true;
            return apply(delta, apply(gamma, phi_z)).test(n);
        });
}

AutoreductionProcedure AutoreductionProcedure::diag(EnumerationOperator gamma_i,
                                                    EnumerationOperator phi,
                                                    EnumerationOperator delta, BitVector c_prefix,
                                                    std::size_t c_len, BitVector excluded,
                                                    std::size_t tau) {
    return AutoreductionProcedure(
        "diag", [gamma_i = std::move(gamma_i), phi = std::move(phi), delta = std::move(delta),
                 c_prefix = std::move(c_prefix), c_len, excluded = std::move(excluded),
                 tau](std::size_t n, const BitVector& z) {
            const BitVector phi_z = apply(phi, z & ~excluded);
            if (!infinite_like(phi_z, tau)) return true;
            const BitVector input = c_prefix | phi_z.range(c_len, z.size());
            return apply(delta, apply(gamma_i, input)).test(n);
        });
}

AutoreductionProcedure AutoreductionProcedure::custom(std::string kind, Fn fn) {
    return AutoreductionProcedure(std::move(kind), std::move(fn));
}

AutoreductionProcedure AutoreductionProcedure::zero() {
    return AutoreductionProcedure("zero", [](std::size_t, const BitVector&) { return false; });
}

bool psi_eval(const AutoreductionProcedure& psi, std::size_t n, const BitVector& a) {
    if (n >= a.size()) throw Error("index_error", "psi_eval position outside universe");
    return psi.eval(n, a);
}

AutoCheck is_autoreducible(const AutoreductionProcedure& psi, const BitVector& a) {
    for (std::size_t n = 0; n < a.size(); ++n) {
        if (psi.eval(n, a) != a.test(n)) return {false, n};
    }
    return {true, std::nullopt};
}

BitVector flip_refute(const AutoreductionProcedure& psi, const BitVector& a, std::size_t n) {
    if (n >= a.size()) throw Error("index_error", "flip_refute position outside universe");
    if (!is_autoreducible(psi, a).autoreducible)
        throw Error("precondition", "flip_refute requires a Psi-autoreducible set");
    return flip(a, n);
}

std::uint64_t count_autoreducible(const AutoreductionProcedure& psi, std::size_t n) {
    if (n > 24) throw Error("guard_exceeded", "count_autoreducible is exhaustive; N <= 24");
    std::uint64_t count = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        if (is_autoreducible(psi, BitVector::from_mask(n, mask)).autoreducible) ++count;
    }
    return count;
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t samples) {
    if (samples == 0) throw Error("precondition", "Wilson interval needs samples >= 1");
    const double z = 1.959963984540054;  // 95% two-sided
    const double n = (double)samples;
    const double p = (double)successes / n;
    const double denom = 1.0 + z * z / n;
    const double center = (p + z * z / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

SampleResult sample_fraction(const AutoreductionProcedure& psi, std::size_t n,
                             std::uint64_t samples, std::uint64_t seed, unsigned threads) {
    if (samples == 0) throw Error("precondition", "sample_fraction needs samples >= 1");
    constexpr std::uint64_t kChunks = 64;
    std::vector<std::uint64_t> chunk_hits(kChunks, 0);

    auto run_chunk = [&](std::uint64_t c) {
        const std::uint64_t lo = samples * c / kChunks;
        const std::uint64_t hi = samples * (c + 1) / kChunks;
        std::mt19937_64 rng(splitmix64(seed * kChunks + c));
        std::uint64_t hits = 0;
        const std::size_t words = (n + 63) / 64;
        for (std::uint64_t s = lo; s < hi; ++s) {
            BitVector a(n);
            for (std::size_t w = 0; w < words; ++w) {
                const std::uint64_t bits = rng();
                for (std::size_t b = 0; b < 64 && w * 64 + b < n; ++b)
                    if ((bits >> b) & 1) a.set(w * 64 + b);
            }
            if (is_autoreducible(psi, a).autoreducible) ++hits;
        }
        chunk_hits[c] = hits;
    };

    if (threads <= 1) {
        for (std::uint64_t c = 0; c < kChunks; ++c) run_chunk(c);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::uint64_t> next{0};
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::uint64_t c = next.fetch_add(1); c < kChunks; c = next.fetch_add(1))
                    run_chunk(c);
            });
        }
        for (auto& th : pool) th.join();
    }

    std::uint64_t hits = 0;
    for (auto h : chunk_hits) hits += h;
    SampleResult r;
    r.successes = hits;
    r.samples = samples;
    r.fraction = (double)hits / (double)samples;
    r.ci = wilson_interval(hits, samples);
    return r;
}

DensityReport density_experiment(const AutoreductionProcedure& psi, const ClassPredicate& in_class,
                                 const BitVector& sigma_bits, std::size_t sigma_len,
                                 std::size_t position, std::size_t n) {
    if (n > 24) throw Error("guard_exceeded", "density_experiment is exhaustive; N <= 24");
    if (sigma_len > position || position >= n)
        throw Error("precondition", "density_experiment needs |sigma| <= position < N");

    DensityReport rep;
    rep.sigma = sigma_bits;
    rep.sigma_len = sigma_len;
    rep.position = position;
    const std::size_t log2_den = n - sigma_len;
    rep.s_in_cylinder.log2_den = rep.p0.log2_den = rep.p1.log2_den = rep.p2.log2_den = log2_den;

    // Enumerate the cylinder [sigma]: fixed prefix, free suffix.
    std::uint64_t base = 0;
    for (std::size_t i = 0; i < sigma_len; ++i)
        if (sigma_bits.test(i)) base |= std::uint64_t(1) << i;

    std::vector<std::uint64_t> p0_members, p1_members;
    for (std::uint64_t suffix = 0; suffix < (std::uint64_t(1) << log2_den); ++suffix) {
        const std::uint64_t mask = base | (suffix << sigma_len);
        const BitVector x = BitVector::from_mask(n, mask);
        if (!in_class(x)) continue;
        ++rep.s_in_cylinder.count;
        if (psi.eval(position, x)) {
            ++rep.p1.count;
            p1_members.push_back(mask);
        } else {
            ++rep.p0.count;
            p0_members.push_back(mask);
        }
    }

    const bool from_p0 = rep.p0.count >= rep.p1.count;
    rep.source_value = from_p0 ? 0 : 1;
    const auto& source = from_p0 ? p0_members : p1_members;
    // Flipping at position >= |sigma| stays inside the cylinder.
    rep.p2.count = source.size();
    for (auto mask : source) {
        const BitVector y = BitVector::from_mask(n, mask ^ (std::uint64_t(1) << position));
        if (in_class(y)) {
            rep.p2_meets_class = true;
            break;
        }
    }
    return rep;
}

}  // namespace autoredux
