#ifndef AUTOREDUX_COTOTAL_HPP
#define AUTOREDUX_COTOTAL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "autoredux/universe.hpp"

namespace autoredux {

// A dyadic rational in [0,1) with an exact terminating binary expansion of a
// fixed width: bit k is the coefficient of 2^-(k+1). No floating point.
class Dyadic {
public:
    Dyadic() = default;
    explicit Dyadic(std::size_t width) : bits_(width, 0) {}
    static Dyadic from_string(std::string_view bits);  // e.g. "0111"

    std::size_t width() const { return bits_.size(); }
    bool bit(std::size_t k) const { return bits_.at(k) != 0; }
    void set_bit(std::size_t k, bool v) { bits_.at(k) = v ? 1 : 0; }

    // Adds 2^-len in place; len in [1, width]. Throws on overflow past 1.
    void add_pow(std::size_t len);

    // Numeric order coincides with lexicographic order on the expansions.
    bool operator<(const Dyadic& o) const { return bits_ < o.bits_; }
    bool operator<=(const Dyadic& o) const { return !(o < *this); }
    bool operator==(const Dyadic&) const = default;

    bool is_zero() const;
    std::string str() const;

private:
    std::vector<std::uint8_t> bits_;
};

struct ToyProgram {
    std::size_t length = 1;
    std::optional<std::size_t> halts_at;
};

// A non-descending dyadic approximation sequence with an exactly known limit
// (the last entry, by convention).
class LeftCEReal {
public:
    LeftCEReal(std::size_t width, std::vector<Dyadic> approximations);

    std::size_t width() const { return width_; }
    const std::vector<Dyadic>& approximations() const { return approx_; }
    const Dyadic& limit() const { return approx_.back(); }

private:
    std::size_t width_;
    std::vector<Dyadic> approx_;
};

// q_s = sum of 2^-length over programs with halts_at <= s, one entry per
// halting stage in stage order. Kraft-checked: the full sum must stay < 1.
LeftCEReal make_toy_omega(const std::vector<ToyProgram>& programs, std::size_t width);

// The W-bit expansion of the limit; the oracle for the enumeration procedure.
BitVector true_bits(const LeftCEReal& q);

struct Resolution {
    std::size_t position = 0;
    bool bit = false;
    bool via_comp = false;
    std::size_t q_stage = 0;  // meaningful when !via_comp
};

struct EnumerationTrace {
    std::vector<Resolution> steps;
    std::vector<std::size_t> emitted;  // the 1-positions, in emission order
};

// Enumerates the 1-positions of the limit from an enumeration of its
// 0-positions. Bit k resolves to 0 when k appears in comp, or to 1 when some
// q_s agrees with the resolved prefix below k and shows 1 at k. Consumes only
// positive membership events from comp.
EnumerationTrace enumerate_from_complement(const LeftCEReal& q, SetEnumeration comp);

// File format: header `width <W>`, then lines `q <binary-expansion>` in
// non-descending order.
LeftCEReal parse_lcereal(std::string_view text);
std::string serialize_lcereal(const LeftCEReal& q);

}  // namespace autoredux

#endif
