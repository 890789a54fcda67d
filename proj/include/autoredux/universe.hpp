#ifndef AUTOREDUX_UNIVERSE_HPP
#define AUTOREDUX_UNIVERSE_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "autoredux/error.hpp"

namespace autoredux {

// The finite universe {0, ..., n-1}. Exhaustive modes require n <= 64;
// sampling and machine modes may go larger.
struct Universe {
    std::size_t n = 0;

    bool operator==(const Universe&) const = default;
};

// Characteristic string of a subset of the universe. Doubles as a binary
// string / cylinder prefix; position 0 is the leftmost character.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}
    explicit BitVector(Universe u) : BitVector(u.n) {}

    // Low 64 bits from a word mask; requires n <= 64.
    static BitVector from_mask(std::size_t n, std::uint64_t mask);
    // Parse a line of '0'/'1' characters, leftmost character = position 0.
    static BitVector from_string(std::string_view s);

    std::size_t size() const { return n_; }
    bool empty_universe() const { return n_ == 0; }

    bool test(std::size_t i) const {
        check_index(i);
        return (words_[i >> 6] >> (i & 63)) & 1;
    }
    void set(std::size_t i, bool v = true) {
        check_index(i);
        const std::uint64_t bit = std::uint64_t(1) << (i & 63);
        if (v)
            words_[i >> 6] |= bit;
        else
            words_[i >> 6] &= ~bit;
    }

    std::size_t count() const;
    bool none() const;
    bool subset_of(const BitVector& other) const;
    bool intersects(const BitVector& other) const;

    BitVector operator~() const;  // complement within the universe
    BitVector& operator|=(const BitVector& other);
    BitVector& operator&=(const BitVector& other);
    friend BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }
    friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }

    bool operator==(const BitVector&) const = default;

    // The set A ∩ [lo, hi), kept in the same universe.
    BitVector range(std::size_t lo, std::size_t hi) const;
    // The length-m prefix string A↾m, as a BitVector over a universe of size m.
    BitVector prefix(std::size_t m) const;
    // Copy into a (not smaller) universe of size n, high positions zero.
    BitVector widened(std::size_t n) const;

    std::vector<std::size_t> elements() const;
    std::string str() const;

    // Word mask of positions [0, min(n,64)); handy for exhaustive loops.
    std::uint64_t low_mask() const { return words_.empty() ? 0 : words_[0]; }

private:
    void check_index(std::size_t i) const {
        if (i >= n_) throw Error("index_error", "position " + std::to_string(i) + " outside universe of size " + std::to_string(n_));
    }
    void clear_tail();

    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

// X̂ differing from A exactly at position n.
BitVector flip(const BitVector& a, std::size_t n);
// A − {n}: position n forced to 0.
BitVector mask_out(const BitVector& a, std::size_t n);

// Finite-universe stand-in for "infinite": contains an element >= tau.
bool infinite_like(const BitVector& a, std::size_t tau);

// Cantor pairing z = (x+y)(x+y+1)/2 + y.
std::uint64_t pair(std::uint64_t x, std::uint64_t y);
std::pair<std::uint64_t, std::uint64_t> unpair(std::uint64_t z);

// Canonical finite-set index D_y = { i : bit i of y is 1 }.
BitVector decode_finite_set(std::uint64_t y, Universe u);
std::uint64_t encode_finite_set(const BitVector& d);

// Set text format: a line of '0'/'1' characters, or `set: 1,3,5`.
BitVector parse_set(std::string_view text, Universe u);
std::string format_set(const BitVector& a);

// An ordered stream of distinct naturals < n, possibly exhausted.
class SetEnumeration {
public:
    SetEnumeration() = default;
    explicit SetEnumeration(std::vector<std::size_t> items);

    bool exhausted() const { return pos_ >= items_.size(); }
    std::size_t next();
    std::size_t emitted_so_far() const { return pos_; }
    const std::vector<std::size_t>& order() const { return items_; }

    static SetEnumeration ascending(const BitVector& a);

private:
    std::vector<std::size_t> items_;
    std::size_t pos_ = 0;
};

}  // namespace autoredux

#endif
