#include "autoredux/universe.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_set>

namespace autoredux {

void BitVector::clear_tail() {
    if (n_ & 63) words_.back() &= (std::uint64_t(1) << (n_ & 63)) - 1;
}

BitVector BitVector::from_mask(std::size_t n, std::uint64_t mask) {
    if (n > 64) throw Error("coding_error", "from_mask requires a universe of size <= 64");
    BitVector v(n);
    if (n > 0) {
        v.words_[0] = mask;
        v.clear_tail();
        if (v.words_[0] != mask)
            throw Error("out_of_universe", "mask has a set bit >= " + std::to_string(n));
    } else if (mask != 0) {
        throw Error("out_of_universe", "nonzero mask in empty universe");
    }
    return v;
}

BitVector BitVector::from_string(std::string_view s) {
    BitVector v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1')
            v.set(i);
        else if (s[i] != '0')
            throw Error("parse_error", "set string must contain only '0'/'1'");
    }
    return v;
}

std::size_t BitVector::count() const {
    std::size_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
}

bool BitVector::none() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool BitVector::subset_of(const BitVector& other) const {
    if (n_ != other.n_) throw Error("universe_mismatch", "subset test across universes");
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~other.words_[i]) return false;
    return true;
}

bool BitVector::intersects(const BitVector& other) const {
    if (n_ != other.n_) throw Error("universe_mismatch", "intersection test across universes");
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & other.words_[i]) return true;
    return false;
}

BitVector BitVector::operator~() const {
    BitVector v(*this);
    for (auto& w : v.words_) w = ~w;
    v.clear_tail();
    return v;
}

BitVector& BitVector::operator|=(const BitVector& other) {
    if (n_ != other.n_) throw Error("universe_mismatch", "union across universes");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) {
    if (n_ != other.n_) throw Error("universe_mismatch", "intersection across universes");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
}

BitVector BitVector::range(std::size_t lo, std::size_t hi) const {
    BitVector v(n_);
    hi = std::min(hi, n_);
    for (std::size_t i = lo; i < hi; ++i)
        if (test(i)) v.set(i);
    return v;
}

BitVector BitVector::prefix(std::size_t m) const {
    if (m > n_) throw Error("index_error", "prefix longer than universe");
    BitVector v(m);
    for (std::size_t i = 0; i < m; ++i)
        if (test(i)) v.set(i);
    return v;
}

BitVector BitVector::widened(std::size_t n) const {
    if (n < n_) throw Error("index_error", "widened target smaller than universe");
    BitVector v(n);
    for (std::size_t i = 0; i < n_; ++i)
        if (test(i)) v.set(i);
    return v;
}

std::vector<std::size_t> BitVector::elements() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t x = words_[w];
        while (x) {
            out.push_back(w * 64 + std::countr_zero(x));
            x &= x - 1;
        }
    }
    return out;
}

std::string BitVector::str() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
        if (test(i)) s[i] = '1';
    return s;
}

BitVector flip(const BitVector& a, std::size_t n) {
    BitVector v(a);
    v.set(n, !a.test(n));
    return v;
}

BitVector mask_out(const BitVector& a, std::size_t n) {
    BitVector v(a);
    v.set(n, false);
    return v;
}

bool infinite_like(const BitVector& a, std::size_t tau) {
    for (std::size_t i = tau; i < a.size(); ++i)
        if (a.test(i)) return true;
    return false;
}

std::uint64_t pair(std::uint64_t x, std::uint64_t y) {
    const unsigned __int128 s = (unsigned __int128)x + y;
    const unsigned __int128 z = s * (s + 1) / 2 + y;
    if (z > UINT64_MAX) throw Error("coding_error", "Cantor pairing overflows the machine word");
    return (std::uint64_t)z;
}

std::pair<std::uint64_t, std::uint64_t> unpair(std::uint64_t z) {
    // s = floor((sqrt(8z+1)-1)/2), recovered without floating point drift.
    std::uint64_t s = (std::uint64_t)((std::sqrt(8.0 * (double)z + 1.0) - 1.0) / 2.0);
    auto tri = [](std::uint64_t t) { return (unsigned __int128)t * (t + 1) / 2; };
    while (tri(s + 1) <= z) ++s;
    while (tri(s) > z) --s;
    const std::uint64_t y = z - (std::uint64_t)tri(s);
    return {s - y, y};
}

BitVector decode_finite_set(std::uint64_t y, Universe u) {
    BitVector v(u.n);
    for (std::size_t i = 0; y >> i; ++i) {
        if ((y >> i) & 1) {
            if (i >= u.n)
                throw Error("out_of_universe", "canonical index has a set bit >= " + std::to_string(u.n));
            v.set(i);
        }
    }
    return v;
}

std::uint64_t encode_finite_set(const BitVector& d) {
    if (d.size() > 64) {
        for (std::size_t i = 64; i < d.size(); ++i)
            if (d.test(i)) throw Error("coding_error", "canonical index overflows the machine word");
    }
    return d.low_mask();
}

BitVector parse_set(std::string_view text, Universe u) {
    // strip whitespace at both ends
    auto b = text.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return BitVector(u.n);
    auto e = text.find_last_not_of(" \t\r\n");
    text = text.substr(b, e - b + 1);

    if (text.rfind("set:", 0) == 0) {
        BitVector v(u.n);
        std::string body(text.substr(4));
        std::size_t pos = 0;
        while (pos < body.size()) {
            while (pos < body.size() && (body[pos] == ' ' || body[pos] == ',')) ++pos;
            if (pos >= body.size()) break;
            std::size_t used = 0;
            unsigned long long x;
            try {
                x = std::stoull(body.substr(pos), &used);
            } catch (const std::exception&) {
                throw Error("parse_error", "bad element list: " + body);
            }
            if (x >= u.n) throw Error("out_of_universe", "element " + std::to_string(x) + " >= " + std::to_string(u.n));
            v.set(x);
            pos += used;
        }
        return v;
    }
    BitVector v = BitVector::from_string(text);
    if (v.size() != u.n)
        throw Error("universe_mismatch", "set string length " + std::to_string(v.size()) + " != universe size " + std::to_string(u.n));
    return v;
}

std::string format_set(const BitVector& a) { return a.str(); }

SetEnumeration::SetEnumeration(std::vector<std::size_t> items) : items_(std::move(items)) {
    std::unordered_set<std::size_t> seen;
    for (auto x : items_)
        if (!seen.insert(x).second)
            throw Error("enumeration_error", "element " + std::to_string(x) + " repeats in enumeration");
}

std::size_t SetEnumeration::next() {
    if (exhausted()) throw Error("enumeration_error", "stream exhausted");
    return items_[pos_++];
}

SetEnumeration SetEnumeration::ascending(const BitVector& a) {
    return SetEnumeration(a.elements());
}

}  // namespace autoredux
