#include "autoredux/prefixmachine.hpp"

#include <sstream>

namespace autoredux {

std::size_t bit_length(std::uint64_t v) {
    std::size_t len = 0;
    while (v) {
        ++len;
        v >>= 1;
    }
    return len;
}

std::string encode_header(std::uint64_t v) {
    const std::size_t len = bit_length(v);
    std::string out(len, '0');
    out += '1';
    for (std::size_t i = 0; i < len; ++i)
        out += ((v >> (len - 1 - i)) & 1) ? '1' : '0';
    return out;
}

std::pair<std::uint64_t, std::size_t> decode_header(std::string_view bits, std::size_t pos) {
    std::size_t len = 0;
    std::size_t i = pos;
    while (i < bits.size() && bits[i] == '0') {
        ++len;
        ++i;
    }
    if (i >= bits.size()) throw Error("malformed_input", "header truncated before its 1 marker");
    ++i;  // the marker
    if (i + len > bits.size()) throw Error("malformed_input", "header truncated inside sigma");
    std::uint64_t v = 0;
    for (std::size_t j = 0; j < len; ++j) {
        v <<= 1;
        if (bits[i + j] == '1')
            v |= 1;
        else if (bits[i + j] != '0')
            throw Error("malformed_input", "header contains a non-bit character");
    }
    return {v, (i + len) - pos};
}

MachineInput parse_machine_input(std::string_view gamma, std::size_t window_start_extra) {
    MachineInput in;
    in.gamma = std::string(gamma);
    auto [m, used1] = decode_header(gamma, 0);
    auto [c, used2] = decode_header(gamma, used1);
    in.m = m;
    in.c_m = c;
    in.payload_offset = used1 + used2;
    in.payload_start = window_start_extra + m;
    in.n_m = in.payload_start + (gamma.size() - in.payload_offset);
    return in;
}

namespace {

// Least-stage chain: n_p for p = 1..m, each strictly above the previous, at
// which the staged operator rebuilds A↾p from the window [lo + p, n_p).
std::size_t chain_search(const BitVector& a, const EnumerationOperator& op,
                         const BitVector& base, std::size_t lo, std::size_t m) {
    const std::size_t n_univ = a.size();
    std::size_t n_prev = 0;
    for (std::size_t p = 1; p <= m; ++p) {
        bool found = false;
        for (std::size_t n = std::max(n_prev + 1, lo + p); n <= n_univ; ++n) {
            const BitVector input = base | a.range(lo + p, n);
            if (stage_apply(op, input, n).range(0, lo + p) == a.range(0, lo + p)) {
                n_prev = n;
                found = true;
                break;
            }
        }
        if (!found)
            throw Error("universe_too_small", "universe too small for m = " + std::to_string(p));
    }
    return n_prev;
}

std::string payload_bits(const BitVector& a, std::size_t lo, std::size_t hi) {
    std::string s;
    s.reserve(hi - lo);
    for (std::size_t i = lo; i < hi; ++i) s += a.test(i) ? '1' : '0';
    return s;
}

}  // namespace

MachineInput machine_encode(const BitVector& a, const EnumerationOperator& gamma_op,
                            std::size_t m) {
    if (m < 1 || m >= a.size()) throw Error("precondition", "machine_encode needs 1 <= m < N");
    if (a.size() != gamma_op.universe().n)
        throw Error("universe_mismatch", "set and operator universes differ");

    const std::size_t n_m = chain_search(a, gamma_op, BitVector(a.size()), 0, m);
    const std::size_t c_m = a.range(0, m).count();

    MachineInput in;
    in.m = m;
    in.c_m = c_m;
    in.n_m = n_m;
    in.payload_start = m;
    const std::string header = encode_header(m) + encode_header(c_m);
    in.payload_offset = header.size();
    in.gamma = header + payload_bits(a, m, n_m);
    return in;
}

BitVector machine_decode(std::string_view gamma, const EnumerationOperator& gamma_op) {
    const MachineInput in = parse_machine_input(gamma);
    const std::size_t n_univ = gamma_op.universe().n;
    const std::size_t m = in.m;
    const std::size_t payload_len = in.gamma.size() - in.payload_offset;
    if (m + payload_len > n_univ)
        throw Error("malformed_input", "payload runs past the operator's universe");
    if (in.c_m > m) throw Error("malformed_input", "c_m exceeds m");

    BitVector below_m(n_univ);
    if (in.c_m > 0) {
        BitVector s(n_univ);
        bool done = false;
        for (std::size_t j = 0; j <= payload_len && !done; ++j) {
            if (j > 0 && in.gamma[in.payload_offset + j - 1] == '1') s.set(m + j - 1);
            const BitVector out = stage_apply(gamma_op, s, m + j);
            const BitVector low = out.range(0, m);
            const std::size_t ones = low.count();
            if (ones >= in.c_m) {
                if (ones > in.c_m)
                    throw Error("malformed_input", "enumeration overshoots c_m");
                below_m = low;
                done = true;
            }
        }
        if (!done)
            throw Error("insufficient_payload",
                        "payload exhausted before " + std::to_string(in.c_m) + " ones were determined");
    }

    BitVector result(m + payload_len);
    for (std::size_t i = 0; i < m; ++i)
        if (below_m.test(i)) result.set(i);
    for (std::size_t j = 0; j < payload_len; ++j)
        if (in.gamma[in.payload_offset + j] == '1') result.set(m + j);
    return result;
}

MachineInput machine_encode_rel(const BitVector& a, const EnumerationOperator& gamma_op,
                                const BitVector& b_prefix_bits, std::size_t b_len,
                                std::size_t m) {
    if (m < 1 || b_len + m >= a.size())
        throw Error("precondition", "machine_encode_rel needs 1 <= m and |b_i| + m < N");
    if (a.size() != gamma_op.universe().n || b_prefix_bits.size() != a.size())
        throw Error("universe_mismatch", "set, prefix, and operator universes differ");
    for (std::size_t i = b_len; i < a.size(); ++i)
        if (b_prefix_bits.test(i))
            throw Error("precondition", "prefix has a set bit at or past its length");

    const std::size_t n_m = chain_search(a, gamma_op, b_prefix_bits, b_len, m);
    const std::size_t c_m = a.range(b_len, b_len + m).count();

    MachineInput in;
    in.m = m;
    in.c_m = c_m;
    in.n_m = n_m;
    in.payload_start = b_len + m;
    const std::string header = encode_header(m) + encode_header(c_m);
    in.payload_offset = header.size();
    in.gamma = header + payload_bits(a, b_len + m, n_m);
    return in;
}

BitVector machine_decode_rel(std::string_view gamma, const EnumerationOperator& gamma_op,
                             const BitVector& b_prefix_bits, std::size_t b_len,
                             std::size_t ones_below) {
    const MachineInput in = parse_machine_input(gamma, b_len);
    const std::size_t n_univ = gamma_op.universe().n;
    const std::size_t m = in.m;
    const std::size_t payload_len = in.gamma.size() - in.payload_offset;
    if (b_len + m + payload_len > n_univ)
        throw Error("malformed_input", "payload runs past the operator's universe");
    if (in.c_m > m) throw Error("malformed_input", "c_m exceeds m");

    BitVector low_window(n_univ);   // A ∩ [0, b_len)
    BitVector mid_window(n_univ);   // A ∩ [b_len, b_len + m)
    if (in.c_m > 0 || ones_below > 0) {
        BitVector s = b_prefix_bits;
        bool done = false;
        for (std::size_t j = 0; j <= payload_len && !done; ++j) {
            if (j > 0 && in.gamma[in.payload_offset + j - 1] == '1') s.set(b_len + m + j - 1);
            const BitVector out = stage_apply(gamma_op, s, b_len + m + j);
            const BitVector low = out.range(0, b_len);
            const BitVector mid = out.range(b_len, b_len + m);
            if (low.count() >= ones_below && mid.count() >= in.c_m) {
                if (low.count() > ones_below || mid.count() > in.c_m)
                    throw Error("malformed_input", "enumeration overshoots its stopping counts");
                low_window = low;
                mid_window = mid;
                done = true;
            }
        }
        if (!done)
            throw Error("insufficient_payload",
                        "payload exhausted before the stopping counts were reached");
    }

    BitVector result(b_len + m + payload_len);
    for (std::size_t i = 0; i < b_len; ++i)
        if (low_window.test(i)) result.set(i);
    for (std::size_t i = b_len; i < b_len + m; ++i)
        if (mid_window.test(i)) result.set(i);
    for (std::size_t j = 0; j < payload_len; ++j)
        if (in.gamma[in.payload_offset + j] == '1') result.set(b_len + m + j);
    return result;
}

CompressionReport compression_report(const BitVector& a, const EnumerationOperator& gamma_op,
                                     std::size_t m) {
    const MachineInput in = machine_encode(a, gamma_op, m);
    CompressionReport r;
    r.m = in.m;
    r.c_m = in.c_m;
    r.n_m = in.n_m;
    r.input_len = in.gamma.size();
    r.bound = (in.n_m - in.m) + 4 * bit_length(m) + 2;
    if (r.input_len > r.bound)
        throw Error("bound_violation", "machine input exceeds its length bound");
    r.slack = r.bound - r.input_len;
    return r;
}

std::string format_report_csv_row(const CompressionReport& r) {
    std::ostringstream out;
    out << r.m << ',' << r.c_m << ',' << r.n_m << ',' << r.input_len << ',' << r.bound << ','
        << r.slack;
    return out.str();
}

}  // namespace autoredux
