#ifndef AUTOREDUX_PREFIXMACHINE_HPP
#define AUTOREDUX_PREFIXMACHINE_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "autoredux/enumop.hpp"
#include "autoredux/universe.hpp"

namespace autoredux {

// Self-delimiting header 0^{|sigma|} 1 sigma, where sigma is the minimal
// binary form of v (empty for 0).
std::string encode_header(std::uint64_t v);
// Returns (value, consumed length), reading at `pos`.
std::pair<std::uint64_t, std::size_t> decode_header(std::string_view bits, std::size_t pos);

// gamma = header(m) · header(c_m) · payload, with the parsed view alongside.
struct MachineInput {
    std::string gamma;    // ASCII '0'/'1'
    std::size_t m = 0;
    std::size_t c_m = 0;
    std::size_t n_m = 0;  // payload covers positions [payload_start, n_m)
    std::size_t payload_start = 0;   // universe position of the first payload bit
    std::size_t payload_offset = 0;  // index into gamma where the payload begins
};

// Splits a raw gamma string into its parsed view (payload bounds need the
// window start, i.e. m for the plain machine, |b_i|+m for the relativized one).
MachineInput parse_machine_input(std::string_view gamma, std::size_t window_start_extra = 0);

// Encoder for the plain machine: walks the chain n_1 < ... < n_m of least
// stages where the staged operator rebuilds A↾p from A ∩ [p, n_p), then emits
// headers for m and c_m = |A↾m| plus the payload A↾[m, n_m).
MachineInput machine_encode(const BitVector& a, const EnumerationOperator& gamma_op,
                            std::size_t m);

// Replays the payload bit by bit, running the staged operator after each bit,
// collecting heads below m until exactly c_m ones are found. Returns A↾n_m
// (a BitVector over a universe of size n_m).
BitVector machine_decode(std::string_view gamma, const EnumerationOperator& gamma_op);

// Relativized pair: the machine hardwires the stage-i prefix b_i and the
// count of ones of A below |b_i|.
MachineInput machine_encode_rel(const BitVector& a, const EnumerationOperator& gamma_op,
                                const BitVector& b_prefix_bits, std::size_t b_len,
                                std::size_t m);
BitVector machine_decode_rel(std::string_view gamma, const EnumerationOperator& gamma_op,
                             const BitVector& b_prefix_bits, std::size_t b_len,
                             std::size_t ones_below);

struct CompressionReport {
    std::size_t m = 0;
    std::size_t c_m = 0;
    std::size_t n_m = 0;
    std::size_t input_len = 0;
    std::size_t bound = 0;  // n_m - m + 4*ceil(log2(m+1)) + 2
    std::size_t slack = 0;
};

CompressionReport compression_report(const BitVector& a, const EnumerationOperator& gamma_op,
                                     std::size_t m);
std::string format_report_csv_row(const CompressionReport& r);

// ceil(log2(v+1)), i.e. the minimal binary length of v.
std::size_t bit_length(std::uint64_t v);

}  // namespace autoredux

#endif
