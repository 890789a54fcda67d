#include "autoredux/cototal.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace autoredux {

Dyadic Dyadic::from_string(std::string_view bits) {
    Dyadic d(bits.size());
    for (std::size_t k = 0; k < bits.size(); ++k) {
        if (bits[k] == '1')
            d.set_bit(k, true);
        else if (bits[k] != '0')
            throw Error("parse_error", "dyadic expansion must contain only '0'/'1'");
    }
    return d;
}

void Dyadic::add_pow(std::size_t len) {
    if (len < 1 || len > width()) throw Error("width_overflow", "2^-" + std::to_string(len) + " does not fit in width " + std::to_string(width()));
    std::size_t k = len;  // position len-1, 1-based carry walk
    while (k > 0) {
        if (!bits_[k - 1]) {
            bits_[k - 1] = 1;
            return;
        }
        bits_[k - 1] = 0;
        --k;
    }
    throw Error("kraft_violation", "dyadic sum reached 1");
}

bool Dyadic::is_zero() const {
    return std::all_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b == 0; });
}

std::string Dyadic::str() const {
    std::string s(width(), '0');
    for (std::size_t k = 0; k < width(); ++k)
        if (bits_[k]) s[k] = '1';
    return s;
}

LeftCEReal::LeftCEReal(std::size_t width, std::vector<Dyadic> approximations)
    : width_(width), approx_(std::move(approximations)) {
    if (approx_.empty()) approx_.emplace_back(width_);
    for (const auto& q : approx_)
        if (q.width() != width_) throw Error("width_overflow", "approximation width mismatch");
    for (std::size_t s = 1; s < approx_.size(); ++s)
        if (approx_[s] < approx_[s - 1])
            throw Error("precondition", "approximation sequence must be non-descending");
}

LeftCEReal make_toy_omega(const std::vector<ToyProgram>& programs, std::size_t width) {
    // Kraft-style check on the full halting sum, exactly.
    {
        Dyadic total(width);
        for (const auto& p : programs)
            if (p.halts_at) total.add_pow(p.length);  // throws kraft_violation on reaching 1
    }

    std::map<std::size_t, std::vector<std::size_t>> by_stage;
    for (const auto& p : programs)
        if (p.halts_at) by_stage[*p.halts_at].push_back(p.length);

    std::vector<Dyadic> qs;
    Dyadic acc(width);
    for (const auto& [stage, lengths] : by_stage) {
        for (auto len : lengths) acc.add_pow(len);
        qs.push_back(acc);
    }
    if (qs.empty()) qs.emplace_back(width);
    return LeftCEReal(width, std::move(qs));
}

BitVector true_bits(const LeftCEReal& q) {
    BitVector v(q.width());
    for (std::size_t k = 0; k < q.width(); ++k)
        if (q.limit().bit(k)) v.set(k);
    return v;
}

EnumerationTrace enumerate_from_complement(const LeftCEReal& q, SetEnumeration comp) {
    const std::size_t w = q.width();
    EnumerationTrace trace;
    std::vector<std::uint8_t> resolved(w, 0);  // the prefix rho, valid below k
    BitVector comp_seen(w);

    for (std::size_t k = 0; k < w; ++k) {
        bool done = false;
        while (!done) {
            // Watcher (a): k already arrived in the complement stream.
            if (comp_seen.test(k)) {
                resolved[k] = 0;
                trace.steps.push_back({k, false, true, 0});
                done = true;
                break;
            }
            // Watcher (b): some approximation agrees with rho below k and
            // shows 1 at k.
            for (std::size_t s = 0; s < q.approximations().size(); ++s) {
                const Dyadic& qs = q.approximations()[s];
                bool agrees = qs.bit(k);
                for (std::size_t i = 0; agrees && i < k; ++i)
                    if (qs.bit(i) != (resolved[i] != 0)) agrees = false;
                if (agrees) {
                    resolved[k] = 1;
                    trace.steps.push_back({k, true, false, s});
                    trace.emitted.push_back(k);
                    done = true;
                    break;
                }
            }
            if (done) break;
            // Feed the complement stream one more positive event.
            if (comp.exhausted())
                throw Error("unresolved_bit", "unresolved at " + std::to_string(k));
            const std::size_t x = comp.next();
            if (x >= w) throw Error("out_of_universe", "complement element " + std::to_string(x));
            comp_seen.set(x);
        }
    }
    return trace;
}

LeftCEReal parse_lcereal(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    std::optional<std::size_t> width;
    std::vector<Dyadic> qs;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "width") {
            long long w;
            if (!(ls >> w) || w < 1)
                throw Error("parse_error", "line " + std::to_string(lineno) + ": bad width header");
            width = (std::size_t)w;
        } else if (tok == "q") {
            if (!width)
                throw Error("parse_error", "line " + std::to_string(lineno) + ": width header must come first");
            std::string bits;
            ls >> bits;
            Dyadic d = Dyadic::from_string(bits);
            if (d.width() != *width)
                throw Error("parse_error", "line " + std::to_string(lineno) + ": expansion width mismatch");
            qs.push_back(std::move(d));
        } else {
            throw Error("parse_error", "line " + std::to_string(lineno) + ": unknown directive '" + tok + "'");
        }
    }
    if (!width) throw Error("parse_error", "missing width header");
    return LeftCEReal(*width, std::move(qs));
}

std::string serialize_lcereal(const LeftCEReal& q) {
    std::ostringstream out;
    out << "width " << q.width() << "\n";
    for (const auto& d : q.approximations()) out << "q " << d.str() << "\n";
    return out.str();
}

}  // namespace autoredux
