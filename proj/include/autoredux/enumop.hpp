#ifndef AUTOREDUX_ENUMOP_HPP
#define AUTOREDUX_ENUMOP_HPP

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "autoredux/universe.hpp"

namespace autoredux {

struct Axiom {
    std::size_t head;
    BitVector body;

    bool operator==(const Axiom&) const = default;
};

// An enumeration operator as an explicit axiom list. The axiom order is the
// stage order: axiom k becomes visible at stage k+1.
class EnumerationOperator {
public:
    explicit EnumerationOperator(Universe u, std::string name = {})
        : u_(u), name_(std::move(name)) {}

    void add_axiom(std::size_t head, const BitVector& body);

    Universe universe() const { return u_; }
    const std::string& name() const { return name_; }
    const std::vector<Axiom>& axioms() const { return axioms_; }
    std::size_t axiom_count() const { return axioms_.size(); }

private:
    Universe u_;
    std::vector<Axiom> axioms_;
    std::string name_;
};

// { x : some axiom <x, D> has D ⊆ b }.
BitVector apply(const EnumerationOperator& op, const BitVector& b);

// apply restricted to the first min(stage, |axioms|) axioms.
BitVector stage_apply(const EnumerationOperator& op, const BitVector& b, std::size_t stage);

// Drives op from an enumeration of its input. Each head is emitted the first
// moment all of one of its bodies has appeared; axiom order breaks ties.
// Returns the emission order; the emitted set equals apply(op, B).
std::vector<std::size_t> apply_stream(const EnumerationOperator& op, SetEnumeration e);

// Right-to-left composition: apply(ops[0], apply(ops[1], ... apply(ops.back(), b))).
BitVector apply_composed(std::span<const EnumerationOperator> ops, const BitVector& b);

// An explicit operator G with apply(G, B) = apply(op2, apply(op1, B)) for all
// B. Exponential in the worst case; guarded at a 2^20 cover search space.
EnumerationOperator reify_composition(const EnumerationOperator& op2,
                                      const EnumerationOperator& op1);

// Operator file format: a required `universe <N>` header, then lines
// `axiom <head> <b1> <b2> ...` (empty body allowed); `#` starts a comment.
EnumerationOperator parse_operator(std::string_view text);
std::string serialize_operator(const EnumerationOperator& op);

}  // namespace autoredux

#endif
