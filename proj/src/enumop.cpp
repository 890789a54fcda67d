#include "autoredux/enumop.hpp"

#include <sstream>

namespace autoredux {

void EnumerationOperator::add_axiom(std::size_t head, const BitVector& body) {
    if (head >= u_.n)
        throw Error("out_of_universe", "axiom head " + std::to_string(head) + " >= " + std::to_string(u_.n));
    if (body.size() != u_.n)
        throw Error("universe_mismatch", "axiom body universe does not match operator universe");
    axioms_.push_back({head, body});
}

BitVector apply(const EnumerationOperator& op, const BitVector& b) {
    return stage_apply(op, b, op.axiom_count());
}

BitVector stage_apply(const EnumerationOperator& op, const BitVector& b, std::size_t stage) {
    if (b.size() != op.universe().n)
        throw Error("universe_mismatch", "operator applied outside its universe");
    BitVector out(op.universe().n);
    const auto& axioms = op.axioms();
    const std::size_t visible = std::min(stage, axioms.size());
    for (std::size_t k = 0; k < visible; ++k)
        if (axioms[k].body.subset_of(b)) out.set(axioms[k].head);
    return out;
}

std::vector<std::size_t> apply_stream(const EnumerationOperator& op, SetEnumeration e) {
    const std::size_t n = op.universe().n;
    BitVector seen(n);
    BitVector emitted(n);
    std::vector<std::size_t> order;

    auto sweep = [&] {
        for (const auto& ax : op.axioms()) {
            if (!emitted.test(ax.head) && ax.body.subset_of(seen)) {
                emitted.set(ax.head);
                order.push_back(ax.head);
            }
        }
    };

    sweep();  // empty-body axioms fire before anything is read
    while (!e.exhausted()) {
        const std::size_t x = e.next();
        if (x >= n) throw Error("out_of_universe", "stream element " + std::to_string(x));
        seen.set(x);
        sweep();
    }
    return order;
}

BitVector apply_composed(std::span<const EnumerationOperator> ops, const BitVector& b) {
    if (ops.empty()) throw Error("empty_composition", "apply_composed needs at least one operator");
    BitVector cur = b;
    for (std::size_t i = ops.size(); i-- > 0;) cur = apply(ops[i], cur);
    return cur;
}

EnumerationOperator reify_composition(const EnumerationOperator& op2,
                                      const EnumerationOperator& op1) {
    if (op2.universe() != op1.universe())
        throw Error("universe_mismatch", "composition across universes");
    const std::size_t n = op2.universe().n;

    // Group op1 axioms by head once.
    std::vector<std::vector<const Axiom*>> by_head(n);
    for (const auto& ax : op1.axioms()) by_head[ax.head].push_back(&ax);

    // Guard the total cover search space.
    unsigned __int128 total = 0;
    for (const auto& ax2 : op2.axioms()) {
        unsigned __int128 covers = 1;
        for (auto e : ax2.body.elements()) {
            covers *= by_head[e].size();
            if (covers > (1u << 20)) break;
        }
        total += covers;
        if (total > (1u << 20))
            throw Error("guard_exceeded", "too large, use apply_composed");
    }

    EnumerationOperator out(op2.universe(),
                            op2.name().empty() || op1.name().empty()
                                ? std::string{}
                                : op2.name() + "∘" + op1.name());
    for (const auto& ax2 : op2.axioms()) {
        const auto needed = ax2.body.elements();
        // Enumerate one op1-axiom choice per needed head; emit the body union.
        std::vector<std::size_t> choice(needed.size(), 0);
        bool feasible = true;
        for (auto e : needed)
            if (by_head[e].empty()) feasible = false;
        if (!feasible) continue;
        while (true) {
            BitVector body(n);
            for (std::size_t j = 0; j < needed.size(); ++j)
                body |= by_head[needed[j]][choice[j]]->body;
            out.add_axiom(ax2.head, body);
            std::size_t j = 0;
            for (; j < needed.size(); ++j) {
                if (++choice[j] < by_head[needed[j]].size()) break;
                choice[j] = 0;
            }
            if (j == needed.size()) break;
            if (needed.empty()) break;
        }
    }
    return out;
}

EnumerationOperator parse_operator(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    bool have_universe = false;
    Universe u{};
    std::string name;
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> pending;

    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "universe") {
            long long n;
            if (!(ls >> n) || n < 1)
                throw Error("parse_error", "line " + std::to_string(lineno) + ": bad universe header");
            u.n = (std::size_t)n;
            have_universe = true;
        } else if (tok == "name") {
            ls >> name;
        } else if (tok == "axiom") {
            long long head;
            if (!(ls >> head) || head < 0)
                throw Error("parse_error", "line " + std::to_string(lineno) + ": bad axiom head");
            std::vector<std::size_t> body;
            long long b;
            while (ls >> b) {
                if (b < 0) throw Error("parse_error", "line " + std::to_string(lineno) + ": negative body element");
                body.push_back((std::size_t)b);
            }
            if (!ls.eof())
                throw Error("parse_error", "line " + std::to_string(lineno) + ": malformed axiom line");
            pending.emplace_back((std::size_t)head, std::move(body));
        } else {
            throw Error("parse_error", "line " + std::to_string(lineno) + ": unknown directive '" + tok + "'");
        }
        if (!have_universe)
            throw Error("parse_error", "line " + std::to_string(lineno) + ": universe header must come first");
    }
    if (!have_universe) throw Error("parse_error", "missing universe header");

    EnumerationOperator op(u, name);
    std::size_t k = 0;
    for (auto& [head, body] : pending) {
        ++k;
        if (head >= u.n)
            throw Error("out_of_universe", "axiom " + std::to_string(k) + ": head " + std::to_string(head) + " >= " + std::to_string(u.n));
        BitVector bv(u.n);
        for (auto e : body) {
            if (e >= u.n)
                throw Error("out_of_universe", "axiom " + std::to_string(k) + ": body element " + std::to_string(e) + " >= " + std::to_string(u.n));
            bv.set(e);
        }
        op.add_axiom(head, bv);
    }
    return op;
}

std::string serialize_operator(const EnumerationOperator& op) {
    std::ostringstream out;
    out << "universe " << op.universe().n << "\n";
    if (!op.name().empty()) out << "name " << op.name() << "\n";
    for (const auto& ax : op.axioms()) {
        out << "axiom " << ax.head;
        for (auto e : ax.body.elements()) out << ' ' << e;
        out << "\n";
    }
    return out.str();
}

}  // namespace autoredux
