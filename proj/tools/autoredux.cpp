// Batch experiment driver: binds the library modules to file inputs and
// seeded, reproducible runs. All randomness flows from --seed; worker count
// comes from AUTOREDUX_THREADS and never changes any output byte.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "autoredux/autoreduce.hpp"
#include "autoredux/cototal.hpp"
#include "autoredux/diagonal.hpp"
#include "autoredux/enumop.hpp"
#include "autoredux/error.hpp"
#include "autoredux/prefixmachine.hpp"
#include "autoredux/universe.hpp"
#include "autoredux/witness.hpp"

using namespace autoredux;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("io_error", "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("io_error", "cannot write " + path);
    out << content;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        write_file(out_path, content);
}

std::string strip(std::string line) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    const auto b = line.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = line.find_last_not_of(" \t\r\n");
    return line.substr(b, e - b + 1);
}

// First payload line of a set file, comments and blanks skipped.
std::string first_line(const std::string& text, const std::string& path) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = strip(line);
        if (!t.empty()) return t;
    }
    throw Error("parse_error", path + ": no content line");
}

BitVector load_set(const std::string& path, std::optional<std::size_t> universe) {
    const std::string line = first_line(read_file(path), path);
    if (universe) return parse_set(line, Universe{*universe});
    if (line.rfind("set:", 0) == 0)
        throw Error("parse_error", path + ": element-list form needs --universe");
    return BitVector::from_string(line);
}

EnumerationOperator load_op(const std::string& path) { return parse_operator(read_file(path)); }

unsigned worker_count() {
    const char* env = std::getenv("AUTOREDUX_THREADS");
    if (!env) return 1;
    const long v = std::strtol(env, nullptr, 10);
    if (v < 1) throw Error("precondition", "AUTOREDUX_THREADS must be >= 1");
    return (unsigned)v;
}

std::size_t default_tau(std::size_t n) { return (3 * n + 3) / 4; }

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

struct RunConfig {
    std::vector<std::size_t> universes;
    std::uint64_t seed = 0;
    std::optional<std::size_t> tau;
    std::uint64_t samples = 100000;
    std::vector<std::string> inputs;
    std::string out;
};

AutoreductionProcedure build_psi(const std::string& kind, std::size_t n,
                                 const std::vector<std::string>& inputs, std::size_t tau) {
    if (kind == "zero") return AutoreductionProcedure::zero();
    if (kind == "cototal") {
        if (!inputs.empty()) {
            EnumerationOperator delta = load_op(inputs[0]);
            if (delta.universe().n != n)
                throw Error("universe_mismatch", "operator universe differs from --universe");
            return AutoreductionProcedure::cototal(std::move(delta));
        }
        if (n % 2 != 0) throw Error("precondition", "generated cototal fixture needs even N");
        return AutoreductionProcedure::cototal(gen_cototal_example(n).second);
    }
    if (kind == "uie") {
        if (inputs.size() >= 3) {
            EnumerationOperator phi = load_op(inputs[0]);
            EnumerationOperator gamma = load_op(inputs[1]);
            EnumerationOperator delta = load_op(inputs[2]);
            if (phi.universe().n != n || gamma.universe().n != n || delta.universe().n != n)
                throw Error("universe_mismatch", "operator universe differs from --universe");
            return AutoreductionProcedure::uie(std::move(phi), std::move(gamma), std::move(delta),
                                              tau);
        }
        // default family: identity transport around the trivial introenumerator
        EnumerationOperator id(Universe{n}, "id");
        for (std::size_t x = 0; x < n; ++x) {
            BitVector body(n);
            body.set(x);
            id.add_axiom(x, body);
        }
        BitVector evens(n);
        for (std::size_t i = 0; i < n; i += 2) evens.set(i);
        return AutoreductionProcedure::uie(id, gen_trivial_uie(evens), id, tau);
    }
    throw Error("precondition", "unknown psi kind '" + kind + "'");
}

int cmd_measure(const RunConfig& cfg, const std::string& kind) {
    std::ostringstream out;
    out << "psi_kind,N,samples,seed,fraction,ci_low,ci_high,exact_count\n";
    const unsigned threads = worker_count();
    for (std::size_t n : cfg.universes) {
        const std::size_t tau = cfg.tau.value_or(default_tau(n));
        const auto psi = build_psi(kind, n, cfg.inputs, tau);
        const auto r = sample_fraction(psi, n, cfg.samples, cfg.seed, threads);
        out << kind << ',' << n << ',' << cfg.samples << ',' << cfg.seed << ',' << fmt(r.fraction)
            << ',' << fmt(r.ci.low) << ',' << fmt(r.ci.high) << ',';
        if (n <= 16) out << count_autoreducible(psi, n);
        out << "\n";
    }
    emit(cfg.out, out.str());
    return 0;
}

int cmd_diag(const RunConfig& cfg) {
    if (cfg.inputs.size() < 2)
        throw Error("precondition", "diag needs --in SET OP [OP...]");
    std::vector<EnumerationOperator> ops;
    for (std::size_t i = 1; i < cfg.inputs.size(); ++i) ops.push_back(load_op(cfg.inputs[i]));
    const std::size_t n = ops.front().universe().n;
    for (const auto& op : ops)
        if (op.universe().n != n) throw Error("universe_mismatch", "operator universes differ");
    std::optional<std::size_t> u = cfg.universes.empty()
                                       ? std::optional<std::size_t>(n)
                                       : std::optional<std::size_t>(cfg.universes.front());
    const BitVector a = load_set(cfg.inputs[0], u);
    if (a.size() != n) throw Error("universe_mismatch", "set universe differs from operators'");
    const std::size_t tau = cfg.tau.value_or(default_tau(n));

    const auto res = diag_run(a, ops, tau);
    std::ostringstream out;
    out << format_stage_log(res.state);
    if (res.success) {
        out << "verdict success\n";
        out << "subset " << format_set(res.subset) << "\n";
    } else {
        out << "verdict compressible " << *res.compress_index << "\n";
        const auto& pre = res.state.prefix;
        const auto in = machine_encode_rel(a, ops[*res.compress_index], pre.bits, pre.len, 1);
        out << "rel_m 1\n";
        out << "rel_gamma " << in.gamma << "\n";
        out << "rel_row " << in.m << ',' << in.c_m << ',' << in.n_m << ',' << in.gamma.size()
            << "\n";
    }
    emit(cfg.out, out.str());
    return 0;
}

int cmd_compress(const RunConfig& cfg, std::vector<std::size_t> ms) {
    if (cfg.inputs.size() != 2) throw Error("precondition", "compress needs --in SET OP");
    const EnumerationOperator op = load_op(cfg.inputs[1]);
    const std::size_t n = op.universe().n;
    std::optional<std::size_t> u = cfg.universes.empty()
                                       ? std::optional<std::size_t>(n)
                                       : std::optional<std::size_t>(cfg.universes.front());
    const BitVector a = load_set(cfg.inputs[0], u);
    if (a.size() != n) throw Error("universe_mismatch", "set universe differs from operator's");

    const bool sweeping = ms.empty();
    if (sweeping)
        for (std::size_t m = 1; m < n && m <= 64; ++m) ms.push_back(m);

    std::ostringstream out;
    out << "m,c_m,n_m,input_len,bound,slack\n";
    for (std::size_t m : ms) {
        try {
            out << format_report_csv_row(compression_report(a, op, m)) << "\n";
        } catch (const Error& e) {
            if (!sweeping) throw;
            if (e.code() != "universe_too_small") throw;  // sweep past unreachable m only
        }
    }
    emit(cfg.out, out.str());
    return 0;
}

int cmd_cototal(const RunConfig& cfg) {
    if (cfg.inputs.empty()) throw Error("precondition", "cototal needs --in LCEREAL [ORDER]");
    const LeftCEReal q = parse_lcereal(read_file(cfg.inputs[0]));

    std::vector<std::size_t> order;
    if (cfg.inputs.size() >= 2) {
        // explicit complement order: whitespace-separated positions
        std::istringstream in(first_line(read_file(cfg.inputs[1]), cfg.inputs[1]));
        std::size_t v;
        while (in >> v) order.push_back(v);
    } else {
        const BitVector ones = true_bits(q);
        for (std::size_t k = 0; k < q.width(); ++k)
            if (!ones.test(k)) order.push_back(k);
    }

    const auto trace = enumerate_from_complement(q, SetEnumeration(order));
    std::ostringstream out;
    for (const auto& s : trace.steps) {
        out << "resolved " << s.position << ' ' << (s.bit ? 1 : 0);
        if (s.via_comp)
            out << " via comp\n";
        else
            out << " via q " << s.q_stage << "\n";
    }
    out << "emitted";
    for (auto k : trace.emitted) out << ' ' << k;
    out << "\n";
    emit(cfg.out, out.str());
    return 0;
}

int cmd_check(const RunConfig& cfg, const std::string& witness) {
    if (cfg.inputs.size() != 2) throw Error("precondition", "check needs --in SET OP");
    const EnumerationOperator op = load_op(cfg.inputs[1]);
    const std::size_t n = op.universe().n;
    std::optional<std::size_t> u = cfg.universes.empty()
                                       ? std::optional<std::size_t>(n)
                                       : std::optional<std::size_t>(cfg.universes.front());
    const BitVector a = load_set(cfg.inputs[0], u);
    if (a.size() != n) throw Error("universe_mismatch", "set universe differs from operator's");

    WitnessReport r;
    if (witness == "cototal")
        r = is_cototal_witness(a, op);
    else if (witness == "uie")
        r = is_uie_witness(a, op, cfg.tau.value_or(default_tau(n)), cfg.samples, cfg.seed);
    else
        throw Error("precondition", "unknown witness kind '" + witness + "'");
    emit(cfg.out, format_report(r));
    return 0;
}

int cmd_gen(const RunConfig& cfg, const std::string& fixture) {
    if (cfg.universes.empty()) throw Error("precondition", "gen needs --universe");
    const std::size_t n = cfg.universes.front();

    BitVector a;
    EnumerationOperator op(Universe{n});
    if (fixture == "cototal") {
        auto [ga, gop] = gen_cototal_example(n);
        a = std::move(ga);
        op = std::move(gop);
    } else if (fixture == "uie") {
        BitVector evens(n);
        for (std::size_t i = 0; i < n; i += 2) evens.set(i);
        a = evens;
        op = gen_trivial_uie(evens);
    } else {
        throw Error("precondition", "unknown fixture kind '" + fixture + "'");
    }

    const std::string set_text = format_set(a) + "\n";
    const std::string op_text = serialize_operator(op);
    if (cfg.out.empty()) {
        std::cout << "# set\n" << set_text << "# operator\n" << op_text;
    } else {
        write_file(cfg.out + ".set", set_text);
        write_file(cfg.out + ".op", op_text);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"enumeration-reducibility laboratory"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string psi_kind = "cototal";
    std::string witness_kind = "cototal";
    std::string fixture_kind = "cototal";
    std::vector<std::size_t> ms;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--universe", cfg.universes, "universe size N (repeatable for sweeps)");
        sub->add_option("--seed", cfg.seed, "run seed");
        sub->add_option("--tau", cfg.tau, "infinite-likeness threshold (default ceil(3N/4))");
        sub->add_option("--samples", cfg.samples, "Monte Carlo sample count");
        sub->add_option("--in", cfg.inputs, "input paths");
        sub->add_option("--out", cfg.out, "output path (default stdout)");
        return sub;
    };

    auto* measure = add_common(app.add_subcommand("measure", "autoreducible-fraction sweep"));
    measure->add_option("--psi", psi_kind, "psi kind: cototal | uie | zero");
    auto* diag = add_common(app.add_subcommand("diag", "subset diagonalization run"));
    auto* compress = add_common(app.add_subcommand("compress", "prefix-machine report"));
    compress->add_option("--m", ms, "window size m (repeatable; default sweep)");
    auto* cototal = add_common(app.add_subcommand("cototal", "complement-driven enumeration"));
    auto* check = add_common(app.add_subcommand("check", "witness check"));
    check->add_option("--witness", witness_kind, "witness kind: cototal | uie");
    auto* gen = add_common(app.add_subcommand("gen", "write fixture files"));
    gen->add_option("--fixture", fixture_kind, "fixture kind: cototal | uie");

    CLI11_PARSE(app, argc, argv);

    try {
        if (measure->parsed()) {
            if (cfg.universes.empty())
                throw Error("precondition", "measure needs at least one --universe");
            return cmd_measure(cfg, psi_kind);
        }
        if (diag->parsed()) return cmd_diag(cfg);
        if (compress->parsed()) return cmd_compress(cfg, ms);
        if (cototal->parsed()) return cmd_cototal(cfg);
        if (check->parsed()) return cmd_check(cfg, witness_kind);
        if (gen->parsed()) return cmd_gen(cfg, fixture_kind);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal_error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
