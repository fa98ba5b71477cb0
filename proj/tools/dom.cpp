#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "domkit/constructions.hpp"
#include "domkit/error.hpp"
#include "domkit/expr.hpp"
#include "domkit/finite.hpp"
#include "domkit/valuation.hpp"

using namespace domkit;

namespace {

enum Exit { Ok = 0, Negative = 1, Syntax = 2, Type = 3, Precondition = 4, Other = 5 };

struct Globals {
    std::uint64_t seed = 0;
    std::size_t samples = 1000;

    CheckOptions check() const {
        CheckOptions o;
        o.seed = seed;
        o.samples = samples;
        return o;
    }
};

void print_report(const Dom& d, const Globals& g, bool& ok) {
    auto rep = check_axioms(d, all_axioms(), g.check());
    std::cout << "check: " << (rep.exhaustive ? "exhaustive" : "sampled") << "\n" << rep.to_text();
    ok = ok && rep.ok();
}

int run_eval(const std::string& carrier, const std::string& text) {
    auto d = parse_carrier(carrier);
    std::cout << format_value(*d, evaluate(*d, text)) << "\n";
    return Ok;
}

int run_check_table(const std::string& path, const std::string& axioms) {
    auto rep = validate(load_table(path), parse_axioms(axioms));
    std::cout << rep.to_text();
    return rep.ok() ? Ok : Negative;
}

int run_enumerate(std::size_t n, const std::string& axioms, unsigned threads) {
    EnumerateOptions opt;
    opt.threads = threads;
    opt.bound = std::max<std::size_t>(opt.bound, n);
    auto tables = enumerate(n, parse_axioms(axioms), opt);
    std::cout << "tables: " << tables.size() << "\n";
    for (std::size_t i = 0; i < tables.size(); ++i) {
        std::cout << "\n# table " << i + 1;
        if (tables[i] == trivial_dom(n)) std::cout << " (trivial)";
        std::cout << "\n" << serialize_table(tables[i]);
    }
    return Ok;
}

std::size_t parse_count_arg(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) throw ParseError("expected a size, got '" + s + "'");
    return std::stoul(s);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

int run_classify(const std::string& carrier) {
    auto d = parse_carrier(carrier);
    std::cout << "carrier: " << d->name() << "\n";
    std::cout << "type: " << to_string(classify_type(*d)) << "\n";
    std::cout << "finite: " << yes_no(d->is_finite()) << "\n";
    auto tri = [&](auto f) {
        try {
            return yes_no(f(*d));
        } catch (const PreconditionError&) {
            return std::string("unknown");
        }
    };
    std::cout << "proper: " << tri([](const Dom& x) { return is_proper(x); }) << "\n";
    std::cout << "strongly proper: " << tri([](const Dom& x) { return is_strongly_proper(x); }) << "\n";
    std::cout << "associated group: " << associated_group(d).description << "\n";
    return Ok;
}

int run_construct(const std::string& op, const std::string& carrier, const std::string& with, const std::string& at,
                  const Globals& g) {
    bool ok = true;
    if (op == "embed") {
        auto h = embed_finite(parse_count_arg(carrier));
        auto rep = verify_hom(h, g.check());
        std::cout << "source: " << h.source->name() << "\ntarget: " << h.target->name() << "\n";
        auto xs = h.source->elements().value();
        for (const auto& x : xs)
            std::cout << h.source->format(x) << " -> " << h.target->format(h.map(x)) << "\n";
        std::cout << rep.to_text(*h.source);
        return rep.ok && rep.injective ? Ok : Negative;
    }
    auto m = parse_carrier(carrier);
    DomPtr out;
    std::optional<HomCandidate> hom;
    if (op == "dual") {
        out = dual(m);
    } else if (op == "infinity") {
        out = infinity_extension(m);
    } else if (op == "shift") {
        out = shift(m);
    } else if (op == "quotient") {
        auto q = quotient_equiv(m);
        out = q.dom;
        hom = q.map;
    } else if (op == "cutsof") {
        out = cuts_of_dom(m);
    } else if (op == "cutsof-alt") {
        out = cuts_of_dom_alternative(m);
    } else if (op == "mu-product") {
        if (with.empty()) throw PreconditionError("mu-product needs --with");
        out = mu_product(m, parse_carrier(with));
    } else if (op == "collapse") {
        auto c = collapse(m, h_membership(m));
        out = c.dom;
        hom = c.eta;
    } else if (op == "split") {
        if (at.empty()) throw PreconditionError("split needs --at");
        out = split_at_width(m, m->parse(at));
    } else {
        throw ParseError("unknown construction '" + op + "'");
    }
    std::cout << "result: " << out->name() << "\n";
    if (out->is_finite()) {
        try {
            std::cout << serialize_table(tabulate(*out));
        } catch (const PreconditionError&) {
            auto xs = out->elements().value();
            for (const auto& x : xs) std::cout << out->format(x) << "\n";
        }
    }
    print_report(*out, g, ok);
    if (hom) {
        if (!m->is_finite()) hom->universe = test_universe(*m, g.samples, g.seed);
        auto rep = verify_hom(*hom, g.check());
        std::cout << "map:\n" << rep.to_text(*m);
        ok = ok && rep.ok;
    }
    return ok ? Ok : Negative;
}

int run_valuation(const std::string& which, const std::string& carrier, const Globals& g) {
    auto d = parse_carrier(carrier);
    Valuation v = which == "width"       ? width_valuation(d)
                  : which == "natural"   ? natural_valuation(d)
                  : which == "w"         ? w_valuation(d)
                  : which == "trivial"   ? trivial_valuation(d)
                  : which == "two-valued" ? two_valued_valuation(d)
                                          : throw ParseError("unknown valuation '" + which + "'");
    auto u = d->is_finite() ? *d->elements() : sort_unique(*d, d->landmarks());
    std::cout << "valuation: " << v.name << "\n" << partition_text(v, u);
    auto rep = check_valuation(v, all_valuation_axioms(), g.check());
    std::cout << rep.to_text();
    std::cout << "convex: " << yes_no(coarsening_of(natural_valuation(d), v, g.check())) << "\n";
    std::cout << "strong: " << yes_no(coarsening_of(width_valuation(d), v, g.check())) << "\n";
    return Ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Doms, cuts of ordered groups and their constructions"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "Seed for sampled checks")->default_val(0);
    app.add_option("--samples", g.samples, "Samples for checks on infinite carriers")->default_val(1000);

    std::string carrier, text, path, check_axioms_list, enum_axioms_list, op, with, at, which;
    std::size_t n = 0;
    unsigned threads = 0;

    auto* eval = app.add_subcommand("eval", "Evaluate an expression over a carrier");
    eval->add_option("--carrier", carrier, "Carrier, e.g. cuts(Q)")->required();
    eval->add_option("expr", text, "Expression")->required();

    auto* check = app.add_subcommand("check-table", "Check a finite addition table against the axioms");
    check->add_option("file", path, "Table file")->required();
    check->add_option("--axioms", check_axioms_list, "Axiom list")->default_val("all");

    auto* en = app.add_subcommand("enumerate", "Enumerate finite tables satisfying axioms");
    en->add_option("n", n, "Number of elements")->required()->check(CLI::Range(1, 12));
    en->add_option("--axioms", enum_axioms_list, "Axiom list")->default_val("dom");
    en->add_option("--threads", threads, "Worker threads (0: all cores)");

    auto* cl = app.add_subcommand("classify", "Print the type and structure of a carrier");
    cl->add_option("--carrier", carrier, "Carrier")->required();

    auto* co = app.add_subcommand("construct", "Build a construction and check it");
    co->add_option("op", op,
                   "dual | infinity | shift | quotient | cutsof | cutsof-alt | mu-product | collapse | split | embed")
        ->required();
    co->add_option("--carrier", carrier, "Input carrier (for embed: the size n)")->required();
    co->add_option("--with", with, "Second carrier for mu-product");
    co->add_option("--at", at, "Width to split at");

    auto* va = app.add_subcommand("valuation", "Print the value classes of a valuation");
    va->add_option("which", which, "width | natural | w | trivial | two-valued")->required();
    va->add_option("carrier", carrier, "Carrier")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? Ok : Syntax;
    }
    if (const char* env = std::getenv("DOMKIT_SEED")) {
        try {
            g.seed = std::stoull(env);
        } catch (const std::logic_error&) {
            std::cerr << "error: DOMKIT_SEED must be an unsigned integer\n";
            return Syntax;
        }
    }

    try {
        if (*eval) return run_eval(carrier, text);
        if (*check) return run_check_table(path, check_axioms_list);
        if (*en) return run_enumerate(n, enum_axioms_list, threads);
        if (*cl) return run_classify(carrier);
        if (*co) return run_construct(op, carrier, with, at, g);
        if (*va) return run_valuation(which, carrier, g);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return Syntax;
    } catch (const TypeError& e) {
        std::cerr << "type error: " << e.what() << "\n";
        return Type;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return Precondition;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Other;
    }
    return Other;
}
