// flagmot: command-line front end for the upper-motive engine.
//
// Exit codes: 0 success, 2 input or domain error, 3 internal invariant
// violation (including criterion/oracle disagreement and sweep failures).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flagmot/brauer.hpp"
#include "flagmot/io.hpp"
#include "flagmot/motives.hpp"
#include "flagmot/oracles.hpp"
#include "flagmot/varieties.hpp"

namespace {

using namespace flagmot;
using io::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct Options {
    std::string model_path;
    std::optional<Nat> p;
};

io::Document load_document(const std::string& path) {
    if (path.empty() || path == "-") return io::parse_document(std::cin);
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open model document '" + path + "'");
    return io::parse_document(in);
}

Nat resolve_prime(const Options& opt, const io::Document& doc) {
    if (opt.p) {
        require_prime(*opt.p);
        return *opt.p;
    }
    if (doc.p) return *doc.p;
    throw DomainError("no prime given (use --p or set \"p\" in the document)");
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_index(const Options& opt, const std::string& name) {
    const auto doc = load_document(opt.model_path);
    const auto& a = doc.algebra(name);
    const auto& c = a.cls();
    json primary = json::object();
    for (Nat q : io::prime_factors(exponent(c))) {
        const auto cq = p_primary(c, q);
        primary[std::to_string(q)] = {{"class", io::to_json(cq)}, {"index", index(cq)}, {"exponent", exponent(cq)}};
    }
    emit({{"algebra", name},
          {"class", io::to_json(c)},
          {"degree", a.degree()},
          {"exponent", exponent(c)},
          {"index", index(c)},
          {"primary", primary}});
    return kExitOk;
}

int cmd_reduce(const Options& opt, const std::string& d_name, Nat k, const std::string& dp_name) {
    const auto doc = load_document(opt.model_path);
    const Nat p = resolve_prime(opt, doc);
    const auto& d = doc.algebra(d_name).cls();
    const auto& dp = doc.algebra(dp_name).cls();
    const auto red = index_reduction_detail(d, k, dp, p);
    emit({{"D", d_name},
          {"D_prime", dp_name},
          {"k", k},
          {"p", p},
          {"mu_profile", red.profile.values},
          {"reduced_index", red.reduced},
          {"index_D", index(d)}});
    return kExitOk;
}

int cmd_iso(const Options& opt, const std::string& xs, const std::string& ys) {
    const auto doc = load_document(opt.model_path);
    const Nat p = resolve_prime(opt, doc);
    const auto x = io::make_flag(doc, xs);
    const auto y = io::make_flag(doc, ys);
    const bool iso = compare_flag_upper_motives(x, y, p);
    const auto mx = upper_motive_of(x, p);
    const auto my = upper_motive_of(y, p);
    const bool oracle = oracle_isomorphic(mx, my);
    emit({{"X", xs},
          {"Y", ys},
          {"p", p},
          {"upper_X", io::to_json(mx)},
          {"upper_Y", io::to_json(my)},
          {"isomorphic", iso},
          {"oracle_agrees", iso == oracle}});
    if (iso != oracle) {
        std::cerr << "flagmot: criterion and mutual-isotropy oracle disagree\n";
        return kExitInternal;
    }
    return kExitOk;
}

int cmd_enumerate(const Options& opt, const std::string& name) {
    const auto doc = load_document(opt.model_path);
    const Nat p = resolve_prime(opt, doc);
    json motives = json::array();
    for (const auto& m : enumerate_upper_motives(doc.algebra(name), p)) motives.push_back(io::to_json(m));
    emit({{"algebra", name}, {"p", p}, {"count", motives.size()}, {"motives", motives}});
    return kExitOk;
}

int cmd_dichotomy(const Options& opt, const std::string& a, const std::string& b) {
    const auto doc = load_document(opt.model_path);
    const Nat p = resolve_prime(opt, doc);
    const auto r = dichotomy_check(doc.algebra(a), doc.algebra(b), p);
    emit({{"A", a}, {"A_prime", b}, {"p", p}, {"result", to_string(r)}});
    return kExitOk;
}

struct CheckOptions {
    SweepConfig cfg;
    std::string primes = "2,3";
};

std::vector<Nat> parse_primes(const std::string& s) {
    std::vector<Nat> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t pos = 0;
            Nat p = std::stoll(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
            require_prime(p);
            out.push_back(p);
        } catch (const std::logic_error&) {
            throw DomainError("malformed prime list '" + s + "'");
        }
    }
    if (out.empty()) throw DomainError("empty prime list");
    return out;
}

int cmd_check(const Options& opt, CheckOptions copt, bool have_model) {
    copt.cfg.primes = parse_primes(copt.primes);
    std::optional<io::Document> loaded;
    if (have_model) loaded = load_document(opt.model_path);
    SweepStats stats = run_sweep(copt.cfg);
    if (loaded) {
        const auto& doc = *loaded;
        std::vector<Nat> primes = copt.cfg.primes;
        if (opt.p) primes = {*opt.p};
        for (Nat p : primes) {
            ClassPool pool{doc.model, p, {}};
            std::set<BrauerClass> seen;
            for (const auto& [name, a] : doc.algebras) {
                auto c = p_primary(a.cls(), p);
                if (!c.is_zero() && seen.insert(c).second) pool.classes.push_back(c);
            }
            sweep_pool(pool, "document", stats);
            for (const auto& [na, a] : doc.algebras) {
                for (const auto& [nb, b] : doc.algebras) {
                    stats.guarded("dichotomy/document", na + " vs " + nb, [&] {
                        const bool eq = dichotomy_check(a, b, p) == Dichotomy::Equal;
                        return eq == subgroup_bruteforce(p_primary(a.cls(), p), p_primary(b.cls(), p));
                    });
                }
            }
        }
    }
    emit(io::to_json(stats));
    return stats.total_failures() == 0 ? kExitOk : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"flagmot: upper motives of varieties of flags of ideals in central simple algebras"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    Nat p_flag = 0;
    app.add_option("--model", opt.model_path, "Input document (JSON); '-' or absent reads stdin");
    app.add_option("--p", p_flag, "Prime p (overrides the document's \"p\")");

    std::string a1, a2;
    Nat k = 0;

    auto* index_cmd = app.add_subcommand("index", "Index, exponent and primary decomposition of an algebra");
    index_cmd->add_option("algebra", a1)->required();

    auto* reduce_cmd = app.add_subcommand("reduce", "mu profile and index of D over F(X(p^k; D'))");
    reduce_cmd->add_option("D", a1)->required();
    reduce_cmd->add_option("k", k)->required();
    reduce_cmd->add_option("D_prime", a2)->required();

    auto* iso_cmd = app.add_subcommand("iso", "Compare upper motives of two flag varieties d1,d2,...@Algebra");
    iso_cmd->add_option("X", a1)->required();
    iso_cmd->add_option("Y", a2)->required();

    auto* enum_cmd = app.add_subcommand("enumerate", "Upper p-motives of PGL_1(A)");
    enum_cmd->add_option("algebra", a1)->required();

    auto* dich_cmd = app.add_subcommand("dichotomy", "Equal or disjoint upper p-motive sets");
    dich_cmd->add_option("A", a1)->required();
    dich_cmd->add_option("A_prime", a2)->required();

    CheckOptions copt;
    auto* check_cmd = app.add_subcommand("check", "Run the oracle sweeps");
    check_cmd->add_option("--max-n", copt.cfg.max_n, "Bound on v_p of indices (1..4)");
    check_cmd->add_option("--primes", copt.primes, "Comma-separated primes");
    check_cmd->add_option("--seed", copt.cfg.seed, "Seed for random models");
    check_cmd->add_option("--globals", copt.cfg.global_models, "Number of random global models");
    check_cmd->add_option("--abstracts", copt.cfg.abstract_models, "Number of random abstract models");
    check_cmd->add_option("--pairs", copt.cfg.dichotomy_pairs, "Random dichotomy pairs");
    check_cmd->add_option("--flags", copt.cfg.flags, "Random flags for normalization checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInput;
    }
    if (app.count("--p") > 0) opt.p = p_flag;

    try {
        if (*index_cmd) return cmd_index(opt, a1);
        if (*reduce_cmd) return cmd_reduce(opt, a1, k, a2);
        if (*iso_cmd) return cmd_iso(opt, a1, a2);
        if (*enum_cmd) return cmd_enumerate(opt, a1);
        if (*dich_cmd) return cmd_dichotomy(opt, a1, a2);
        if (*check_cmd) return cmd_check(opt, copt, app.count("--model") > 0);
    } catch (const IndexTableError& e) {
        std::cerr << "flagmot: " << e.what() << "\n";
        for (const auto& v : e.violations) {
            std::cerr << "  " << v.axiom << ": " << v.detail << " (witness";
            for (const auto& w : v.witness) std::cerr << " " << element_string(w);
            std::cerr << ")\n";
        }
        return kExitInput;
    } catch (const InternalInvariantError& e) {
        std::cerr << "flagmot: internal invariant violated: " << e.what() << "\n";
        return kExitInternal;
    } catch (const Error& e) {
        std::cerr << "flagmot: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
