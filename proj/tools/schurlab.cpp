#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "schurlab/catalog.hpp"
#include "schurlab/freenil.hpp"
#include "schurlab/identities.hpp"
#include "schurlab/multiplier.hpp"
#include "schurlab/verifier.hpp"

using namespace schurlab;

namespace {

constexpr int kExitUsage = 2;

std::vector<CatalogEntry> all_entries(const std::vector<std::string>& files) {
    std::vector<CatalogEntry> extra;
    for (const auto& f : files) {
        auto more = import_file(f);
        extra.insert(extra.end(), more.begin(), more.end());
    }
    return merge_catalogs(load_bundled(), extra);
}

const PcPresentation& lookup(const std::vector<CatalogEntry>& entries, const std::string& name) {
    const CatalogEntry* e = find_entry(entries, name);
    if (!e) throw std::invalid_argument("no group named '" + name + "' in the catalog");
    return e->presentation;
}

void warn_oracle_cap(std::uint64_t cap) {
    if (cap > kBarDefaultCap)
        std::cerr << "warning: bar oracle cap " << cap << " above " << kBarDefaultCap
                  << "; the degree-3 chain matrix grows with the cube of the order\n";
}

int cmd_verify(const std::vector<std::string>& catalogs, const std::string& rules, std::uint64_t max_order,
               std::uint64_t oracle_cap, bool strict, const std::string& format, unsigned jobs) {
    RunConfig cfg;
    cfg.catalogs = catalogs;
    std::stringstream rs(rules);
    for (std::string id; std::getline(rs, id, ',');)
        if (!id.empty()) cfg.rules.push_back(id);
    cfg.caps.max_order = max_order;
    cfg.caps.oracle_cap = oracle_cap;
    cfg.strict = strict;
    cfg.format = format == "json" ? OutputFormat::json : format == "csv" ? OutputFormat::csv : OutputFormat::text;
    cfg.jobs = jobs;
    warn_oracle_cap(oracle_cap);
    RunResult r = run(all_entries(catalogs), cfg);
    std::cout << format_run(r, cfg.format);
    return r.exit_code;
}

int cmd_multiplier(const std::vector<std::string>& catalogs, const std::string& group, const std::string& method,
                   std::uint64_t oracle_cap) {
    const auto entries = all_entries(catalogs);
    const PcPresentation& p = lookup(entries, group);
    MultiplierMethod m = method == "bar" ? MultiplierMethod::bar
                         : method == "both" ? MultiplierMethod::both
                                            : MultiplierMethod::tails;
    if (m != MultiplierMethod::tails) warn_oracle_cap(oracle_cap);
    AbelianInvariants inv = schur_multiplier(p, m, oracle_cap);
    std::cout << "M(" << group << ") = " << inv.to_string() << "  (" << method << ")\n";
    return 0;
}

int cmd_cover(const std::vector<std::string>& catalogs, const std::string& group, bool print, std::uint64_t cap) {
    const auto entries = all_entries(catalogs);
    const PcPresentation& p = lookup(entries, group);
    CoverResult c = schur_cover(p, cap);
    std::uint64_t order = 1;
    for (int o : c.cover.relative_orders) order *= static_cast<std::uint64_t>(o);
    std::cout << "group " << group << "\n";
    std::cout << "M(G) = " << c.multiplier.to_string() << "\n";
    std::cout << "|H| = " << order << "\n";
    std::cout << "kernel generators:";
    for (int z : c.kernel_generators) std::cout << " g" << z + 1;
    std::cout << (c.kernel_generators.empty() ? " none\n" : "\n");
    std::cout << "|gamma_2(H)| = " << c.gamma2_order << "\n";
    std::cout << "exterior exponent e(G^G) = e(gamma_2(H)) = " << c.exterior_exponent << "\n";
    ProbeResult probe = tail_permutation_probe(p, cap);
    std::cout << "tail-order probe: " << (probe.agree ? "agree" : "DISAGREE") << "\n";
    for (const auto& line : probe.runs) std::cout << "  " << line << "\n";
    if (print) std::cout << "\n" << format_presentation(c.cover);
    return probe.agree ? 0 : 1;
}

int cmd_identities(std::vector<std::string> checks, long long n_max, int prime) {
    if (checks.empty()) checks = lemma_ids();
    LemmaParams params;
    params.n_max = n_max;
    bool ok = true;
    for (const auto& id : checks) {
        LemmaReport r = verify_collection_lemma(id, params);
        ok = ok && r.passed;
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.id << "  " << r.parameters << "  cases " << r.cases << "\n";
        if (r.counterexample) std::cout << "  counterexample: " << *r.counterexample << "\n";
        for (const auto& n : r.notes) std::cout << "  note: " << n << "\n";
        for (const auto& c : r.controls)
            std::cout << "  control " << (c.failed_as_expected ? "failed as expected" : "DID NOT FAIL") << ": "
                      << c.description << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
    }
    if (prime) {
        auto chain = er_chain(prime);
        std::cout << "E_r chain for p = " << prime << ":\n";
        for (const auto& row : chain) {
            std::cout << " ";
            for (const auto& x : row) std::cout << " " << x.get_str();
            std::cout << "\n";
        }
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"schurlab: Schur multipliers and exterior-square exponents of small p-groups"};
    app.require_subcommand(1);

    std::vector<std::string> catalogs;
    std::string rules = "all", format = "text", group, method = "tails";
    std::uint64_t max_order = kDefaultEnumerationCap, oracle_cap = kBarDefaultCap;
    bool strict = false, print_presentation = false;
    unsigned jobs = 1;
    std::vector<std::string> checks;
    long long n_max = 0;
    int prime = 0, alpha_m = 0, alpha_n = 0;

    auto* verify = app.add_subcommand("verify", "profile every catalog group and evaluate the rules");
    verify->add_option("--catalog", catalogs, "extra catalog file (repeatable)");
    verify->add_option("--rules", rules, "all, or a comma list such as R1,R3");
    verify->add_option("--max-order", max_order, "skip groups above this order");
    verify->add_option("--oracle-cap", oracle_cap, "largest order for the bar cross-check (at most 81)");
    verify->add_flag("--strict", strict, "exit 3 when any result is skipped");
    verify->add_option("--format", format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
    verify->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

    auto* mult = app.add_subcommand("multiplier", "Schur multiplier of one group");
    mult->add_option("--group", group, "catalog name")->required();
    mult->add_option("--method", method, "tails, bar or both")->check(CLI::IsMember({"tails", "bar", "both"}));
    mult->add_option("--catalog", catalogs, "extra catalog file (repeatable)");
    mult->add_option("--oracle-cap", oracle_cap, "largest order for the bar method (at most 81)");

    auto* cover = app.add_subcommand("cover", "Schur cover and exterior-square exponent of one group");
    cover->add_option("--group", group, "catalog name")->required();
    cover->add_flag("--print-presentation", print_presentation, "print the cover presentation");
    cover->add_option("--catalog", catalogs, "extra catalog file (repeatable)");
    cover->add_option("--max-order", max_order, "largest cover order to build");

    auto* ident = app.add_subcommand("identities", "check the collection identities");
    ident->add_option("--check", checks, "identity id (repeatable); default all");
    ident->add_option("--n-max", n_max, "largest exponent n to test");
    ident->add_option("--prime", prime, "also print the E_r chain for this odd prime");

    app.add_subcommand("tables", "class and prime bound tables");

    auto* alpha_cmd = app.add_subcommand("alpha", "nested binomial sum alpha_m(n)");
    alpha_cmd->add_option("--m", alpha_m, "m >= 2")->required();
    alpha_cmd->add_option("--n", alpha_n, "n >= m")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*verify) return cmd_verify(catalogs, rules, max_order, oracle_cap, strict, format, jobs);
        if (*mult) return cmd_multiplier(catalogs, group, method, oracle_cap);
        if (*cover) return cmd_cover(catalogs, group, print_presentation, max_order);
        if (*ident) return cmd_identities(checks, n_max, prime);
        if (app.got_subcommand("tables")) {
            std::cout << format_tables();
            return 0;
        }
        if (*alpha_cmd) {
            std::cout << "alpha_" << alpha_m << "(" << alpha_n << ") = " << alpha(alpha_m, alpha_n).get_str() << "\n";
            return 0;
        }
    } catch (const InconsistentPresentation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CatalogError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const MultiplierError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
