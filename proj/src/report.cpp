#include <algorithm>
#include <atomic>
#include <exception>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "schurlab/verifier.hpp"

namespace schurlab {

namespace {

std::vector<std::string> selected_rules(const RunConfig& config) {
    if (config.rules.empty() || (config.rules.size() == 1 && config.rules[0] == "all")) return rule_ids();
    std::set<std::string> want(config.rules.begin(), config.rules.end());
    std::vector<std::string> out;
    for (const auto& id : want) rule_title(id);  // throws on an unknown id
    for (const auto& id : rule_ids())
        if (want.count(id)) out.push_back(id);
    return out;
}

void keep_rules(TheoremReport& rep, const std::vector<std::string>& ids) {
    std::set<std::string> keep(ids.begin(), ids.end());
    std::erase_if(rep.rules, [&](const RuleResult& r) { return !keep.count(r.id); });
}

nlohmann::json number_or_string(const mpz_class& x) {
    if (x.fits_slong_p()) return x.get_si();
    return x.get_str();
}

nlohmann::json group_json(const GroupResult& gr) {
    const GroupProfile& p = gr.profile;
    nlohmann::json j;
    j["name"] = p.name;
    j["order"] = p.order;
    j["prime"] = p.prime;
    if (p.skipped) {
        j["skipped"] = *p.skipped;
    } else {
        const GroupFlags& f = p.flags;
        j["class"] = f.nilpotency_class;
        j["derived_length"] = f.derived_length;
        j["exponent"] = p.exponent;
        j["gamma2_exponent"] = p.gamma2_exponent;
        j["flags"] = {{"regular", to_string(f.is_regular)},
                      {"powerful", f.is_powerful},
                      {"condition1_m", f.condition1_m ? nlohmann::json(*f.condition1_m) : nlohmann::json(nullptr)},
                      {"condition2", f.condition2},
                      {"central_pn", f.central_pn},
                      {"metabelian", f.is_metabelian}};
    }
    if (p.multiplier) {
        nlohmann::json m = nlohmann::json::array();
        for (const auto& t : p.multiplier->torsion) m.push_back(number_or_string(t));
        j["multiplier"] = m;
    } else {
        j["multiplier"] = "error: " + p.multiplier_error;
    }
    if (p.exterior_exponent) j["exterior_exponent"] = *p.exterior_exponent;
    else j["exterior_exponent"] = p.exterior_note;
    j["bar_check"] = {{"status", to_string(p.bar_check)}, {"detail", p.bar_note}};
    nlohmann::json rules = nlohmann::json::object();
    for (const auto& r : gr.report.rules) rules[r.id] = {{"status", to_string(r.status)}, {"witness", r.witness}};
    j["rules"] = rules;
    if (gr.report.observation) j["observation"] = *gr.report.observation;
    return j;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

}  // namespace

RunResult run(const std::vector<CatalogEntry>& entries, const RunConfig& config) {
    const std::vector<std::string> ids = selected_rules(config);
    if (config.caps.oracle_cap > kBarMaxCap)
        throw std::invalid_argument("oracle cap above " + std::to_string(kBarMaxCap));
    RunResult res;
    res.groups.resize(entries.size());
    std::vector<std::exception_ptr> errors(entries.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t k; (k = next.fetch_add(1)) < entries.size();) {
            try {
                GroupResult& gr = res.groups[k];
                gr.profile = profile(entries[k].presentation, config.caps);
                gr.report = evaluate_rules(gr.profile);
                keep_rules(gr.report, ids);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(config.jobs, static_cast<unsigned>(entries.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::sort(res.groups.begin(), res.groups.end(),
              [](const GroupResult& a, const GroupResult& b) { return a.profile.name < b.profile.name; });

    bool violated = false, any_skipped = false;
    bool r8_window = false;
    for (const auto& id : ids)
        for (auto s : {RuleStatus::holds, RuleStatus::violated, RuleStatus::not_applicable, RuleStatus::skipped})
            res.summary[id][s] = 0;
    for (const auto& gr : res.groups) {
        for (const auto& r : gr.report.rules) {
            ++res.summary[r.id][r.status];
            violated |= r.status == RuleStatus::violated;
            any_skipped |= r.status == RuleStatus::skipped;
            if (r.id == "R8" && r.status != RuleStatus::not_applicable &&
                gr.profile.flags.nilpotency_class >= gr.profile.prime + 1)
                r8_window = true;
        }
        violated |= gr.profile.bar_check == CheckStatus::failed;
        any_skipped |= gr.profile.bar_check == CheckStatus::skipped;
    }
    for (const auto& id : ids) {
        const auto& s = res.summary[id];
        if (s.at(RuleStatus::holds) + s.at(RuleStatus::violated) + s.at(RuleStatus::skipped) > 0) continue;
        if (id == "R4")
            res.vacuity_notes.push_back(
                "R4: vacuous on this catalog; no group of odd order has class exactly 5 (needs order >= 3^6)");
        else
            res.vacuity_notes.push_back(id + ": vacuous on this catalog; no group meets the hypothesis");
    }
    if (std::find(ids.begin(), ids.end(), "R8") != ids.end() && !r8_window)
        res.vacuity_notes.push_back(
            "R8: class window p+1 <= c <= 3p+2 is vacuous on this catalog; only classes already covered by R3 "
            "were checked");
    if (violated) res.exit_code = 1;
    else if (config.strict && any_skipped) res.exit_code = 3;
    return res;
}

std::string format_run(const RunResult& r, OutputFormat format) {
    std::ostringstream os;
    if (format == OutputFormat::json) {
        nlohmann::json j;
        nlohmann::json groups = nlohmann::json::array();
        for (const auto& g : r.groups) groups.push_back(group_json(g));
        j["groups"] = groups;
        nlohmann::json summary = nlohmann::json::object();
        for (const auto& [id, counts] : r.summary) {
            nlohmann::json c = nlohmann::json::object();
            for (const auto& [status, n] : counts) c[to_string(status)] = n;
            summary[id] = c;
        }
        j["summary"] = summary;
        j["notes"] = r.vacuity_notes;
        j["exit_code"] = r.exit_code;
        os << j.dump(2) << "\n";
        return os.str();
    }
    if (format == OutputFormat::csv) {
        os << "group,order,rule,status,witness\n";
        for (const auto& g : r.groups) {
            for (const auto& rule : g.report.rules)
                os << csv_field(g.profile.name) << ',' << g.profile.order << ',' << rule.id << ','
                   << to_string(rule.status) << ',' << csv_field(rule.witness) << '\n';
            os << csv_field(g.profile.name) << ',' << g.profile.order << ",bar-check," << to_string(g.profile.bar_check)
               << ',' << csv_field(g.profile.bar_note) << '\n';
        }
        return os.str();
    }
    for (const auto& g : r.groups) {
        const GroupProfile& p = g.profile;
        os << p.name << "  order " << p.order << ", p = " << p.prime;
        if (p.skipped) {
            os << "  [" << *p.skipped << "]\n";
        } else {
            os << ", class " << p.flags.nilpotency_class << ", d " << p.flags.derived_length << ", e(G) " << p.exponent
               << ", M " << (p.multiplier ? p.multiplier->to_string() : "error") << ", e(G^G) "
               << (p.exterior_exponent ? std::to_string(*p.exterior_exponent) : p.exterior_note) << "\n";
        }
        for (const auto& rule : g.report.rules) {
            if (rule.status == RuleStatus::not_applicable) continue;
            os << "  " << rule.id << " " << to_string(rule.status) << ": " << rule.witness << "\n";
        }
        os << "  bar check " << to_string(p.bar_check) << ": " << p.bar_note << "\n";
        if (g.report.observation) os << "  observation " << *g.report.observation << "\n";
    }
    os << "\nsummary (holds / violated / not_applicable / skipped)\n";
    for (const auto& id : rule_ids()) {
        auto it = r.summary.find(id);
        if (it == r.summary.end()) continue;
        const auto& c = it->second;
        os << "  " << id << "  " << c.at(RuleStatus::holds) << " / " << c.at(RuleStatus::violated) << " / "
           << c.at(RuleStatus::not_applicable) << " / " << c.at(RuleStatus::skipped) << "   " << rule_title(id) << "\n";
    }
    for (const auto& n : r.vacuity_notes) os << "note: " << n << "\n";
    os << "exit " << r.exit_code << "\n";
    return os.str();
}

}  // namespace schurlab
