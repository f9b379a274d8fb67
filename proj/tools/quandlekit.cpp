// quandlekit: link invariants from diagram codes — Alexander-type module
// presentations, finite coefficient shadows, and medial quandles.

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "quandlekit/alexmod.hpp"
#include "quandlekit/finquot.hpp"
#include "quandlekit/linkdiag.hpp"
#include "quandlekit/quandle.hpp"
#include "quandlekit/verify.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitBudget = 2;
constexpr int kExitVerify = 3;

struct RunConfig {
    std::string link;
    std::string link2;
    int p = 0;                  // 0: use the default ring set
    std::string q_text;
    int64_t budget_module = 4096;
    int64_t budget_quandle = 512;
    int64_t budget_nodes = 1000000;
    uint64_t seed = 1;
    bool json_out = false;
    bool strict = false;
    bool verbose = false;
    std::string check;

    qk::SearchBudget budget() const {
        if (budget_module <= 0 || budget_quandle <= 0 || budget_nodes <= 0)
            throw qk::DomainError("budgets must be positive");
        return {budget_module, budget_quandle, budget_nodes};
    }

    std::vector<qk::FiniteRing> rings() const {
        if (p == 0 && q_text.empty()) return qk::default_rings();
        if (p == 0 || q_text.empty())
            throw qk::DomainError("--p and --q must be given together");
        return {qk::FiniteRing::parse(p, q_text)};
    }
};

std::vector<std::string> catalog_dirs() {
    std::vector<std::string> dirs;
    if (const char* env = std::getenv("QUANDLEKIT_CATALOG")) {
        std::string s = env;
        size_t pos = 0;
        while (pos <= s.size()) {
            size_t next = s.find(':', pos);
            std::string part = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
            if (!part.empty()) dirs.push_back(part);
            if (next == std::string::npos) break;
            pos = next + 1;
        }
    }
    return dirs;
}

qk::Diagram load(const std::string& name) { return qk::load_diagram(name, catalog_dirs()); }

json presentation_json(const qk::PresentedModule& m) {
    json rows = json::object();
    for (size_t i = 0; i < m.rows.size(); ++i) {
        json row = json::object();
        for (size_t j = 0; j < m.gens.size(); ++j)
            if (!m.rows[i][j].is_zero()) row[m.gens[j]] = m.rows[i][j].str();
        rows[m.row_labels[i]] = row;
    }
    return json{{"ring_vars", m.num_vars}, {"generators", m.gens}, {"relations", rows}};
}

int cmd_alexander(const RunConfig& cfg) {
    qk::Diagram d = load(cfg.link);
    qk::PresentedModule multi = qk::alexander_presentation(d);
    qk::PresentedModule red = qk::reduced_presentation(d);
    qk::CrowellData cd_multi = qk::crowell_data(d, false);
    qk::CrowellData cd_red = qk::crowell_data(d, true);
    qk::LaurentPoly delta = qk::alexander_polynomial(red);

    if (cfg.json_out) {
        json out{{"schema", 1},
                 {"link", d.name},
                 {"components", d.mu},
                 {"classical", d.classical},
                 {"presentation", presentation_json(multi)},
                 {"reduced_presentation", presentation_json(red)},
                 {"alexander_polynomial", delta.str()}};
        json phi = json::object();
        for (const auto& [a, v] : cd_multi.phi) phi[a] = v.str();
        out["crowell"] = phi;
        json ztail = json::object();
        for (const auto& [a, z] : cd_red.ztail) ztail[a] = z;
        out["phi_tau_tail"] = ztail;
        json longs = json::object();
        for (int i = 1; i <= d.mu; ++i) longs["chi_" + std::to_string(i)] = qk::longitude(d, i).str();
        out["longitudes"] = longs;
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    }
    std::cout << "link: " << d.name << "  (components: " << d.mu << ", arcs: " << d.arcs.size()
              << ", crossings: " << d.crossings.size() << ", " << (d.classical ? "classical" : "virtual")
              << ")\n\n";
    std::cout << "multivariate presentation:\n" << qk::presentation_table(multi) << "\n";
    std::cout << "reduced presentation:\n" << qk::presentation_table(red) << "\n";
    std::cout << "Crowell map: ";
    for (const auto& [a, v] : cd_multi.phi) std::cout << "phi(" << a << ") = " << v.str() << "  ";
    std::cout << "\nreduced Crowell map: phi = 1 on every arc";
    if (d.mu > 1) {
        std::cout << "; tail:";
        for (const auto& [a, z] : cd_red.ztail) {
            std::cout << " " << a << "=(";
            for (size_t k = 0; k < z.size(); ++k) std::cout << (k ? "," : "") << z[k];
            std::cout << ")";
        }
    }
    std::cout << "\nlongitudes:\n";
    for (int i = 1; i <= d.mu; ++i)
        std::cout << "  chi_" << i << " = " << qk::longitude(d, i).str() << "\n";
    std::cout << "\nΔ(t) = " << delta.str() << "\n";
    return kExitOk;
}

int cmd_medial(const RunConfig& cfg) {
    qk::Diagram d = load(cfg.link);
    for (const auto& ring : cfg.rings()) {
        qk::FiniteQuandle q = qk::mq_of_link(d, ring, cfg.budget());
        if (cfg.json_out) {
            json out = json::parse(qk::quandle_json(q));
            out["link"] = d.name;
            out["ring"] = ring.label();
            std::cout << out.dump(2) << "\n";
        } else {
            std::cout << "MQ shadow of " << d.name << " over " << ring.label() << ": " << q.size()
                      << " elements\n";
            if (q.block) {
                std::vector<int> sizes(d.mu, 0);
                for (int b : *q.block) ++sizes[b];
                std::cout << "block sizes:";
                for (int s : sizes) std::cout << " " << s;
                std::cout << "\n";
            }
            std::cout << qk::quandle_table(q) << "\n";
        }
    }
    return kExitOk;
}

int cmd_compare(const RunConfig& cfg) {
    qk::Diagram d1 = load(cfg.link);
    qk::Diagram d2 = load(cfg.link2);
    bool consistent = true;
    json rings_json = json::array();
    for (const auto& ring : cfg.rings()) {
        qk::LinkShadow s1 = qk::link_shadow(d1, ring);
        qk::LinkShadow s2 = qk::link_shadow(d2, ring);
        qk::FiniteMap i1, i2;
        qk::FiniteModule n1 = qk::submodule_as_module(s1.mod(), s1.ker_phi, &i1);
        qk::FiniteModule n2 = qk::submodule_as_module(s2.mod(), s2.ker_phi, &i2);
        bool mod_iso = qk::iso_search(n1, n2, {}, cfg.budget()).has_value();
        qk::FiniteQuandle q1 = qk::mq_of_link(d1, ring, cfg.budget());
        qk::FiniteQuandle q2 = qk::mq_of_link(d2, ring, cfg.budget());
        bool mq_iso = qk::quandle_iso_search(q1, q2, cfg.budget()).has_value();
        bool both_cl2 = d1.classical && d2.classical && d1.mu == 2 && d2.mu == 2;
        // at shadow level: isomorphic invariants must give isomorphic quandles
        bool ok = !(both_cl2 && mod_iso && !mq_iso);
        consistent = consistent && ok;
        if (cfg.json_out) {
            rings_json.push_back(json{{"ring", ring.label()},
                                      {"module_shadows_isomorphic", mod_iso},
                                      {"mq_shadows_isomorphic", mq_iso},
                                      {"consistent", ok},
                                      {"invariant_shadow1", json::parse(qk::module_json(n1))},
                                      {"invariant_shadow2", json::parse(qk::module_json(n2))}});
        } else {
            std::cout << ring.label() << ": reduced invariant shadows "
                      << (mod_iso ? "isomorphic" : "distinguished") << " (dims " << n1.dim << "/" << n2.dim
                      << "), MQ shadows " << (mq_iso ? "isomorphic" : "distinguished") << " (sizes "
                      << q1.size() << "/" << q2.size() << ")" << (ok ? "" : "  <-- INCONSISTENT") << "\n";
        }
    }
    if (cfg.json_out)
        std::cout << json{{"schema", 1}, {"link1", d1.name}, {"link2", d2.name}, {"rings", rings_json}}.dump(2)
                  << "\n";
    return consistent ? kExitOk : kExitVerify;
}

int cmd_verify(const RunConfig& cfg) {
    qk::VerifyOptions opt;
    if (!cfg.link.empty()) opt.links = {cfg.link};
    opt.rings = cfg.rings();
    if (cfg.p == 0) opt.rings = qk::default_rings();
    opt.budget = cfg.budget();
    opt.seed = cfg.seed;
    opt.strict = cfg.strict;
    opt.only_check = cfg.check;
    if (!cfg.check.empty()) {
        auto names = qk::verify_check_names();
        if (std::find(names.begin(), names.end(), cfg.check) == names.end())
            throw qk::DomainError("unknown check '" + cfg.check + "'");
    }
    auto results = qk::run_verify(opt);
    bool all_ok = true;
    if (cfg.json_out) {
        json out = json::array();
        for (const auto& r : results) {
            all_ok = all_ok && r.ok(cfg.strict);
            json insts = json::array();
            for (const auto& i : r.instances)
                insts.push_back(json{{"link", i.link},
                                     {"ring", i.ring},
                                     {"pass", i.pass},
                                     {"deviation", i.deviation},
                                     {"not_applicable", i.not_applicable},
                                     {"note", i.note}});
            out.push_back(json{{"check", r.name}, {"pass", r.ok(cfg.strict)}, {"instances", insts}});
        }
        std::cout << json{{"schema", 1}, {"results", out}}.dump(2) << "\n";
    } else {
        for (const auto& r : results) {
            all_ok = all_ok && r.ok(cfg.strict);
            std::cout << qk::format_check_result(r, cfg.strict, cfg.verbose) << "\n";
        }
    }
    return all_ok ? kExitOk : kExitVerify;
}

int cmd_catalog(const RunConfig& cfg, bool show) {
    if (!show) {
        for (const auto& name : qk::catalog_names()) {
            const qk::Diagram& d = qk::catalog(name);
            std::cout << name << "  (components " << d.mu << ", crossings " << d.crossings.size() << ", "
                      << (d.classical ? "classical" : "virtual") << ")\n";
        }
        return kExitOk;
    }
    std::cout << qk::catalog_source(cfg.link);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quandlekit: Alexander-type modules and medial quandles of link diagrams"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_ring_opts = [&](CLI::App* sub) {
        sub->add_option("--p", cfg.p, "prime for the coefficient ring F_p[t]/(q)");
        sub->add_option("--q", cfg.q_text, "monic modulus polynomial, e.g. t^2+t+1");
        sub->add_option("--budget-module", cfg.budget_module, "max module elements enumerated");
        sub->add_option("--budget-quandle", cfg.budget_quandle, "max quandle elements");
        sub->add_option("--budget-nodes", cfg.budget_nodes, "max search nodes");
        sub->add_option("--seed", cfg.seed, "seed for sampled searches");
        sub->add_flag("--json", cfg.json_out, "machine-readable output");
    };

    CLI::App* alex = app.add_subcommand("alexander", "module presentations, longitudes, Alexander polynomial");
    alex->add_option("link", cfg.link, "catalog name or diagram file")->required();
    add_ring_opts(alex);

    CLI::App* medial = app.add_subcommand("medial", "finite shadow of the medial quandle");
    medial->add_option("link", cfg.link, "catalog name or diagram file")->required();
    add_ring_opts(medial);

    CLI::App* compare = app.add_subcommand("compare", "compare invariant shadows of two links");
    compare->add_option("link", cfg.link, "first link")->required();
    compare->add_option("link2", cfg.link2, "second link")->required();
    add_ring_opts(compare);

    CLI::App* verify = app.add_subcommand("verify", "run the named verification checks");
    verify->add_flag("--all", "run every check (default)");
    verify->add_option("--check", cfg.check, "run a single named check");
    verify->add_option("--link", cfg.link, "restrict to one link");
    verify->add_flag("--strict", cfg.strict, "recorded deviations count as failures");
    verify->add_flag("--verbose", cfg.verbose, "print every instance");
    add_ring_opts(verify);

    CLI::App* cat = app.add_subcommand("catalog", "list or show built-in diagrams");
    CLI::App* cat_list = cat->add_subcommand("list", "list catalog entries");
    CLI::App* cat_show = cat->add_subcommand("show", "print a catalog entry");
    cat_show->add_option("link", cfg.link, "catalog name")->required();
    cat->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*alex) return cmd_alexander(cfg);
        if (*medial) return cmd_medial(cfg);
        if (*compare) return cmd_compare(cfg);
        if (*verify) return cmd_verify(cfg);
        if (*cat) return cmd_catalog(cfg, cat_show->parsed());
        (void)cat_list;
    } catch (const qk::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const qk::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
