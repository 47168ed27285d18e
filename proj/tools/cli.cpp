#include "cli.hpp"

#include <unistd.h>

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "flagsph/branching.hpp"
#include "flagsph/embeddings.hpp"
#include "flagsph/orbits.hpp"
#include "flagsph/partitions.hpp"
#include "flagsph/registry.hpp"
#include "flagsph/sphericity.hpp"

namespace flagsph::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw UsageError("not an integer list: '" + text + "'");
        }
        if (used != item.size()) throw UsageError("not an integer list: '" + text + "'");
        out.push_back(v);
    }
    if (out.empty()) throw UsageError("empty list");
    return out;
}

std::set<int> parse_index(const std::string& text) {
    auto v = parse_int_list(text);
    return {v.begin(), v.end()};
}

GroupKind parse_group(const std::string& g, int dim) {
    if (g == "sp") return GroupKind(Kind::Symplectic, dim);
    if (g == "so") return GroupKind(Kind::Orthogonal, dim);
    throw UsageError("group must be sp or so");
}

Sign parse_sign(const std::string& s) {
    if (s.empty()) return Sign::None;
    if (s == "+" || s == "plus") return Sign::Plus;
    if (s == "-" || s == "minus") return Sign::Minus;
    throw UsageError("sign must be + or -");
}

Params parse_params(const std::string& text) {
    Params p;
    if (text.empty()) return p;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("parameters are written name=value,...");
        try {
            p[item.substr(0, eq)] = std::stoll(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw UsageError("bad parameter value in '" + item + "'");
        }
    }
    return p;
}

std::string index_string(const std::set<int>& I) {
    std::string s;
    for (int i : I) s += (s.empty() ? "" : ",") + std::to_string(i);
    return "{" + s + "}";
}

json verdict_json(const SphericityVerdict& v) {
    return {{"status", to_string(v.status)}, {"witness_rank", v.witness_rank}, {"target", v.target},
            {"trials_used", v.trials_used}, {"seed", v.seed}};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sphericity of flag varieties under reductive subgroups of Sp and SO"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for all subcommands");

    bool color = std::getenv("NO_COLOR") == nullptr && &out == &std::cout && isatty(STDOUT_FILENO);

    // collapse
    int c_d = 0, c_eps = 0;
    std::string c_part, c_format = "text";
    auto* collapse_cmd = app.add_subcommand("collapse", "Largest partition of the parity class dominated by a partition");
    collapse_cmd->add_option("--d", c_d, "Dimension")->required();
    collapse_cmd->add_option("--eps", c_eps, "+1 orthogonal, -1 symplectic")->required()->check(CLI::IsMember({-1, 1}));
    collapse_cmd->add_option("--partition", c_part, "Parts, e.g. 3,1,1,1")->required();
    collapse_cmd->add_option("--format", c_format)->check(CLI::IsMember({"text", "json"}));

    // richardson
    std::string r_group, r_comp, r_sign, r_format = "text";
    int r_dim = 0;
    auto* rich_cmd = app.add_subcommand("richardson", "Richardson orbit of a flag variety");
    rich_cmd->add_option("--group", r_group)->required()->check(CLI::IsMember({"sp", "so"}));
    rich_cmd->add_option("--dim", r_dim)->required();
    rich_cmd->add_option("--composition", r_comp, "Symmetric composition, e.g. 1,3,3,1")->required();
    rich_cmd->add_option("--sign", r_sign, "+ or - for the two families in SO(4k)");
    rich_cmd->add_option("--format", r_format)->check(CLI::IsMember({"text", "json"}));

    // poset
    std::string p_group, p_format = "text";
    int p_dim = 0;
    auto* poset_cmd = app.add_subcommand("poset", "Nil-equivalence classes of flag varieties and their order");
    poset_cmd->add_option("--group", p_group)->required()->check(CLI::IsMember({"sp", "so"}));
    poset_cmd->add_option("--dim", p_dim)->required();
    poset_cmd->add_option("--format", p_format)->check(CLI::IsMember({"text", "json", "dot"}));

    // minimal
    std::string m_group, m_format = "text";
    int m_dim = 0;
    auto* minimal_cmd = app.add_subcommand("minimal", "Minimal nil-equivalence classes");
    minimal_cmd->add_option("--group", m_group)->required()->check(CLI::IsMember({"sp", "so"}));
    minimal_cmd->add_option("--dim", m_dim)->required();
    minimal_cmd->add_option("--format", m_format)->check(CLI::IsMember({"text", "json"}));

    // spherical
    std::string s_spec, s_index, s_format = "text";
    std::uint64_t s_seed = 0;
    int s_trials = kDefaultTrials;
    auto* sph_cmd = app.add_subcommand("spherical", "Test whether X_I is H-spherical");
    sph_cmd->add_option("--spec", s_spec, "Pair spec, e.g. \"so(7): g2 : F7\"")->required();
    sph_cmd->add_option("--index", s_index, "Index set, e.g. 1,2")->required();
    sph_cmd->add_option("--seed", s_seed);
    sph_cmd->add_option("--trials", s_trials)->check(CLI::NonNegativeNumber);
    sph_cmd->add_option("--format", s_format)->check(CLI::IsMember({"text", "json"}));

    // branch
    std::string b_spec, b_lambda, b_format = "text";
    auto* branch_cmd = app.add_subcommand("branch", "Restrict an irreducible G-module to H");
    branch_cmd->add_option("--spec", b_spec)->required();
    branch_cmd->add_option("--lambda", b_lambda, "Highest weight, e.g. pi1+2*pi3")->required();
    branch_cmd->add_option("--format", b_format)->check(CLI::IsMember({"text", "json"}));

    // gamma
    std::string g_spec, g_index, g_format = "text";
    std::uint64_t g_seed = 0;
    int g_degree = 4;
    auto* gamma_cmd = app.add_subcommand("gamma", "Indecomposable elements of the branching monoid");
    gamma_cmd->add_option("--spec", g_spec)->required();
    gamma_cmd->add_option("--index", g_index)->required();
    gamma_cmd->add_option("--seed", g_seed);
    gamma_cmd->add_option("--degree-bound", g_degree, "Largest coefficient sum to explore")->check(CLI::PositiveNumber);
    gamma_cmd->add_option("--format", g_format)->check(CLI::IsMember({"text", "json"}));

    // descent
    std::string d_spec, d_format = "text";
    std::uint64_t d_seed = 0;
    auto* descent_cmd = app.add_subcommand("descent", "Check that sphericity descends along the class order");
    descent_cmd->add_option("--spec", d_spec)->required();
    descent_cmd->add_option("--seed", d_seed);
    descent_cmd->add_option("--format", d_format)->check(CLI::IsMember({"text", "json"}));

    // verify
    std::string v_case, v_params, v_registry, v_format = "text";
    bool v_all = false;
    std::uint64_t v_seed = 0;
    int v_trials = kDefaultTrials;
    auto* verify_cmd = app.add_subcommand("verify", "Check registry cases against their recorded expectations");
    auto* case_opt = verify_cmd->add_option("--case", v_case, "Case id");
    auto* all_opt = verify_cmd->add_flag("--all", v_all, "Every sample of every case");
    case_opt->excludes(all_opt);
    verify_cmd->add_option("--params", v_params, "Parameters, e.g. l=3,m=2")->needs(case_opt);
    verify_cmd->add_option("--seed", v_seed);
    verify_cmd->add_option("--trials", v_trials)->check(CLI::NonNegativeNumber);
    verify_cmd->add_option("--registry", v_registry, "Registry JSON file instead of the built-in one")->check(CLI::ExistingFile);
    verify_cmd->add_option("--format", v_format)->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*collapse_cmd) {
            Partition a = parse_partition(c_part);
            if (a.total() != c_d) throw UsageError("partition does not sum to --d");
            Partition b = collapse(a, ParityClass(c_eps));
            if (c_format == "json")
                out << json{{"partition", a.str()}, {"eps", c_eps}, {"collapse", b.str()}}.dump() << "\n";
            else
                out << b.str() << "\n";
            return 0;
        }
        if (*rich_cmd) {
            GroupKind g = parse_group(r_group, r_dim);
            FlagDescriptor f = make_flag(g, parse_int_list(r_comp), parse_sign(r_sign));
            OrbitLabel o = richardson(f);
            if (r_format == "json")
                out << json{{"flag", f.str()}, {"group", g.str()}, {"orbit", o.str()}, {"partition", o.partition.str()}}.dump() << "\n";
            else
                out << o.str() << "\n";
            return 0;
        }
        if (*poset_cmd) {
            FlagPoset p = flag_poset(parse_group(p_group, p_dim));
            if (p_format == "dot") {
                out << p.dot();
            } else if (p_format == "json") {
                json j{{"group", p.group.str()}, {"classes", json::array()}, {"covers", json::array()}};
                for (const auto& c : p.classes) {
                    json members = json::array();
                    for (const auto& f : c.members) members.push_back(f.str());
                    j["classes"].push_back({{"orbit", c.key.str()}, {"members", members}});
                }
                for (auto [a, b] : p.covers()) j["covers"].push_back({a, b});
                out << j.dump(2) << "\n";
            } else {
                out << p.group.str() << ": " << p.classes.size() << " classes\n";
                for (size_t i = 0; i < p.classes.size(); ++i) {
                    out << "  [" << i << "] " << p.classes[i].key.str() << ":";
                    for (const auto& f : p.classes[i].members) out << " " << f.str();
                    out << "\n";
                }
                for (auto [a, b] : p.covers()) out << "  " << a << " < " << b << "\n";
            }
            return 0;
        }
        if (*minimal_cmd) {
            GroupKind g = parse_group(m_group, m_dim);
            auto mins = minimal_classes(g);
            if (m_format == "json") {
                json j{{"group", g.str()}, {"classes", json::array()}};
                for (const auto& c : mins) {
                    json members = json::array();
                    for (const auto& f : c.members) members.push_back(f.str());
                    j["classes"].push_back({{"orbit", c.key.str()}, {"members", members}});
                }
                out << j.dump(2) << "\n";
            } else {
                out << mins.size() << (mins.size() == 1 ? " class" : " classes") << "\n";
                for (const auto& c : mins) {
                    out << "  " << c.key.str() << ":";
                    for (const auto& f : c.members) out << " " << f.str();
                    out << "\n";
                }
            }
            return 0;
        }
        if (*sph_cmd) {
            EmbeddedSubgroup e = build_subalgebra(s_spec);
            std::set<int> I = parse_index(s_index);
            SphericityVerdict v = is_spherical_flag(e, I, s_trials, s_seed);
            if (s_format == "json") {
                json j = verdict_json(v);
                j["spec"] = s_spec;
                j["index"] = index_string(I);
                out << j.dump(2) << "\n";
            } else {
                out << to_string(v.status) << "  (best rank " << v.witness_rank << " of " << v.target << ", "
                    << v.trials_used << " samples, seed " << v.seed << ")\n";
            }
            return 0;
        }
        if (*branch_cmd) {
            EmbeddedSubgroup e = build_subalgebra(b_spec);
            Weight lambda = parse_weight(e.g_reductive(), b_lambda);
            Restriction r = restrict_irrep(e, lambda);
            if (b_format == "json") {
                json j{{"lambda", format_weight(e.g_reductive(), lambda)}, {"dim", weyl_dim(e.g_reductive(), lambda)},
                       {"components", json::array()}};
                for (const auto& [mu, m] : r)
                    j["components"].push_back({{"mu", format_weight(e.htype, mu)}, {"multiplicity", m}, {"dim", weyl_dim(e.htype, mu)}});
                out << j.dump(2) << "\n";
            } else {
                out << "R(" << format_weight(e.g_reductive(), lambda) << "), dim " << weyl_dim(e.g_reductive(), lambda) << "\n";
                for (const auto& [mu, m] : r) {
                    out << "  " << format_weight(e.htype, mu) << "  dim " << weyl_dim(e.htype, mu);
                    if (m != 1) out << "  x" << m;
                    out << "\n";
                }
            }
            return 0;
        }
        if (*gamma_cmd) {
            EmbeddedSubgroup e = build_subalgebra(g_spec);
            std::set<int> I = parse_index(g_index);
            SphericityVerdict v = is_spherical_flag(e, I, kDefaultTrials, g_seed);
            int rank = v.spherical() ? branching_rank(e, I, kDefaultTrials, g_seed) : -1;
            BranchingMonoid m = gamma_generators(e, I, rank, g_degree);
            if (g_format == "json") {
                json j{{"spec", g_spec}, {"index", index_string(I)}, {"status", to_string(v.status)},
                       {"rank", rank}, {"complete", m.complete}, {"multiplicity_free", m.multiplicity_free},
                       {"generators", json::array()}, {"notes", m.notes}};
                for (const auto& p : m.generators) j["generators"].push_back(format_pair(m.g, m.h, p));
                out << j.dump(2) << "\n";
            } else {
                out << to_string(v.status);
                if (rank >= 0) out << ", rank " << rank;
                out << ", " << m.generators.size() << " generators" << (m.complete ? "" : " (incomplete)") << "\n";
                for (const auto& p : m.generators) out << "  " << format_pair(m.g, m.h, p) << "\n";
                for (const auto& n : m.notes) out << "  note: " << n << "\n";
            }
            return 0;
        }
        if (*descent_cmd) {
            VerifyOptions opt;
            opt.seed = d_seed;
            DescentReport r = verify_descent(d_spec, opt);
            if (d_format == "json") {
                out << json{{"spec", r.spec}, {"classes", r.classes}, {"spherical_classes", r.spherical_classes},
                            {"pairs_checked", r.pairs_checked}, {"violations", r.violations}, {"pass", r.pass}}
                           .dump(2)
                    << "\n";
            } else {
                out << (r.pass ? "PASS" : "FAIL") << "  " << r.spherical_classes << " of " << r.classes
                    << " classes spherical, " << r.pairs_checked << " comparable pairs\n";
                for (const auto& v : r.violations) out << "  " << v << "\n";
            }
            return r.pass ? 0 : 1;
        }
        if (*verify_cmd) {
            if (!v_all && v_case.empty()) throw UsageError("verify needs --case ID or --all");
            Registry loaded;
            if (!v_registry.empty()) loaded = load_registry(v_registry);
            const Registry& reg = v_registry.empty() ? builtin_registry() : loaded;
            VerifyOptions opt;
            opt.seed = v_seed;
            opt.trials = v_trials;
            std::vector<CaseReport> reports;
            if (v_all) {
                reports = verify_all(reg, opt);
            } else {
                const CaseRecord* c = nullptr;
                try {
                    c = &reg.find(v_case);
                } catch (const std::out_of_range& e) {
                    throw UsageError(e.what());
                }
                if (v_params.empty())
                    for (const auto& s : c->samples) reports.push_back(verify_case(*c, s, opt));
                else
                    reports.push_back(verify_case(*c, parse_params(v_params), opt));
            }
            out << (v_format == "json" ? reports_to_json(reports) : reports_to_text(reports, color));
            bool ok = std::all_of(reports.begin(), reports.end(), [](const CaseReport& r) { return r.pass || r.known_discrepancy; });
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace flagsph::cli
