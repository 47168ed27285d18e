#include "flagsph/registry.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "flagsph/branching.hpp"
#include "flagsph/embeddings.hpp"
#include "flagsph/sphericity.hpp"

namespace flagsph {

extern const char* const kBuiltinRegistryJson;

// ---------------------------------------------------------------------------
// Integer expressions

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    if (b == 0) throw std::invalid_argument("division by zero in expression");
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

class ExprParser {
public:
    ExprParser(const std::string& s, const Params& vars) : s_(s), vars_(vars) {}

    std::int64_t parse() {
        std::int64_t v = parse_or();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + s_.substr(pos_) + "'");
        return v;
    }

private:
    const std::string& s_;
    const Params& vars_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("bad expression '" + s_ + "': " + what);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(const std::string& tok) {
        skip();
        if (s_.compare(pos_, tok.size(), tok) == 0) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    std::int64_t parse_or() {
        std::int64_t v = parse_and();
        while (eat("||")) {
            std::int64_t r = parse_and();
            v = (v || r) ? 1 : 0;
        }
        return v;
    }
    std::int64_t parse_and() {
        std::int64_t v = parse_cmp();
        while (eat("&&")) {
            std::int64_t r = parse_cmp();
            v = (v && r) ? 1 : 0;
        }
        return v;
    }
    std::int64_t parse_cmp() {
        std::int64_t v = parse_sum();
        for (;;) {
            if (eat("==")) v = v == parse_sum();
            else if (eat("!=")) v = v != parse_sum();
            else if (eat("<=")) v = v <= parse_sum();
            else if (eat(">=")) v = v >= parse_sum();
            else if (eat("<")) v = v < parse_sum();
            else if (eat(">")) v = v > parse_sum();
            else return v;
        }
    }
    std::int64_t parse_sum() {
        std::int64_t v = parse_product();
        for (;;) {
            if (eat("+")) v += parse_product();
            else if (eat("-")) v -= parse_product();
            else return v;
        }
    }
    std::int64_t parse_product() {
        std::int64_t v = parse_unary();
        for (;;) {
            if (eat("*")) v *= parse_unary();
            else if (eat("/")) v = floor_div(v, parse_unary());
            else if (eat("%")) {
                std::int64_t b = parse_unary();
                v = v - b * floor_div(v, b);
            } else return v;
        }
    }
    std::int64_t parse_unary() {
        if (eat("-")) return -parse_unary();
        if (eat("!")) return parse_unary() == 0 ? 1 : 0;
        return parse_atom();
    }
    std::int64_t parse_atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        if (eat("(")) {
            std::int64_t v = parse_or();
            if (!eat(")")) fail("missing ')'");
            return v;
        }
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::int64_t v = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) v = 10 * v + (s_[pos_++] - '0');
            return v;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t b = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name = s_.substr(b, pos_ - b);
            if (eat("(")) {
                std::vector<std::int64_t> args;
                if (!eat(")")) {
                    do args.push_back(parse_or());
                    while (eat(","));
                    if (!eat(")")) fail("missing ')' after arguments of " + name);
                }
                auto want = [&](size_t n) {
                    if (args.size() != n) fail(name + " takes " + std::to_string(n) + " arguments");
                };
                if (name == "min") { want(2); return std::min(args[0], args[1]); }
                if (name == "max") { want(2); return std::max(args[0], args[1]); }
                if (name == "delta") { want(2); return args[0] == args[1] ? 1 : 0; }
                fail("unknown function " + name);
            }
            auto it = vars_.find(name);
            if (it == vars_.end()) fail("unknown parameter " + name);
            return it->second;
        }
        fail(std::string("unexpected '") + c + "'");
    }
};

}  // namespace

std::int64_t eval_int(const std::string& expr, const Params& vars) { return ExprParser(expr, vars).parse(); }

std::string substitute(const std::string& tmpl, const Params& vars) {
    std::string out;
    size_t pos = 0;
    while (pos < tmpl.size()) {
        size_t b = tmpl.find("${", pos);
        if (b == std::string::npos) {
            out += tmpl.substr(pos);
            break;
        }
        size_t e = tmpl.find('}', b);
        if (e == std::string::npos) throw std::invalid_argument("unterminated ${ in '" + tmpl + "'");
        out += tmpl.substr(pos, b - pos);
        out += std::to_string(eval_int(tmpl.substr(b + 2, e - b - 2), vars));
        pos = e + 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Loading

namespace {

using nlohmann::json;

std::string opt_string(const json& j, const char* key) {
    return j.contains(key) ? j.at(key).get<std::string>() : std::string();
}

GeneratorTemplate parse_generator(const json& j) {
    GeneratorTemplate g;
    if (j.is_array()) {
        if (j.size() != 2) throw std::invalid_argument("generator arrays must be [lambda, mu]");
        g.lambda = j[0].get<std::string>();
        g.mu = j[1].get<std::string>();
        return g;
    }
    g.lambda = j.at("lambda").get<std::string>();
    g.mu = j.at("mu").get<std::string>();
    g.when = opt_string(j, "when");
    if (j.contains("for")) {
        const json& f = j.at("for");
        g.var = f.at("var").get<std::string>();
        g.from = f.at("from").get<std::string>();
        g.to = f.at("to").get<std::string>();
    }
    return g;
}

CaseRecord parse_case(const json& j) {
    CaseRecord c;
    c.id = j.at("id").get<std::string>();
    c.family = opt_string(j, "family");
    std::string kind = j.contains("kind") ? j.at("kind").get<std::string>() : "flag";
    if (kind == "flag") c.kind = CaseKind::Flag;
    else if (kind == "weight-monoid") c.kind = CaseKind::WeightMonoid;
    else throw std::invalid_argument("case " + c.id + ": unknown kind " + kind);
    c.spec = j.at("spec").get<std::string>();
    c.index = j.contains("index") ? j.at("index").get<std::string>() : "1";
    if (j.contains("params")) c.params = j.at("params").get<std::vector<std::string>>();
    if (j.contains("derived"))
        for (auto& [k, v] : j.at("derived").items()) c.derived[k] = v.get<std::string>();
    c.valid = opt_string(j, "valid");
    if (j.contains("samples"))
        for (const auto& s : j.at("samples")) {
            Params p;
            for (auto& [k, v] : s.items()) p[k] = v.get<std::int64_t>();
            c.samples.push_back(p);
        }
    if (c.samples.empty()) c.samples.push_back({});
    std::string expect = j.at("expect").get<std::string>();
    if (expect == "spherical") c.expect_spherical = true;
    else if (expect == "not-spherical") c.expect_spherical = false;
    else throw std::invalid_argument("case " + c.id + ": expect must be spherical or not-spherical");
    c.dimension_shortcut = j.value("dimension_shortcut", false);
    if (j.contains("rank")) c.rank = j.at("rank").is_string() ? j.at("rank").get<std::string>() : std::to_string(j.at("rank").get<int>());
    if (j.contains("generators")) {
        c.check_generators = true;
        for (const auto& g : j.at("generators")) c.generators.push_back(parse_generator(g));
    }
    c.discrepancy = opt_string(j, "discrepancy");
    c.note = opt_string(j, "note");
    return c;
}

}  // namespace

const CaseRecord& Registry::find(const std::string& id) const {
    for (const auto& c : cases)
        if (c.id == id) return c;
    throw std::out_of_range("unknown case id '" + id + "'");
}

Registry parse_registry(const std::string& json_text) {
    json j = json::parse(json_text);
    Registry r;
    for (const auto& c : j.at("cases")) r.cases.push_back(parse_case(c));
    std::set<std::string> ids;
    for (const auto& c : r.cases)
        if (!ids.insert(c.id).second) throw std::invalid_argument("duplicate case id " + c.id);
    return r;
}

Registry load_registry(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_registry(ss.str());
}

const Registry& builtin_registry() {
    static const Registry r = parse_registry(kBuiltinRegistryJson);
    return r;
}

// ---------------------------------------------------------------------------
// Verification

namespace {

std::set<int> parse_index_list(const std::string& s) {
    std::set<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.insert(std::stoi(item));
    return out;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
    return out;
}

std::string set_string(const std::set<int>& s) {
    std::vector<std::string> v;
    for (int i : s) v.push_back(std::to_string(i));
    return "{" + join(v, ",") + "}";
}

std::string pair_set_string(const EmbeddedSubgroup& e, const std::set<BranchPair>& s) {
    std::vector<std::string> v;
    for (const auto& p : s) v.push_back(format_pair(e.g_reductive(), e.htype, p));
    return join(v, " ");
}

std::set<BranchPair> expected_generators(const CaseRecord& c, const EmbeddedSubgroup& e, const Params& p) {
    std::set<BranchPair> out;
    for (const auto& g : c.generators) {
        auto add = [&](const Params& q) {
            if (!g.when.empty() && !eval_int(g.when, q)) return;
            out.insert(parse_pair(e.g_reductive(), e.htype, substitute(g.lambda, q), substitute(g.mu, q)));
        };
        if (g.var.empty()) {
            add(p);
            continue;
        }
        std::int64_t lo = eval_int(g.from, p), hi = eval_int(g.to, p);
        for (std::int64_t k = lo; k <= hi; ++k) {
            Params q = p;
            q[g.var] = k;
            add(q);
        }
    }
    return out;
}

void field(CaseReport& r, const std::string& name, const std::string& expected, const std::string& computed) {
    r.fields.push_back({name, expected, computed, expected == computed});
}

std::string verdict_word(bool spherical) { return spherical ? "spherical" : "not-spherical"; }

void check_conservation(CaseReport& r, const EmbeddedSubgroup& e, const std::vector<Weight>& explored) {
    int bad = 0;
    for (const auto& lambda : explored) {
        std::int64_t total = 0;
        for (const auto& [mu, mult] : restrict_irrep(e, lambda)) total += mult * weyl_dim(e.htype, mu);
        if (total != weyl_dim(e.g_reductive(), lambda)) ++bad;
    }
    field(r, "dimension conservation", "0 violations", std::to_string(bad) + " violations");
}

void verify_flag(CaseReport& r, const CaseRecord& c, const EmbeddedSubgroup& e, const std::set<int>& I,
                 const Params& p, const VerifyOptions& opt) {
    if (c.dimension_shortcut) {
        int b = e.borel_dim(), x = flag_dimension(e.g, I);
        r.fields.push_back({"dim B_H < dim X_I", "true", std::to_string(b) + " < " + std::to_string(x), b < x});
    }
    SphericityVerdict v = is_spherical_flag(e, I, opt.trials, opt.seed);
    field(r, "verdict", verdict_word(c.expect_spherical), verdict_word(v.spherical()));
    QuotientModule q = quotient_module(e, I);
    SphericityVerdict mv = is_spherical_module(q.action, opt.trials, opt.seed);
    field(r, "module verdict", verdict_word(v.spherical()), verdict_word(mv.spherical()));
    if (!v.spherical() || !c.expect_spherical) return;

    int rank = branching_rank(e, I, opt.trials, opt.seed);
    if (!c.rank.empty()) field(r, "rank", std::to_string(eval_int(c.rank, p)), std::to_string(rank));
    int fr = flag_rank(e, I, opt.trials, opt.seed);
    field(r, "|I| + flag rank", std::to_string(rank), std::to_string(static_cast<int>(I.size()) + fr));

    BranchingMonoid gm = gamma_generators(e, I, rank, opt.degree_bound);
    field(r, "generator count", std::to_string(rank), std::to_string(gm.generators.size()));
    if (c.check_generators) {
        auto want = expected_generators(c, e, p);
        auto got = gm.generator_set();
        field(r, "generators", pair_set_string(e, want), pair_set_string(e, got));
    }
    field(r, "multiplicity free", "true", gm.multiplicity_free ? "true" : "false");
    check_conservation(r, e, gm.explored);
}

void verify_weight_monoid(CaseReport& r, const CaseRecord& c, const EmbeddedSubgroup& e, const Params& p,
                          const VerifyOptions& opt) {
    std::set<int> I{1};
    SphericityVerdict v = is_spherical_flag(e, I, opt.trials, opt.seed);
    field(r, "verdict", verdict_word(c.expect_spherical), verdict_word(v.spherical()));
    if (!v.spherical()) return;
    int rank = branching_rank(e, I, opt.trials, opt.seed);
    if (!c.rank.empty()) field(r, "rank", std::to_string(eval_int(c.rank, p)), std::to_string(rank));
    BranchingMonoid gm = gamma_generators(e, I, rank, opt.degree_bound);
    BranchingMonoid wm = rbm_via_weight_monoid(e, opt.degree_bound);
    field(r, "weight monoid route", pair_set_string(e, gm.generator_set()), pair_set_string(e, wm.generator_set()));
    field(r, "weight monoid complete", "true", wm.complete ? "true" : "false");
    if (c.check_generators) field(r, "generators", pair_set_string(e, expected_generators(c, e, p)), pair_set_string(e, gm.generator_set()));
    check_conservation(r, e, gm.explored);
}

}  // namespace

Params instantiate(const CaseRecord& c, const Params& given) {
    Params p;
    for (const auto& name : c.params) {
        auto it = given.find(name);
        if (it == given.end()) throw std::invalid_argument("case " + c.id + " needs parameter " + name);
        p[name] = it->second;
    }
    for (const auto& [k, v] : given)
        if (!p.count(k)) throw std::invalid_argument("case " + c.id + " has no parameter " + k);
    if (!c.valid.empty() && !eval_int(c.valid, p))
        throw std::out_of_range("parameters out of range for " + c.id + " (need " + c.valid + ")");
    // derived values may refer to each other in any order; iterate to a fixed point
    for (size_t round = 0; round <= c.derived.size(); ++round) {
        bool missing = false;
        for (const auto& [k, expr] : c.derived) {
            if (p.count(k)) continue;
            try {
                p[k] = eval_int(expr, p);
            } catch (const std::invalid_argument&) {
                missing = true;
            }
        }
        if (!missing) return p;
    }
    throw std::invalid_argument("case " + c.id + ": derived parameters do not resolve");
}

CaseReport verify_case(const CaseRecord& c, const Params& params, const VerifyOptions& opt) {
    CaseReport r;
    r.id = c.id;
    auto t0 = std::chrono::steady_clock::now();
    Params p = instantiate(c, params);
    r.params = params;
    try {
        r.spec = substitute(c.spec, p);
        r.index = c.kind == CaseKind::Flag ? set_string(parse_index_list(substitute(c.index, p))) : "{1}";
        EmbeddedSubgroup e = build_subalgebra(r.spec);
        if (c.kind == CaseKind::Flag) verify_flag(r, c, e, parse_index_list(substitute(c.index, p)), p, opt);
        else verify_weight_monoid(r, c, e, p, opt);
    } catch (const std::exception& ex) {
        r.error = ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.pass = r.error.empty() && std::all_of(r.fields.begin(), r.fields.end(), [](const FieldResult& f) { return f.pass; });
    if (!r.pass && r.error.empty() && !c.discrepancy.empty())
        r.known_discrepancy = std::all_of(r.fields.begin(), r.fields.end(),
                                          [](const FieldResult& f) { return f.pass || f.name == "generators"; });
    return r;
}

CaseReport verify_case(const std::string& id, const Params& params, const VerifyOptions& opt) {
    return verify_case(builtin_registry().find(id), params, opt);
}

std::vector<CaseReport> verify_all(const Registry& r, const VerifyOptions& opt) {
    std::vector<CaseReport> out;
    for (const auto& c : r.cases)
        for (const auto& s : c.samples) out.push_back(verify_case(c, s, opt));
    return out;
}

// ---------------------------------------------------------------------------
// Minimal elements and descent

namespace {

// The representatives listed for the minimal classes; flags in one inner
// vector are expected to share a class.
std::vector<std::vector<FlagDescriptor>> expected_minimal(const GroupKind& g) {
    int d = g.dim;
    if (g.kind == Kind::Symplectic) return {{make_flag(g, {1, d - 2, 1})}};
    if (d % 2 == 1) return {{make_flag(g, {1, d - 2, 1})}};
    int n = d / 2;
    auto q1 = make_flag(g, {1, d - 2, 1});
    auto plus = make_flag(g, {n, n}, Sign::Plus);
    auto minus = make_flag(g, {n, n}, Sign::Minus);
    if (n % 2 == 1) return {{q1}, {plus, minus}};
    return {{q1}, {plus}, {minus}};
}

}  // namespace

MinimalReport verify_minimal_elements(const GroupKind& g) {
    MinimalReport r;
    r.group = g;
    auto mins = minimal_classes(g);
    for (const auto& cls : mins) {
        std::vector<std::string> names;
        for (const auto& f : cls.members) names.push_back(f.str());
        r.computed.push_back("{" + join(names, ", ") + "}");
    }
    auto expected = expected_minimal(g);
    for (const auto& group : expected) {
        std::vector<std::string> names;
        for (const auto& f : group) names.push_back(f.str());
        r.expected.push_back(join(names, " = "));
    }
    auto class_of = [&](const FlagDescriptor& f) {
        ClassKey k = class_key(f);
        for (size_t i = 0; i < mins.size(); ++i)
            if (mins[i].key == k) return static_cast<int>(i);
        return -1;
    };
    bool ok = mins.size() == expected.size();
    std::set<int> used;
    for (const auto& group : expected) {
        int c = class_of(group.front());
        if (c < 0 || !used.insert(c).second) ok = false;
        for (const auto& f : group)
            if (class_of(f) != c) ok = false;
    }
    r.pass = ok;
    return r;
}

DescentReport verify_descent(const std::string& spec, const VerifyOptions& opt) {
    DescentReport r;
    r.spec = spec;
    EmbeddedSubgroup e = build_subalgebra(spec);
    FlagPoset poset = flag_poset(e.spec.group);
    r.classes = static_cast<int>(poset.classes.size());
    std::vector<bool> sph(poset.classes.size(), false);
    for (size_t i = 0; i < poset.classes.size(); ++i) {
        const auto& members = poset.classes[i].members;
        for (size_t k = 0; k < members.size(); ++k) {
            bool s = is_spherical_flag(e, flag_to_index_set(members[k]), opt.trials, opt.seed).spherical();
            if (k == 0) sph[i] = s;
            else if (s != sph[i])
                r.violations.push_back("class " + poset.classes[i].key.str() + " mixes verdicts at " + members[k].str());
        }
        if (sph[i]) ++r.spherical_classes;
    }
    for (size_t i = 0; i < sph.size(); ++i)
        for (size_t j = 0; j < sph.size(); ++j) {
            if (!poset.less[i][j]) continue;
            ++r.pairs_checked;
            if (sph[j] && !sph[i])
                r.violations.push_back(poset.classes[j].key.str() + " spherical but smaller " + poset.classes[i].key.str() + " is not");
        }
    r.pass = r.violations.empty();
    return r;
}

// ---------------------------------------------------------------------------
// Reports

std::string reports_to_json(const std::vector<CaseReport>& reports) {
    json out = json::array();
    for (const auto& r : reports) {
        json j;
        j["id"] = r.id;
        j["params"] = json::object();
        for (const auto& [k, v] : r.params) j["params"][k] = v;
        j["spec"] = r.spec;
        j["index"] = r.index;
        j["pass"] = r.pass;
        j["known_discrepancy"] = r.known_discrepancy;
        if (!r.error.empty()) j["error"] = r.error;
        j["fields"] = json::array();
        for (const auto& f : r.fields)
            j["fields"].push_back({{"name", f.name}, {"expected", f.expected}, {"computed", f.computed}, {"pass", f.pass}});
        out.push_back(j);
    }
    return out.dump(2) + "\n";
}

std::string reports_to_text(const std::vector<CaseReport>& reports, bool color) {
    auto paint = [&](const std::string& s, const char* code) { return color ? std::string("\033[") + code + "m" + s + "\033[0m" : s; };
    std::ostringstream os;
    int pass = 0, known = 0, fail = 0;
    for (const auto& r : reports) {
        std::string tag = r.pass ? paint("PASS ", "32") : r.known_discrepancy ? paint("KNOWN", "33") : paint("FAIL ", "31");
        (r.pass ? pass : r.known_discrepancy ? known : fail)++;
        std::string params;
        for (const auto& [k, v] : r.params) params += (params.empty() ? "" : ",") + k + "=" + std::to_string(v);
        os << tag << "  " << r.id;
        if (!params.empty()) os << " [" << params << "]";
        os << "  " << r.spec << "  I=" << r.index << "\n";
        if (!r.error.empty()) os << "       error: " << r.error << "\n";
        for (const auto& f : r.fields)
            if (!f.pass) os << "       " << f.name << ": expected " << f.expected << "\n       " << std::string(f.name.size(), ' ') << "  computed " << f.computed << "\n";
    }
    os << pass << " passed, " << known << (known == 1 ? " known discrepancy, " : " known discrepancies, ") << fail << " failed\n";
    return os.str();
}

}  // namespace flagsph
