// One line per acceptance criterion. Exit status is the number of failures.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "flagsph/branching.hpp"
#include "flagsph/embeddings.hpp"
#include "flagsph/orbits.hpp"
#include "flagsph/partitions.hpp"
#include "flagsph/registry.hpp"
#include "oracles.hpp"

using namespace flagsph;

namespace {

// time limits, seconds
constexpr double kCollapseLimit = 30;
constexpr double kMinimalLimitEach = 10;
constexpr double kCorpusLimit = 300;
constexpr double kGeneratorLimit = 300;
constexpr double kMatrixLimit = 5;
constexpr std::uint64_t kSeed = 0;
constexpr int kTrials = 8;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string secs(double s) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f s", s);
    return buf;
}

int failures = 0;

void report(int n, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] %2d %s: %s\n", ok ? "PASS" : "FAIL", n, name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

const FieldResult* field(const CaseReport& r, const std::string& name) {
    for (const auto& f : r.fields)
        if (f.name == name) return &f;
    return nullptr;
}

std::string label(const CaseReport& r) {
    std::string s = r.id;
    for (const auto& [k, v] : r.params) s += " " + k + "=" + std::to_string(v);
    return s;
}

bool is_rejection(const CaseRecord& c) { return starts_with(c.id, "reject"); }
bool is_line(const CaseRecord& c) { return c.kind == CaseKind::WeightMonoid; }

// rows whose generator sets are compared exactly: six G2 and Spin7 rows, three
// Levi-free rows and the symplectic family at m = 1, 2
bool generator_row(const CaseReport& r) {
    if (starts_with(r.id, "g2-so7/") || starts_with(r.id, "spin7-so9/")) return true;
    if (r.id == "g2-f1-so8/I=4" || r.id == "spin7-f1f1-so10/I=5" || r.id == "spin7-gl1-so10/I=2") return true;
    if (r.id == "sp-sp2m-sl2-sl2/I=n") return r.params.at("m") <= 2;
    return false;
}

void collapse_oracle() {
    auto t0 = Clock::now();
    long checked = 0, wrong = 0;
    std::string first;
    for (int d = 1; d <= 12; ++d)
        for (int eps : {-1, 1}) {
            if (eps == -1 && d % 2) continue;  // no symplectic form in odd dimension
            for (const auto& a : oracle::partitions(d)) {
                auto got = collapse(make_partition(a), ParityClass(eps)).parts;
                ++checked;
                if (got != oracle::collapse(a, eps) && wrong++ == 0)
                    first = make_partition(a).str() + " eps " + std::to_string(eps);
            }
        }
    double s = since(t0);
    std::ostringstream o;
    o << checked << " partitions, " << wrong << " mismatches";
    if (wrong) o << " (first " << first << ")";
    o << ", " << secs(s);
    report(1, "collapse oracle equivalence", wrong == 0 && s < kCollapseLimit, o.str());
}

void minimal_table() {
    std::vector<GroupKind> groups;
    for (int n = 2; n <= 5; ++n) groups.emplace_back(Kind::Symplectic, 2 * n);
    for (int k = 2; k <= 5; ++k) groups.emplace_back(Kind::Orthogonal, 2 * k + 1);
    for (int d : {10, 14, 8, 12}) groups.emplace_back(Kind::Orthogonal, d);
    bool ok = true;
    double worst = 0;
    std::string bad;
    for (const auto& g : groups) {
        auto t0 = Clock::now();
        MinimalReport r = verify_minimal_elements(g);
        double s = since(t0);
        worst = std::max(worst, s);
        if (!r.pass || s >= kMinimalLimitEach) {
            ok = false;
            bad += " " + g.str();
        }
    }
    std::ostringstream o;
    o << groups.size() << " groups";
    if (!ok) o << ", wrong:" << bad;
    o << ", slowest " << secs(worst);
    report(2, "minimal classes", ok, o.str());
}

std::set<std::string> class_of(const GroupKind& g, const FlagDescriptor& f) {
    for (const auto& c : flag_poset(g).classes)
        for (const auto& m : c.members)
            if (flag_to_index_set(m) == flag_to_index_set(f)) {
                std::set<std::string> out;
                for (const auto& x : c.members) out.insert(x.str());
                return out;
            }
    return {};
}

void class_contents() {
    using S = std::set<std::string>;
    GroupKind sp4(Kind::Symplectic, 4), so5(Kind::Orthogonal, 5), so6(Kind::Orthogonal, 6), so8(Kind::Orthogonal, 8),
        so10(Kind::Orthogonal, 10);
    std::vector<std::tuple<GroupKind, FlagDescriptor, S>> rows{
        {sp4, make_flag(sp4, {1, 2, 1}), S{"(1,2,1)", "(2,2)"}},
        {so5, make_flag(so5, {1, 3, 1}), S{"(1,3,1)", "(2,1,2)"}},
        {so6, make_flag(so6, {2, 2, 2}), S{"(2,2,2)", "(1,2,2,1)+", "(1,2,2,1)-"}},
        {so8, make_flag(so8, {2, 4, 2}), S{"(2,4,2)", "(3,2,3)", "(1,3,3,1)+", "(1,3,3,1)-"}},
        {so10, make_flag(so10, {2, 6, 2}), S{"(2,6,2)"}},
    };
    int good = 0;
    std::string bad;
    for (const auto& [g, f, want] : rows) {
        if (class_of(g, f) == want)
            ++good;
        else
            bad += " " + g.str() + " " + f.str();
    }
    std::ostringstream o;
    o << good << "/" << rows.size() << " classes exact";
    if (!bad.empty()) o << ", wrong:" << bad;
    report(3, "class contents", good == static_cast<int>(rows.size()), o.str());
}

void corpus(const std::vector<CaseReport>& reports, double seconds) {
    const Registry& reg = builtin_registry();
    int cases = 0, rejections = 0;
    std::string bad;
    for (const auto& r : reports) {
        const CaseRecord& c = reg.find(r.id);
        if (is_line(c)) continue;
        ++cases;
        if (is_rejection(c)) ++rejections;
        const FieldResult* v = field(r, "verdict");
        if (!r.error.empty() || !v || !v->pass) bad += " " + label(r);
    }
    std::ostringstream o;
    o << cases << " instances, " << rejections << " rejections, seed " << kSeed << ", trials " << kTrials << ", " << secs(seconds);
    if (!bad.empty()) o << ", wrong verdict:" << bad;
    report(4, "sphericity corpus", bad.empty() && rejections >= 10 && seconds < kCorpusLimit, o.str());
}

void ranks(const std::vector<CaseReport>& reports) {
    const Registry& reg = builtin_registry();
    int checked = 0;
    std::string bad;
    for (const auto& r : reports) {
        const CaseRecord& c = reg.find(r.id);
        if (is_line(c) || !c.expect_spherical || c.rank.empty()) continue;
        ++checked;
        bool ok = true;
        for (auto name : {"rank", "|I| + flag rank", "generator count"}) {
            const FieldResult* f = field(r, name);
            if (!f || !f->pass) ok = false;
        }
        if (!ok) bad += " " + label(r);
    }
    std::ostringstream o;
    o << checked << " spherical instances";
    if (!bad.empty()) o << ", mismatch:" << bad;
    report(5, "rank formula", bad.empty() && checked > 0, o.str());
}

void generators(const std::vector<CaseReport>& reports, double seconds) {
    int rows = 0;
    std::string bad;
    for (const auto& r : reports) {
        if (!generator_row(r)) continue;
        ++rows;
        const FieldResult* f = field(r, "generators");
        if (!f || !f->pass) bad += " " + label(r);
    }
    // the (m >= 2) side condition on (pi_n; pi_{m-2})
    auto gens_at = [&](int m) -> std::string {
        for (const auto& r : reports)
            if (r.id == "sp-sp2m-sl2-sl2/I=n" && r.params.at("m") == m) return field(r, "generators")->computed;
        return {};
    };
    bool side = gens_at(1).find("(pi3; 0)") == std::string::npos && gens_at(2).find("(pi4; 0)") != std::string::npos;
    std::ostringstream o;
    o << rows << " rows, side condition " << (side ? "respected" : "violated") << ", " << secs(seconds);
    if (!bad.empty()) o << ", differ:" << bad;
    report(6, "generator sets", bad.empty() && side && rows == 11 && seconds < kGeneratorLimit, o.str());
}

void conservation(const std::vector<CaseReport>& reports) {
    int rows = 0;
    std::string bad;
    for (const auto& r : reports) {
        if (!generator_row(r)) continue;
        ++rows;
        const FieldResult* f = field(r, "dimension conservation");
        if (!f || !f->pass) bad += " " + label(r);
    }
    std::ostringstream o;
    o << rows << " rows";
    if (!bad.empty()) o << ", broken:" << bad;
    report(7, "dimension conservation", bad.empty() && rows > 0, o.str());
}

bool has_note(const BranchingMonoid& m, const std::string& prefix) {
    return std::any_of(m.notes.begin(), m.notes.end(), [&](const std::string& n) { return starts_with(n, prefix); });
}

void lines(const std::vector<CaseReport>& reports) {
    int agree = 0, total = 0;
    std::string bad;
    for (const auto& r : reports) {
        if (!starts_with(r.id, "lines/")) continue;
        ++total;
        const FieldResult* f = field(r, "weight monoid route");
        if (f && f->pass)
            ++agree;
        else
            bad += " " + r.id;
    }
    bool two_delta = has_note(rbm_via_weight_monoid(build_subalgebra("so(7): so(7) : F7")), "dropped 2delta");
    bool coincide =
        has_note(rbm_via_weight_monoid(build_subalgebra("so(7): so(4)*so(3) : F4@1+F3@2")), "coincident image (2*pi1; 0)");
    std::ostringstream o;
    o << agree << "/" << total << " agree, 2delta removal " << (two_delta ? "seen" : "missing") << ", (2*pi1; 0) coincidence "
      << (coincide ? "seen" : "missing");
    if (!bad.empty()) o << ", differ:" << bad;
    report(8, "weight monoid route for I={1}", bad.empty() && total >= 3 && two_delta && coincide, o.str());
}

oracle::Matrix to_oracle(const QMat& m) { return {m.rows, m.a}; }

void matrices() {
    auto t0 = Clock::now();
    auto check = [](const EmbeddedSubgroup& e, int dim, int lower) {
        std::vector<oracle::Matrix> ms;
        for (const auto& g : e.gens) ms.push_back(to_oracle(g));
        return oracle::span_dim(ms) == dim && oracle::bracket_closed(ms) &&
               oracle::preserves_form(ms, to_oracle(e.g.form)) && oracle::lower_part_dim(ms) == lower;
    };
    EmbeddedSubgroup g2 = g2_in_so7();
    bool g2_ok = check(g2, 14, 8);
    bool spin_ok = check(spin7_in_so8(Sign::Plus), 21, 12) && check(spin7_in_so8(Sign::Minus), 21, 12);
    std::set<std::string> got;
    std::int64_t mult = 0;
    for (const auto& [mu, m] : restrict_irrep(g2, parse_weight(g2.g_reductive(), "pi3"))) {
        got.insert(format_weight(g2.htype, mu));
        mult += m;
    }
    bool restr = got == std::set<std::string>{"pi1", "0"} && mult == 2;
    double s = since(t0);
    std::ostringstream o;
    o << "g2 " << (g2_ok ? "ok" : "wrong") << ", spin7 " << (spin_ok ? "ok" : "wrong") << ", pi3 restricts to {";
    bool first = true;
    for (const auto& w : got) o << (first ? "" : ", ") << w, first = false;
    o << "}, " << secs(s);
    report(9, "explicit matrices", g2_ok && spin_ok && restr && s < kMatrixLimit, o.str());
}

void witness() {
    EmbeddedSubgroup e = g2_in_so7();
    MultiplicityWitness w = find_multiplicity_witness(e, {1, 2, 3}, 3);
    std::ostringstream o;
    if (w.found)
        o << "R(" << format_weight(e.g_reductive(), w.lambda) << ") contains R(" << format_weight(e.htype, w.mu)
          << ") with multiplicity " << w.multiplicity;
    else
        o << "none within coefficient sum 3";
    report(10, "multiplicity witness", w.found && w.multiplicity >= 2, o.str());
}

}  // namespace

int main() {
    collapse_oracle();
    minimal_table();
    class_contents();

    VerifyOptions opt;
    opt.seed = kSeed;
    opt.trials = kTrials;
    std::vector<CaseReport> reports;
    double seconds = 0;
    try {
        auto t0 = Clock::now();
        reports = verify_all(builtin_registry(), opt);
        seconds = since(t0);
    } catch (const std::exception& ex) {
        std::printf("registry: %s\n", ex.what());
    }
    corpus(reports, seconds);
    ranks(reports);
    generators(reports, seconds);
    conservation(reports);
    lines(reports);
    matrices();
    witness();
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
