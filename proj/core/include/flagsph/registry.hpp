#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "flagsph/orbits.hpp"

namespace flagsph {

using Params = std::map<std::string, std::int64_t>;

// Integer expressions over named parameters: + - * / % (floor division),
// comparisons, && || !, parentheses, and min(a,b), max(a,b), delta(a,b).
std::int64_t eval_int(const std::string& expr, const Params& vars);
// Replaces every ${expr} in a template by its value.
std::string substitute(const std::string& tmpl, const Params& vars);

struct GeneratorTemplate {
    std::string lambda;
    std::string mu;
    std::string when;   // optional side condition
    std::string var;    // optional range variable with bounds [from, to]
    std::string from;
    std::string to;
};

enum class CaseKind { Flag, WeightMonoid };

struct CaseRecord {
    std::string id;
    std::string family;
    CaseKind kind = CaseKind::Flag;
    std::string spec;   // pair spec template
    std::string index;  // comma separated index template
    std::vector<std::string> params;
    std::map<std::string, std::string> derived;  // name -> expression
    std::string valid;                           // parameter range condition
    std::vector<Params> samples;
    bool expect_spherical = true;
    bool dimension_shortcut = false;  // expect dim B_H < dim X_I
    std::string rank;                 // expression; empty when not recorded
    bool check_generators = false;
    std::vector<GeneratorTemplate> generators;
    std::string discrepancy;  // documented disagreement with the generator list
    std::string note;
};

struct Registry {
    std::vector<CaseRecord> cases;
    const CaseRecord& find(const std::string& id) const;
};

Registry parse_registry(const std::string& json_text);
Registry load_registry(const std::string& path);
const Registry& builtin_registry();

struct FieldResult {
    std::string name;
    std::string expected;
    std::string computed;
    bool pass = false;
};

struct CaseReport {
    std::string id;
    Params params;
    std::string spec;
    std::string index;
    std::vector<FieldResult> fields;
    bool pass = false;
    bool known_discrepancy = false;  // the only failing field is a documented discrepancy
    std::string error;
    double seconds = 0;
};

struct VerifyOptions {
    std::uint64_t seed = 0;
    int trials = 8;
    int degree_bound = 4;
};

// Fills derived parameters and checks the range condition.
Params instantiate(const CaseRecord& c, const Params& given);

CaseReport verify_case(const CaseRecord& c, const Params& params, const VerifyOptions& opt = {});
CaseReport verify_case(const std::string& id, const Params& params, const VerifyOptions& opt = {});
// Every sample of every case. Cases are independent, so each one uses the master seed as is.
std::vector<CaseReport> verify_all(const Registry& r, const VerifyOptions& opt = {});

struct MinimalReport {
    GroupKind group;
    std::vector<std::string> expected;  // one entry per minimal class
    std::vector<std::string> computed;
    bool pass = false;
};

MinimalReport verify_minimal_elements(const GroupKind& g);

struct DescentReport {
    std::string spec;
    int classes = 0;
    int spherical_classes = 0;
    int pairs_checked = 0;
    std::vector<std::string> violations;
    bool pass = false;
};

// For every pair of comparable nil-equivalence classes with the larger one
// spherical, the smaller one must be spherical too. Members of one class must agree.
DescentReport verify_descent(const std::string& spec, const VerifyOptions& opt = {});

std::string reports_to_json(const std::vector<CaseReport>& reports);
std::string reports_to_text(const std::vector<CaseReport>& reports, bool color = false);

}  // namespace flagsph
