// Batch front end: parses instance/variety files, runs the verifiers and
// checkers, and emits deterministic JSON reports.
//
// Exit codes: 0 verdict holds, 2 verdict violated, 1 usage/parse/input error.

#include <CLI11.hpp>
#include <json.hpp>

#include "instance.hpp"
#include "sha256.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using nlohmann::json;
using namespace axel;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw cli::FileError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json rational_rows(const std::vector<std::vector<Rational>>& rows) {
    json out = json::array();
    for (const auto& r : rows) {
        json row = json::array();
        for (const auto& q : r) row.push_back(q.get_str());
        out.push_back(row);
    }
    return out;
}

json zmatrix_rows(const ZMatrix& m) {
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).get_str());
        out.push_back(row);
    }
    return out;
}

json matrix_strings(const ExactMatrix& m) {
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
        out.push_back(row);
    }
    return out;
}

const char* tri_name(Tri t) {
    switch (t) {
        case Tri::Yes: return "yes";
        case Tri::No: return "no";
        default: return "unknown";
    }
}

json rotundity_json(const RotundityVerdict& r) {
    json out;
    out["rotund"] = r.rotund;
    out["strong"] = r.strong;
    out["bound"] = r.bound;
    out["matricesChecked"] = r.matrices_checked;
    if (r.violating) {
        out["violatingMatrix"] = zmatrix_rows(*r.violating);
        out["violatingDim"] = r.violating_dim;
        out["violatingRank"] = r.violating_rank;
    }
    return out;
}

struct CommandResult {
    bool holds = true;
    json payload;
};

FGStructure structure_of(const cli::InstanceData& d) {
    return make_fg(d.field, {}, d.exps, d.solutions, d.equation);
}

// ----- per-command dispatch ------------------------------------------------

CommandResult run_fundamental(const cli::InstanceData& d) {
    if (!d.equation) throw cli::FileError("fundamental requires an [equation]");
    std::vector<FieldElement> xs = d.bases;
    for (const auto& sol : d.solutions) xs.push_back(sol.x);
    if (xs.empty()) throw cli::FileError("fundamental needs [model] bases or solutions");
    CommandResult res;
    res.payload["systems"] = json::array();
    for (const auto& x : xs) {
        FundamentalSystem fs = fundamental_system(*d.equation, x);
        json item;
        item["x"] = fs.x.str();
        json basis = json::array();
        for (const auto& v : fs.v) basis.push_back(v.str());
        item["basis"] = basis;
        item["H"] = matrix_strings(fs.H);
        item["L"] = matrix_strings(fs.L);
        item["wronskian"] = fs.wronskian.str();
        res.payload["systems"].push_back(std::move(item));
    }
    return res;
}

CommandResult run_proper(const cli::InstanceData& d) {
    if (!d.equation) throw cli::FileError("proper requires an [equation]");
    if (d.solutions.empty()) throw cli::FileError("proper needs solutions");
    CommandResult res;
    res.payload["solutions"] = json::array();
    for (const auto& sol : d.solutions) {
        FundamentalSystem fs = fundamental_system(*d.equation, sol.x);
        bool p = is_proper(*d.equation, fs, fs.into(sol.z[0]));
        res.payload["solutions"].push_back(
            json{{"x", sol.x.str()}, {"y", sol.z[0].str()}, {"proper", p}});
        if (!p) res.holds = false;
    }
    return res;
}

CommandResult run_decompose(const cli::InstanceData& d) {
    if (!d.equation) throw cli::FileError("decompose requires an [equation]");
    if (d.solutions.empty()) throw cli::FileError("decompose needs solutions");
    CommandResult res;
    res.payload["solutions"] = json::array();
    for (const auto& sol : d.solutions) {
        FundamentalSystem fs = fundamental_system(*d.equation, sol.x);
        Decomposition dec = decompose(*d.equation, fs, fs.into(sol.z[0]));
        json coeffs = json::array();
        for (const auto& a : dec.a) coeffs.push_back(a.str());
        res.payload["solutions"].push_back(
            json{{"x", sol.x.str()},
                 {"coefficients", coeffs},
                 {"epsilon", dec.epsilon}});
    }
    return res;
}

CommandResult run_epsilon(const cli::InstanceData& d) {
    FGStructure S = structure_of(d);
    SigmaReport r = epsilon_sigma_en(S);
    CommandResult res;
    res.payload["sigma"] = r.sigma;
    res.payload["relations"] = rational_rows(r.relations);
    return res;
}

CommandResult run_delta(const cli::InstanceData& d) {
    FGStructure S = structure_of(d);
    CommandResult res;
    PredimReport e = delta_exp(S);
    res.payload["exp"] = json{{"td", e.td},
                              {"sigma", e.sigma},
                              {"delta", e.delta},
                              {"witness", rational_rows(e.witness)}};
    if (!S.en_instances.empty()) {
        PredimReport n = delta_en(S);
        res.payload["en"] = json{{"td", n.td},
                                 {"sigma", n.sigma},
                                 {"delta", n.delta},
                                 {"witness", rational_rows(n.witness)}};
    }
    return res;
}

CommandResult run_verify_as(const cli::InstanceData& d) {
    FGStructure S = structure_of(d);
    ASReport r = verify_AS(S);
    CommandResult res;
    res.payload = json{{"td", r.td},
                       {"ldim", r.ldim},
                       {"margin", r.margin},
                       {"holds", r.holds},
                       {"vacuous", r.vacuous},
                       {"relations", rational_rows(r.relations)}};
    res.holds = r.holds;
    return res;
}

CommandResult run_verify_as_n(const cli::InstanceData& d, const std::string& mode) {
    if (!d.equation) throw cli::FileError("verify-as-n requires an [equation]");
    HigherMode m = mode == "epsilon" ? HigherMode::Epsilon : HigherMode::Proper;
    ASHigherReport r = verify_AS_higher(*d.equation, d.solutions, m);
    CommandResult res;
    res.payload = json{{"lhs", r.lhs},
                       {"rhs", r.rhs},
                       {"margin", static_cast<long>(r.lhs) - static_cast<long>(r.rhs)},
                       {"holds", r.holds},
                       {"vacuous", r.vacuous},
                       {"mode", mode}};
    res.holds = r.holds;
    return res;
}

CommandResult run_sigma_eq(const cli::InstanceData& d) {
    if (!d.equation) throw cli::FileError("sigma-eq requires an [equation]");
    if (d.exps.empty()) throw cli::FileError("sigma-eq needs [[exp]] pairs");
    std::vector<Solution> lifts;
    for (const auto& inst : d.exps)
        lifts.push_back(en_lift_of_exp(*d.equation, inst));
    FGStructure S = make_fg(d.field, {}, d.exps, std::move(lifts), d.equation);
    CommandResult res;
    std::size_t se = sigma_exp(S).sigma, sn = epsilon_sigma_en(S).sigma;
    res.payload = json{{"sigmaExp", se}, {"sigmaEn", sn}, {"equal", se == sn}};
    res.holds = se == sn;
    return res;
}

CommandResult run_lift(const cli::InstanceData& d) {
    if (!d.equation) throw cli::FileError("lift requires an [equation]");
    if (d.exps.empty()) throw cli::FileError("lift needs [[exp]] pairs");
    std::vector<Solution> sols = lift_exp_point(*d.equation, d.exps);
    CommandResult res;
    res.payload["solutions"] = json::array();
    for (const auto& sol : sols) {
        json zs = json::array();
        for (const auto& z : sol.z) zs.push_back(z.str());
        res.payload["solutions"].push_back(json{{"x", sol.x.str()}, {"z", zs}});
    }
    return res;
}

CommandResult run_axioms(const cli::InstanceData& d) {
    FGStructure S = structure_of(d);
    AxiomReport r = validate_axioms(S);
    CommandResult res;
    res.payload = json{{"closure", r.closure_ok},
                       {"fiber", r.fiber_ok},
                       {"reconstruction", r.reconstruction_ok},
                       {"notes", r.notes}};
    res.holds = r.closure_ok && r.fiber_ok && r.reconstruction_ok;
    return res;
}

CommandResult run_rotund(const cli::VarietyData& d, int bound, bool strong) {
    RotundityVerdict r = check_exp_rotund(d.variety, bound, strong);
    CommandResult res;
    res.payload = rotundity_json(r);
    res.holds = r.rotund;
    return res;
}

CommandResult run_en_rotund(const cli::VarietyData& d, int bound, bool strong) {
    if (!d.equation) throw cli::FileError("en-rotund requires an [equation]");
    if (!std::holds_alternative<ParamVariety>(d.variety))
        throw cli::FileError("en-rotund needs a parametrized variety in the E_n space");
    const ParamVariety& P = std::get<ParamVariety>(d.variety);
    if (P.ambient != Ambient::EnSpace)
        throw cli::FileError("en-rotund needs ambient = \"en\"");
    EnRotund5Verdict r = check_en_rotund(*d.equation, P, bound, strong);
    CommandResult res;
    res.payload["prime"] = rotundity_json(r.prime);
    res.payload["closure"] = tri_name(r.closure);
    res.payload["verdict"] = r.verdict();
    res.holds = r.verdict();
    return res;
}

json free_json(const FreeVerdict& r) {
    json out;
    out["free"] = r.free;
    if (r.additive_relation) {
        json rel = json::array();
        for (const auto& q : *r.additive_relation) rel.push_back(q.get_str());
        out["additiveRelation"] = rel;
    }
    if (r.multiplicative_relation) {
        json rel = json::array();
        for (const auto& q : *r.multiplicative_relation) rel.push_back(q.get_str());
        out["multiplicativeRelation"] = rel;
    }
    return out;
}

CommandResult run_free(const cli::VarietyData& d) {
    FreeVerdict r = check_exp_free(d.variety);
    CommandResult res;
    res.payload = free_json(r);
    res.holds = r.free;
    return res;
}

CommandResult run_en_free(const cli::VarietyData& d) {
    if (!d.equation) throw cli::FileError("en-free requires an [equation]");
    if (!std::holds_alternative<ParamVariety>(d.variety))
        throw cli::FileError("en-free needs a parametrized variety in the E_n space");
    const ParamVariety& P = std::get<ParamVariety>(d.variety);
    if (P.ambient != Ambient::EnSpace)
        throw cli::FileError("en-free needs ambient = \"en\"");
    FreeVerdict r = check_en_free(*d.equation, P);
    CommandResult res;
    res.payload = free_json(r);
    res.holds = r.free;
    return res;
}

// ----- selftest ------------------------------------------------------------

struct SelfCase {
    const char* name;
    const char* command;
    const char* text;
    bool expect_holds;
};

const SelfCase kSelfCases[] = {
    {"exp-margin-zero", "verify-as",
     "[constants]\nsymbols = [\"s\"]\n[model]\nexponents = [\"t\"]\n"
     "[[exp]]\na = \"t\"\nb = \"u1\"\n",
     true},
    {"proper-two-blocks", "proper",
     "[constants]\nsymbols = [\"s\"]\n[model]\nexponents = [\"t\"]\n[equation]\n"
     "[[equation.eigenvalue]]\nvalue = \"1\"\nmultiplicity = 1\n"
     "[[equation.eigenvalue]]\nvalue = \"-1\"\nmultiplicity = 1\n"
     "[[solution]]\nx = \"t\"\ncoefficients = [\"1\", \"1\"]\n",
     true},
    {"improper-one-block", "proper",
     "[constants]\nsymbols = [\"s\"]\n[model]\nexponents = [\"t\"]\n[equation]\n"
     "[[equation.eigenvalue]]\nvalue = \"1\"\nmultiplicity = 1\n"
     "[[equation.eigenvalue]]\nvalue = \"-1\"\nmultiplicity = 1\n"
     "[[solution]]\nx = \"t\"\ncoefficients = [\"1\", \"0\"]\n",
     false},
    {"diagonal-surface-rotund", "rotund",
     "[variety]\nkind = \"parametrized\"\nambient = \"gn\"\nparams = [\"w1\"]\n"
     "x = [\"w1\"]\ny = [\"w1\"]\n",
     true},
    {"sigma-eq-order-two", "sigma-eq",
     "[constants]\nsymbols = [\"s\"]\n[model]\nexponents = [\"t\"]\n[equation]\n"
     "[[equation.eigenvalue]]\nvalue = \"1\"\nmultiplicity = 2\n"
     "[[exp]]\na = \"t\"\nb = \"u1\"\n",
     true},
};

CommandResult dispatch(const std::string& command, const std::string& text, int bound,
                       bool strong, const std::string& mode);

CommandResult run_selftest() {
    CommandResult res;
    res.payload["cases"] = json::array();
    for (const auto& c : kSelfCases) {
        CommandResult r = dispatch(c.command, c.text, 3, false, "proper");
        bool ok = r.holds == c.expect_holds;
        res.payload["cases"].push_back(
            json{{"name", c.name}, {"command", c.command}, {"ok", ok}});
        if (!ok) res.holds = false;
    }
    return res;
}

CommandResult dispatch(const std::string& command, const std::string& text, int bound,
                       bool strong, const std::string& mode) {
    if (command == "selftest") return run_selftest();
    if (command == "rotund" || command == "en-rotund" || command == "free" ||
        command == "en-free") {
        cli::VarietyData d = cli::load_variety(toml::parse(text));
        if (command == "rotund") return run_rotund(d, bound, strong);
        if (command == "en-rotund") return run_en_rotund(d, bound, strong);
        if (command == "free") return run_free(d);
        return run_en_free(d);
    }
    cli::InstanceData d = cli::load_instance(toml::parse(text));
    if (command == "fundamental") return run_fundamental(d);
    if (command == "proper") return run_proper(d);
    if (command == "decompose") return run_decompose(d);
    if (command == "epsilon") return run_epsilon(d);
    if (command == "delta") return run_delta(d);
    if (command == "verify-as") return run_verify_as(d);
    if (command == "verify-as-n") return run_verify_as_n(d, mode);
    if (command == "sigma-eq") return run_sigma_eq(d);
    if (command == "lift") return run_lift(d);
    if (command == "axioms") return run_axioms(d);
    throw cli::FileError("unknown command: " + command);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verifiers for exponential-polynomial differential fields"};
    app.require_subcommand(1);

    std::string file, json_out, mode = "proper";
    int bound = 3;
    bool strong = false;
    long seed = 0;

    std::vector<std::string> commands = {"fundamental", "proper",      "decompose",
                                         "epsilon",     "delta",       "verify-as",
                                         "verify-as-n", "sigma-eq",    "rotund",
                                         "en-rotund",   "free",        "en-free",
                                         "lift",        "axioms",      "selftest"};
    for (const auto& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        if (name != "selftest")
            sub->add_option("file", file, "instance or variety file")->required();
        sub->add_option("--bound", bound, "entry bound for matrix enumeration");
        sub->add_flag("--strong", strong, "strong rotundity");
        sub->add_option("--mode", mode, "proper|epsilon")
            ->check(CLI::IsMember({"proper", "epsilon"}));
        sub->add_option("--seed", seed, "seed recorded in the report");
        sub->add_option("--json", json_out, "also write the report to this path");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    std::string command = app.get_subcommands().front()->get_name();
    json report;
    report["version"] = kVersion;
    report["command"] = command;
    report["seed"] = seed;

    int exit_code = 0;
    try {
        std::string text;
        if (command == "selftest") {
            for (const auto& c : kSelfCases) text += c.text;
        } else {
            text = read_file(file);
        }
        report["inputDigest"] = digest::sha256_hex(text);
        CommandResult res = dispatch(command, text, bound, strong, mode);
        report["payload"] = std::move(res.payload);
        report["verdict"] = res.holds ? "holds" : "violated";
        exit_code = res.holds ? 0 : 2;
    } catch (const ASViolation& e) {
        report["verdict"] = "violated";
        report["payload"] = json{{"diagnostic", e.what()}};
        exit_code = 2;
    } catch (const NotProper& e) {
        report["verdict"] = "violated";
        report["payload"] = json{{"diagnostic", e.what()}};
        exit_code = 2;
    } catch (const NotASolution& e) {
        report["verdict"] = "violated";
        report["payload"] = json{{"diagnostic", e.what()}};
        exit_code = 2;
    } catch (const NotExpPoint& e) {
        report["verdict"] = "violated";
        report["payload"] = json{{"diagnostic", e.what()}};
        exit_code = 2;
    } catch (const ParseError& e) {
        report["verdict"] = "error";
        report["payload"] =
            json{{"diagnostic", e.what()}, {"line", e.line}, {"column", e.column}};
        exit_code = 1;
    } catch (const toml::TomlError& e) {
        report["verdict"] = "error";
        report["payload"] = json{{"diagnostic", e.what()}, {"line", e.line}};
        exit_code = 1;
    } catch (const std::exception& e) {
        report["verdict"] = "error";
        report["payload"] = json{{"diagnostic", e.what()}};
        exit_code = 1;
    }

    if (!report.count("inputDigest")) report["inputDigest"] = "";
    std::string serialized = report.dump(2) + "\n";
    std::cout << serialized;
    if (!json_out.empty()) {
        std::ofstream out(json_out, std::ios::binary);
        out << serialized;
    }
    return exit_code;
}
