#ifndef AXEL_TOOLS_INSTANCE_HPP
#define AXEL_TOOLS_INSTANCE_HPP

// Translation from instance/variety files (TOML subset) into the library's
// domain objects.  Fields are built left to right: constants, the model
// (base + adjoined exponents), the equation, then solutions (which may
// extend the field through their canonical systems) and exp pairs.

#include <axel/generator.hpp>
#include <axel/parse.hpp>

#include "toml_lite.hpp"

namespace axel::cli {

struct InvalidEigenvalue : std::runtime_error {
    explicit InvalidEigenvalue(const std::string& what) : std::runtime_error(what) {}
};

struct FileError : std::runtime_error {
    explicit FileError(const std::string& what) : std::runtime_error(what) {}
};

// Structured form of an instance file, fully parsed and validated.
struct InstanceData {
    ExpFieldPtr field; // final field after all extensions
    std::optional<Equation> equation;
    std::vector<FieldElement> bases;     // [model] bases, transported
    std::vector<Solution> solutions;     // transported into `field`
    std::vector<ExpInstance> exps;       // parsed in `field`
};

namespace detail {

inline std::vector<std::string> string_array(const toml::Value& v,
                                             const std::string& what) {
    if (v.kind != toml::Value::Kind::Array)
        throw FileError(what + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& e : v.array) {
        if (e.kind != toml::Value::Kind::String)
            throw FileError(what + " must be an array of strings");
        out.push_back(e.str);
    }
    return out;
}

inline RatFunc parse_over(const std::string& src, const VarsPtr& vars) {
    return parse_expression(src, vars);
}

} // namespace detail

inline InstanceData load_instance(const toml::Table& root) {
    InstanceData out;

    std::vector<std::string> symbols;
    if (auto it = root.tables.find("constants"); it != root.tables.end())
        if (it->second.has("symbols"))
            symbols = detail::string_array(it->second.at("symbols"), "symbols");
    std::string base = "t";
    std::vector<std::string> exponents;
    if (auto it = root.tables.find("model"); it != root.tables.end()) {
        if (it->second.has("base")) base = it->second.at("base").str;
        if (it->second.has("exponents"))
            exponents = detail::string_array(it->second.at("exponents"), "exponents");
    }
    ExpFieldPtr f = ExpField::create(symbols, base);
    for (const auto& src : exponents) {
        RatFunc h = detail::parse_over(src, f->vars());
        f = adjoin_exponent(f, nonconstant_part(*f, h)).field;
    }

    if (auto it = root.tables.find("equation"); it != root.tables.end()) {
        auto eit = it->second.arrays.find("eigenvalue");
        if (eit == it->second.arrays.end() || eit->second.empty())
            throw FileError("[equation] requires [[equation.eigenvalue]] entries");
        std::vector<std::pair<RatFunc, int>> eigen;
        for (const auto& row : eit->second) {
            RatFunc val = detail::parse_over(row.at("value").str, f->vars());
            long mult = 1;
            if (row.has("multiplicity")) mult = row.at("multiplicity").integer;
            eigen.emplace_back(val, static_cast<int>(mult));
        }
        try {
            out.equation = make_equation(f->vars(), std::move(eigen));
        } catch (const ZeroEigenvalue&) {
            throw InvalidEigenvalue("eigenvalue 0 is excluded (c_0 != 0)");
        } catch (const DuplicateEigenvalue&) {
            throw InvalidEigenvalue("duplicate eigenvalue; merge multiplicities");
        }
    }

    // a transport chain so earlier objects follow later field extensions
    std::vector<std::function<FieldElement(const FieldElement&)>> steps;
    auto transport_all = [&](const std::function<FieldElement(const FieldElement&)>& in) {
        for (auto& b : out.bases) b = in(b);
        for (auto& sol : out.solutions) {
            sol.x = in(sol.x);
            for (auto& z : sol.z) z = in(z);
        }
    };

    if (auto it = root.tables.find("model"); it != root.tables.end())
        if (it->second.has("bases"))
            for (const auto& src :
                 detail::string_array(it->second.at("bases"), "bases"))
                out.bases.push_back(f->element(detail::parse_over(src, f->vars())));

    if (auto it = root.arrays.find("solution"); it != root.arrays.end()) {
        if (!out.equation) throw FileError("solutions require an [equation]");
        for (const auto& row : it->second) {
            FieldElement x = f->element(detail::parse_over(row.at("x").str, f->vars()));
            if (row.has("coefficients")) {
                FundamentalSystem fs = fundamental_system(*out.equation, x);
                transport_all(fs.into);
                auto coeffs = detail::string_array(row.at("coefficients"), "coefficients");
                if (coeffs.size() != fs.v.size())
                    throw FileError("coefficient count must equal the order");
                f = fs.field;
                FieldElement y = f->element(RatFunc(f->vars()));
                for (std::size_t i = 0; i < coeffs.size(); ++i) {
                    FieldElement a = f->element(detail::parse_over(coeffs[i], f->vars()));
                    if (!a.is_constant())
                        throw FileError("canonical coefficients must be constant");
                    y = y + a * fs.v[i];
                }
                Solution sol;
                sol.x = fs.x;
                sol.z.push_back(y);
                for (std::size_t l = 1; l < out.equation->order(); ++l)
                    sol.z.push_back(partial(fs.x, sol.z.back()));
                out.solutions.push_back(std::move(sol));
            } else if (row.has("z")) {
                Solution sol;
                sol.x = x;
                for (const auto& zsrc : detail::string_array(row.at("z"), "z"))
                    sol.z.push_back(f->element(detail::parse_over(zsrc, f->vars())));
                if (!en_membership(*out.equation, sol))
                    throw NotASolution();
                out.solutions.push_back(std::move(sol));
            } else {
                throw FileError("solution needs 'coefficients' or 'z'");
            }
        }
    }

    if (auto it = root.arrays.find("exp"); it != root.arrays.end())
        for (const auto& row : it->second) {
            FieldElement a = f->element(detail::parse_over(row.at("a").str, f->vars()));
            FieldElement b = f->element(detail::parse_over(row.at("b").str, f->vars()));
            out.exps.push_back({a, b});
        }

    out.field = f;
    return out;
}

// ----- variety files -------------------------------------------------------

struct VarietyData {
    Variety variety;
    std::optional<Equation> equation; // for the E_n commands
    VarsPtr vars;                     // of the parametrized representation
};

inline VarietyData load_variety(const toml::Table& root) {
    auto vit = root.tables.find("variety");
    if (vit == root.tables.end()) throw FileError("missing [variety] section");
    const toml::Table& V = vit->second;
    std::string kind = V.has("kind") ? V.at("kind").str : "parametrized";

    std::vector<std::string> symbols;
    if (auto it = root.tables.find("constants"); it != root.tables.end())
        if (it->second.has("symbols"))
            symbols = detail::string_array(it->second.at("symbols"), "symbols");

    VarietyData out;
    if (kind == "linear-binomial") {
        LinBinVariety L;
        if (!V.has("n")) throw FileError("linear-binomial variety needs n");
        L.n = static_cast<std::size_t>(V.at("n").integer);
        auto read_rows = [&](const char* key) {
            std::vector<std::vector<std::string>> rows;
            if (!V.has(key)) return rows;
            const toml::Value& val = V.at(key);
            if (val.kind != toml::Value::Kind::Array)
                throw FileError(std::string(key) + " must be an array of rows");
            for (const auto& r : val.array)
                rows.push_back(detail::string_array(r, key));
            return rows;
        };
        auto arows = read_rows("a");
        L.A = QMatrix(arows.size(), L.n);
        auto cvars = make_vars({}, {});
        for (std::size_t r = 0; r < arows.size(); ++r) {
            if (arows[r].size() != L.n) throw FileError("row width must equal n");
            for (std::size_t c = 0; c < L.n; ++c) {
                Rational q(arows[r][c]);
                q.canonicalize();
                L.A(r, c) = q;
            }
        }
        auto krows = read_rows("k");
        L.K = ZMatrix(krows.size(), L.n);
        for (std::size_t r = 0; r < krows.size(); ++r) {
            if (krows[r].size() != L.n) throw FileError("row width must equal n");
            for (std::size_t c = 0; c < L.n; ++c)
                L.K(r, c) = Integer(krows[r][c]);
        }
        out.variety = std::move(L);
        return out;
    }
    if (kind != "parametrized") throw FileError("unknown variety kind: " + kind);

    ParamVariety P;
    std::vector<std::string> params = detail::string_array(V.at("params"), "params");
    std::vector<std::string> names = symbols;
    std::vector<VarKind> kinds(symbols.size(), VarKind::Constant);
    names.push_back("t");
    kinds.push_back(VarKind::Base);
    for (const auto& p : params) {
        names.push_back(p);
        kinds.push_back(VarKind::Param);
    }
    P.vars = make_vars(std::move(names), std::move(kinds));
    for (std::size_t i = 0; i < P.vars->size(); ++i)
        if (P.vars->kinds[i] == VarKind::Param) P.params.push_back(i);

    std::string ambient = V.has("ambient") ? V.at("ambient").str : "gn";
    for (const auto& src : detail::string_array(V.at("x"), "x"))
        P.xs.push_back(detail::parse_over(src, P.vars));
    if (ambient == "gn") {
        P.ambient = Ambient::Gn;
        for (const auto& src : detail::string_array(V.at("y"), "y"))
            P.ys.push_back(detail::parse_over(src, P.vars));
        if (P.ys.size() != P.xs.size())
            throw FileError("x and y must have the same length");
    } else if (ambient == "en") {
        P.ambient = Ambient::EnSpace;
        const toml::Value& zv = V.at("z");
        if (zv.kind != toml::Value::Kind::Array)
            throw FileError("z must be an array of blocks");
        for (const auto& blk : zv.array) {
            std::vector<RatFunc> block;
            for (const auto& src : detail::string_array(blk, "z block"))
                block.push_back(detail::parse_over(src, P.vars));
            if (block.size() != P.xs.size())
                throw FileError("every z block must match the x length");
            P.zs.push_back(std::move(block));
        }
    } else {
        throw FileError("unknown ambient: " + ambient);
    }
    out.vars = P.vars;

    if (auto it = root.tables.find("equation"); it != root.tables.end()) {
        auto eit = it->second.arrays.find("eigenvalue");
        if (eit == it->second.arrays.end() || eit->second.empty())
            throw FileError("[equation] requires [[equation.eigenvalue]] entries");
        std::vector<std::pair<RatFunc, int>> eigen;
        for (const auto& row : eit->second) {
            RatFunc val = detail::parse_over(row.at("value").str, P.vars);
            long mult = row.has("multiplicity") ? row.at("multiplicity").integer : 1;
            eigen.emplace_back(val, static_cast<int>(mult));
        }
        try {
            out.equation = make_equation(P.vars, std::move(eigen));
        } catch (const ZeroEigenvalue&) {
            throw InvalidEigenvalue("eigenvalue 0 is excluded (c_0 != 0)");
        } catch (const DuplicateEigenvalue&) {
            throw InvalidEigenvalue("duplicate eigenvalue; merge multiplicities");
        }
    }
    out.variety = std::move(P);
    return out;
}

} // namespace axel::cli

#endif
