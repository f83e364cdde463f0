#ifndef AXEL_PREDIMENSION_HPP
#define AXEL_PREDIMENSION_HPP

#include <axel/transcendence.hpp>

#include <functional>
#include <optional>

namespace axel {

struct ASViolation : std::runtime_error {
    explicit ASViolation(const std::string& m) : std::runtime_error(m) {}
};
struct NotProper : std::runtime_error {
    NotProper() : std::runtime_error("solution is not proper") {}
};
struct NotSubpresentation : std::runtime_error {
    NotSubpresentation() : std::runtime_error("not a sub-presentation") {}
};

struct ExpInstance {
    FieldElement a, b;
};

// A finitely presented structure: declared generators plus declared
// exponential / E_n instances inside one concrete field.
struct FGStructure {
    ExpFieldPtr field;
    std::vector<FieldElement> generators;
    std::vector<ExpInstance> exp_instances;
    std::vector<Solution> en_instances;
    std::optional<Equation> equation; // present in E_n mode
};

// Checked constructor: every exp pair satisfies D b = b D a, every en
// instance passes en_membership against the equation.
inline FGStructure make_fg(ExpFieldPtr field, std::vector<FieldElement> generators,
                           std::vector<ExpInstance> exp_instances,
                           std::vector<Solution> en_instances = {},
                           std::optional<Equation> equation = std::nullopt) {
    for (const auto& [a, b] : exp_instances)
        if (derive(b) != b * derive(a))
            throw std::invalid_argument("declared pair is not an exp instance");
    if (!en_instances.empty() && !equation)
        throw std::invalid_argument("en instances require an equation");
    for (const auto& sol : en_instances)
        if (!en_membership(*equation, sol))
            throw std::invalid_argument("declared tuple is not an en instance");
    return FGStructure{std::move(field), std::move(generators), std::move(exp_instances),
                       std::move(en_instances), std::move(equation)};
}

// All field elements mentioned by the presentation.
inline std::vector<FieldElement> presented_elements(const FGStructure& S) {
    std::vector<FieldElement> out = S.generators;
    for (const auto& [a, b] : S.exp_instances) {
        out.push_back(a);
        out.push_back(b);
    }
    for (const auto& sol : S.en_instances) {
        out.push_back(sol.x);
        for (const auto& z : sol.z) out.push_back(z);
    }
    return out;
}

// ----- sigma and delta -----------------------------------------------------

struct SigmaReport {
    std::size_t sigma = 0;
    std::vector<std::vector<Rational>> relations;
};

// sigma_Exp: Q-linear dimension mod C of the a-components.
inline SigmaReport sigma_exp(const FGStructure& S) {
    std::vector<FieldElement> as;
    for (const auto& [a, b] : S.exp_instances) as.push_back(a);
    LdimResult r = ldim_mod_C(S.field, as);
    return {r.dimension, std::move(r.relations)};
}

struct PredimReport {
    std::size_t td = 0;
    std::size_t sigma = 0;
    long delta = 0;
    std::vector<std::vector<Rational>> witness;
};

// delta_Exp = td_C(presentation) - sigma_Exp; nonnegative by Ax-Schanuel,
// zero exactly when everything presented is constant.
inline PredimReport delta_exp(const FGStructure& S) {
    PredimReport rep;
    std::vector<FieldElement> all = presented_elements(S);
    rep.td = td_over_C(S.field, all);
    SigmaReport sr = sigma_exp(S);
    rep.sigma = sr.sigma;
    rep.witness = std::move(sr.relations);
    rep.delta = static_cast<long>(rep.td) - static_cast<long>(rep.sigma);
    if (rep.delta < 0) throw ASViolation("delta_exp is negative");
    bool all_const = true;
    for (const auto& e : all)
        if (!e.is_constant()) all_const = false;
    if ((rep.delta == 0) != all_const)
        throw std::logic_error("delta zero-locus mismatch");
    return rep;
}

// ----- the E_n sigma -------------------------------------------------------

namespace detail {

// Decomposes z0 of an instance against the canonical system for its x and
// returns the per-block bits of epsilon(z0).
inline std::vector<int> epsilon_of(const Equation& E, const FieldElement& x,
                                   const FieldElement& z0) {
    FundamentalSystem fs = fundamental_system(E, x);
    return decompose(E, fs, fs.into(z0)).epsilon;
}

} // namespace detail

// sigma_{E_n}: ldim mod C of the concatenated scaled tuples
// (eps_1 mu_1 x, ..., eps_k mu_k x) over the declared instances.
inline SigmaReport epsilon_sigma_en(const FGStructure& S) {
    if (S.en_instances.empty()) return {};
    const Equation& E = *S.equation;
    std::vector<FieldElement> tuple;
    for (const auto& sol : S.en_instances) {
        std::vector<int> eps = detail::epsilon_of(E, sol.x, sol.z[0]);
        for (std::size_t i = 0; i < E.num_blocks(); ++i) {
            FieldElement mux =
                S.field->element(E.mu_in(i, S.field->vars())) * sol.x;
            tuple.push_back(eps[i] ? mux : S.field->element(RatFunc(S.field->vars())));
        }
    }
    LdimResult r = ldim_mod_C(S.field, tuple);
    return {r.dimension, std::move(r.relations)};
}

// delta_{E_n} = td_C(presentation) - sigma_{E_n}; requires nonconstant base
// elements on the declared instances (their canonical systems are used).
inline PredimReport delta_en(const FGStructure& S) {
    PredimReport rep;
    std::vector<FieldElement> all = presented_elements(S);
    rep.td = td_over_C(S.field, all);
    SigmaReport sr = epsilon_sigma_en(S);
    rep.sigma = sr.sigma;
    rep.witness = std::move(sr.relations);
    rep.delta = static_cast<long>(rep.td) - static_cast<long>(rep.sigma);
    if (rep.delta < 0) throw ASViolation("delta_en is negative");
    bool all_const = true;
    for (const auto& e : all)
        if (!e.is_constant()) all_const = false;
    if ((rep.delta == 0) != all_const)
        throw std::logic_error("delta zero-locus mismatch");
    return rep;
}

// ----- Ax-Schanuel verifiers ----------------------------------------------

struct ASReport {
    std::size_t td = 0;
    std::size_t ldim = 0;
    long margin = 0; // td - ldim - 1
    bool holds = false;
    bool vacuous = false;
    std::vector<std::vector<Rational>> relations; // integer relation basis
};

// Theorem-2.1 verifier for exp instances: td >= ldim + 1, and whenever
// td <= n a nonzero integer relation sum m_i a_i in C is exhibited and
// re-verified.
inline ASReport verify_AS(const FGStructure& S) {
    ASReport rep;
    std::size_t n = S.exp_instances.size();
    if (n == 0) {
        rep.holds = rep.vacuous = true;
        return rep;
    }
    for (const auto& [a, b] : S.exp_instances)
        if (a.is_constant())
            throw std::invalid_argument("verify_AS needs nonconstant a-components");
    std::vector<FieldElement> ab;
    for (const auto& [a, b] : S.exp_instances) {
        ab.push_back(a);
        ab.push_back(b);
    }
    rep.td = td_over_C(S.field, ab);
    SigmaReport sr = sigma_exp(S);
    rep.ldim = sr.sigma;
    rep.relations = std::move(sr.relations);
    rep.margin = static_cast<long>(rep.td) - static_cast<long>(rep.ldim) - 1;
    rep.holds = rep.margin >= 0;
    if (!rep.holds) throw ASViolation("td < ldim + 1 on exp instances");
    if (rep.td <= n) {
        if (rep.relations.empty())
            throw ASViolation("td <= n but no integer relation found");
        for (const auto& m : rep.relations) {
            FieldElement acc = S.field->element(RatFunc(S.field->vars()));
            bool nonzero = false;
            for (std::size_t i = 0; i < n; ++i) {
                if (m[i] != 0) nonzero = true;
                acc = acc + S.field->constant(m[i]) * S.exp_instances[i].a;
            }
            if (!nonzero || !acc.is_constant())
                throw ASViolation("exhibited relation fails re-verification");
        }
    }
    return rep;
}

enum class HigherMode { Proper, Epsilon };

struct ASHigherReport {
    std::size_t lhs = 0; // transcendence degree
    std::size_t rhs = 0; // ldim + 1
    bool holds = false;
    bool vacuous = false;
};

// Theorem-3.4 (proper mode) / Theorem-6.2 (epsilon mode) verifier.
inline ASHigherReport verify_AS_higher(const Equation& E,
                                       const std::vector<Solution>& sols,
                                       HigherMode mode) {
    ASHigherReport rep;
    if (sols.empty()) {
        rep.holds = rep.vacuous = true;
        return rep;
    }
    const ExpFieldPtr f = sols.front().x.field();
    for (const auto& sol : sols) {
        if (sol.x.is_constant())
            throw std::invalid_argument("nonconstant x required");
        if (!en_membership(E, sol)) throw NotASolution();
    }
    std::vector<FieldElement> all, scaled;
    for (const auto& sol : sols) {
        all.push_back(sol.x);
        for (const auto& z : sol.z) all.push_back(z);
        if (mode == HigherMode::Proper) {
            FundamentalSystem fs = fundamental_system(E, sol.x);
            if (!is_proper(E, fs, fs.into(sol.z[0]))) throw NotProper();
            for (const auto& lam : E.lambdas())
                scaled.push_back(f->element(lam.embedded(
                                     f->vars(), name_embedding(E.vars(), f->vars()))) *
                                 sol.x);
        } else {
            std::vector<int> eps = detail::epsilon_of(E, sol.x, sol.z[0]);
            for (std::size_t i = 0; i < E.num_blocks(); ++i) {
                FieldElement mux = f->element(E.mu_in(i, f->vars())) * sol.x;
                scaled.push_back(eps[i] ? mux : f->element(RatFunc(f->vars())));
            }
        }
    }
    rep.lhs = td_over_C(f, all);
    rep.rhs = ldim_mod_C(f, scaled).dimension + 1;
    rep.holds = rep.lhs >= rep.rhs;
    if (!rep.holds) throw ASViolation("higher Ax-Schanuel inequality fails");
    return rep;
}

// ----- strong substructures -----------------------------------------------

using DeltaFn = std::function<long(const FGStructure&)>;

inline long default_delta(const FGStructure& S) { return delta_exp(S).delta; }

namespace detail {

inline bool contains_instance(const FGStructure& S, const ExpInstance& inst) {
    for (const auto& [a, b] : S.exp_instances)
        if (a == inst.a && b == inst.b) return true;
    return false;
}

} // namespace detail

// Bounded check of Definition 6.1: delta(X cap A) <= delta(X) for every X
// in the family (default: the substructures generated by all subsets of B's
// declared exp instances).  X cap A keeps the instances of X declared in A.
inline bool strong_substructure(const FGStructure& A, const FGStructure& B,
                                std::vector<FGStructure> family = {},
                                const DeltaFn& delta = default_delta) {
    for (const auto& inst : A.exp_instances)
        if (!detail::contains_instance(B, inst)) throw NotSubpresentation();
    if (family.empty()) {
        std::size_t m = B.exp_instances.size();
        if (m > 16) throw std::invalid_argument("default family too large");
        for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
            FGStructure X{B.field, {}, {}, {}, B.equation};
            for (std::size_t i = 0; i < m; ++i)
                if (mask & (std::size_t{1} << i))
                    X.exp_instances.push_back(B.exp_instances[i]);
            family.push_back(std::move(X));
        }
    }
    for (const auto& X : family) {
        FGStructure XA{X.field, {}, {}, {}, X.equation};
        for (const auto& inst : X.exp_instances)
            if (detail::contains_instance(A, inst)) XA.exp_instances.push_back(inst);
        if (delta(XA) > delta(X)) return false;
    }
    return true;
}

// ----- the dual-view sigma equality ---------------------------------------

// Lemma-6.4 translation of an exp pair (a, b) into an E_n instance:
// x = a / mu_1 and z = (b, mu_1 b, ..., mu_1^{n-1} b).
inline Solution en_lift_of_exp(const Equation& E, const ExpInstance& inst) {
    const auto& f = inst.a.field();
    FieldElement mu1 = f->element(E.mu_in(0, f->vars()));
    Solution sol;
    sol.x = inst.a / mu1;
    FieldElement p = f->constant(1);
    for (std::size_t l = 0; l < E.order(); ++l) {
        sol.z.push_back(p * inst.b);
        p = p * mu1;
    }
    return sol;
}

// sigma_{E_n} = sigma_{Exp} on a structure carrying both views.
inline bool sigma_equality_check(const FGStructure& S) {
    return epsilon_sigma_en(S).sigma == sigma_exp(S).sigma;
}

// ----- axiom validation ----------------------------------------------------

struct AxiomReport {
    bool closure_ok = true;
    bool fiber_ok = true;
    bool reconstruction_ok = true;
    std::vector<std::string> notes;
};

// Checks the checkable axiom content on the declared instances: group
// closure of exp pairs, constancy of fibre quotients/differences, and the
// A3' reconstruction z_l = sum a_ij g_ijl(x) y_i for en instances.
inline AxiomReport validate_axioms(const FGStructure& S) {
    AxiomReport rep;
    const auto& f = S.field;
    auto note = [&](bool& flag, const std::string& msg) {
        flag = false;
        rep.notes.push_back(msg);
    };
    for (std::size_t i = 0; i < S.exp_instances.size(); ++i)
        for (std::size_t j = 0; j < S.exp_instances.size(); ++j) {
            const auto& p = S.exp_instances[i];
            const auto& q = S.exp_instances[j];
            FieldElement a = p.a + q.a, b = p.b * q.b;
            if (derive(b) != b * derive(a))
                note(rep.closure_ok, "product of declared pairs not an exp pair");
            if (i != j) {
                if (p.a == q.a && !(p.b / q.b).is_constant())
                    note(rep.fiber_ok, "pairs over one base differ non-constantly");
                if (p.b == q.b && !(p.a - q.a).is_constant())
                    note(rep.fiber_ok, "pairs with one image differ non-constantly");
            }
        }
    if (S.equation) {
        const Equation& E = *S.equation;
        for (const auto& sol : S.en_instances) {
            if (sol.x.is_constant()) continue; // degenerate constant instance
            FundamentalSystem fs = fundamental_system(E, sol.x);
            auto lift = [&](const FieldElement& e) { return fs.into(e); };
            Decomposition dec;
            try {
                dec = decompose(E, fs, lift(sol.z[0]));
            } catch (const NotASolution&) {
                note(rep.reconstruction_ok, "z0 fails to decompose");
                continue;
            }
            // z_l = sum_{i,j} a_ij g_ijl(x) y_i against the declared z's
            std::vector<RatFunc> images;
            auto emb = name_embedding(E.vars(), fs.field->vars());
            for (std::size_t vi = 0; vi < E.vars()->size(); ++vi)
                images.push_back(RatFunc::variable(fs.field->vars(), emb[vi]));
            images.push_back(fs.x.value());
            for (std::size_t l = 0; l < E.order(); ++l) {
                FieldElement acc = fs.field->element(RatFunc(fs.field->vars()));
                std::size_t pos = 0;
                for (std::size_t i = 0; i < E.num_blocks(); ++i) {
                    FieldElement yi = fs.v[E.block_offset(i) - 1];
                    for (int j = 0; j < E.multiplicity(i); ++j, ++pos) {
                        RatFunc g = g_poly(E, i, static_cast<std::size_t>(j), l);
                        FieldElement gx = fs.field->element(
                            substitute(g, images, fs.field->vars()));
                        acc = acc + dec.a[pos] * gx * yi;
                    }
                }
                if (acc != lift(sol.z[l]))
                    note(rep.reconstruction_ok, "A3' reconstruction mismatch");
            }
        }
    }
    return rep;
}

} // namespace axel

#endif
