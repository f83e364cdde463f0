#ifndef AXEL_GENERATOR_HPP
#define AXEL_GENERATOR_HPP

#include <axel/rotundity.hpp>

#include <random>

namespace axel {

// Deterministic, seeded generators for batch validation.  All pools are
// fixed: eigenvalues from {1, -1, 2, -2, s, 2s, s+1}, base elements from
// {t, 2t, t+1, s t, t^2}, solution coefficients from {0, 1, -1, 2}.

inline std::vector<RatFunc> eigenvalue_pool(const VarsPtr& vars) {
    RatFunc s = RatFunc::variable(vars, 0);
    RatFunc one = RatFunc::constant(vars, 1);
    return {one,
            RatFunc::constant(vars, -1),
            RatFunc::constant(vars, 2),
            RatFunc::constant(vars, -2),
            s,
            RatFunc::constant(vars, 2) * s,
            s + one};
}

inline std::vector<RatFunc> base_pool(const VarsPtr& vars) {
    RatFunc s = RatFunc::variable(vars, 0);
    RatFunc t = RatFunc::variable(vars, 1);
    RatFunc one = RatFunc::constant(vars, 1);
    return {t, RatFunc::constant(vars, 2) * t, t + one, s * t, t * t};
}

// Random equation of order <= max_order; with simple_spectrum every
// multiplicity is one.
inline Equation random_equation(std::mt19937_64& rng, const VarsPtr& vars,
                                std::size_t max_order = 4,
                                bool simple_spectrum = false) {
    std::vector<RatFunc> pool = eigenvalue_pool(vars);
    std::uniform_int_distribution<std::size_t> order(1, max_order);
    std::size_t n = order(rng);
    std::vector<std::size_t> idx(pool.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<std::pair<RatFunc, int>> eigen;
    std::size_t left = n, at = 0;
    while (left > 0) {
        std::size_t mult =
            simple_spectrum ? 1
                            : std::uniform_int_distribution<std::size_t>(1, left)(rng);
        eigen.emplace_back(pool[idx[at++]], static_cast<int>(mult));
        left -= mult;
    }
    return make_equation(vars, std::move(eigen));
}

inline FieldElement random_base(std::mt19937_64& rng, const ExpFieldPtr& f) {
    std::vector<RatFunc> pool = base_pool(f->vars());
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    return f->element(pool[pick(rng)]);
}

// Coefficient vector from the documented pool; never all zero; with
// nonzero_only the zero entry is excluded (proper solutions).
inline std::vector<Rational> random_coefficients(std::mt19937_64& rng, std::size_t n,
                                                 bool nonzero_only = false) {
    static const Rational pool[] = {Rational(0), Rational(1), Rational(-1), Rational(2)};
    std::uniform_int_distribution<std::size_t> pick(nonzero_only ? 1 : 0, 3);
    for (;;) {
        std::vector<Rational> c;
        bool any = false;
        for (std::size_t i = 0; i < n; ++i) {
            c.push_back(pool[pick(rng)]);
            if (c.back() != 0) any = true;
        }
        if (any) return c;
    }
}

// y = sum a_i v_i over the canonical fundamental system.
inline FieldElement combine_solution(const FundamentalSystem& fs,
                                     const std::vector<Rational>& a) {
    const auto& f = fs.field;
    FieldElement y = f->element(RatFunc(f->vars()));
    for (std::size_t i = 0; i < fs.v.size(); ++i)
        y = y + f->constant(a[i]) * fs.v[i];
    return y;
}

// ----- exp instance sets ---------------------------------------------------

struct GeneratedInstances {
    ExpFieldPtr field;
    std::vector<ExpInstance> pairs;
};

// Builds a model with 1..3 generators whose exponents come from the base
// pool, then 1..max_pairs instances (a, b) = (sum c_j h_j, prod u_j^{c_j}).
inline GeneratedInstances random_exp_instances(std::mt19937_64& rng,
                                               std::size_t max_pairs = 3) {
    ExpFieldPtr f = ExpField::create({"s"});
    std::vector<RatFunc> pool = base_pool(f->vars());
    std::shuffle(pool.begin(), pool.end(), rng);
    std::size_t gens = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    for (std::size_t j = 0; j < gens; ++j) {
        RatFunc h = nonconstant_part(*f, pool[j].embedded(
                                             f->vars(), name_embedding(pool[j].vars(),
                                                                       f->vars())));
        f = adjoin_exponent(f, h).field;
    }
    GeneratedInstances out;
    std::size_t m = std::uniform_int_distribution<std::size_t>(1, max_pairs)(rng);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (std::size_t p = 0; p < m; ++p) {
        std::vector<int> c(f->num_exponents());
        bool any = false;
        while (!any)
            for (auto& x : c) {
                x = coef(rng);
                if (x != 0) any = true;
            }
        FieldElement a = f->element(RatFunc(f->vars()));
        FieldElement b = f->constant(1);
        for (std::size_t j = 0; j < c.size(); ++j) {
            a = a + f->constant(c[j]) * f->element(f->exponent(j));
            if (c[j] != 0) b = b * f->u(j).pow(c[j]);
        }
        out.pairs.push_back({a, b});
    }
    out.field = f;
    return out;
}

// ----- higher-order solution sets ------------------------------------------

struct GeneratedHigher {
    ExpFieldPtr field;
    Equation equation;
    std::vector<Solution> sols;
};

// 1..max_m solutions of one random equation, all transported into a common
// field; with proper_only every canonical coefficient is nonzero.
inline GeneratedHigher random_higher_instances(std::mt19937_64& rng,
                                               std::size_t max_order = 4,
                                               std::size_t max_m = 3,
                                               bool proper_only = false) {
    ExpFieldPtr f = ExpField::create({"s"});
    Equation E = random_equation(rng, f->vars(), max_order);
    std::size_t m = std::uniform_int_distribution<std::size_t>(1, max_m)(rng);
    std::vector<Solution> sols;
    for (std::size_t j = 0; j < m; ++j) {
        FieldElement x = random_base(rng, f);
        FundamentalSystem fs = fundamental_system(E, x);
        // transport everything accumulated so far into the extended field
        for (auto& sol : sols) {
            sol.x = fs.into(sol.x);
            for (auto& z : sol.z) z = fs.into(z);
        }
        FieldElement y =
            combine_solution(fs, random_coefficients(rng, E.order(), proper_only));
        Solution sol;
        sol.x = fs.x;
        sol.z.push_back(y);
        for (std::size_t l = 1; l < E.order(); ++l)
            sol.z.push_back(partial(fs.x, sol.z.back()));
        sols.push_back(std::move(sol));
        f = fs.field;
    }
    return {f, std::move(E), std::move(sols)};
}

// ----- dual-view structures ------------------------------------------------

// Structure carrying the same instances in both the Exp and the E_n view,
// connected by the Lemma-6.4 lift.
inline FGStructure random_dual_structure(std::mt19937_64& rng) {
    GeneratedInstances gi = random_exp_instances(rng);
    Equation E = random_equation(rng, gi.field->vars());
    std::vector<Solution> lifts;
    for (const auto& inst : gi.pairs) lifts.push_back(en_lift_of_exp(E, inst));
    return make_fg(gi.field, {}, gi.pairs, std::move(lifts), std::move(E));
}

// ----- free varieties with generic points ----------------------------------

// Random unimodular matrix as a product of elementary operations.
inline ZMatrix testing_unimodular(std::mt19937_64& rng, std::size_t n, int ops = 8) {
    ZMatrix u(n, n);
    for (std::size_t i = 0; i < n; ++i) u(i, i) = 1;
    std::uniform_int_distribution<int> pick(0, static_cast<int>(n) - 1);
    std::uniform_int_distribution<int> mul(-2, 2);
    for (int o = 0; o < ops; ++o) {
        int i = pick(rng), j = pick(rng);
        if (i == j) {
            for (std::size_t c = 0; c < n; ++c) u(i, c) = -u(i, c);
        } else {
            Integer f = mul(rng);
            for (std::size_t c = 0; c < n; ++c) u(i, c) += f * u(j, c);
        }
    }
    return u;
}

// Generic free variety in G_n: additive coordinates are a unimodular image
// of n free parameters, multiplicative ones unimodular monomials in n more.
inline ParamVariety random_free_variety(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::string> names = {"s", "t"};
    std::vector<VarKind> kinds = {VarKind::Constant, VarKind::Base};
    for (std::size_t i = 1; i <= 2 * n; ++i) {
        names.push_back("w" + std::to_string(i));
        kinds.push_back(VarKind::Param);
    }
    ParamVariety V;
    V.vars = make_vars(std::move(names), std::move(kinds));
    for (std::size_t i = 0; i < V.vars->size(); ++i)
        if (V.vars->kinds[i] == VarKind::Param) V.params.push_back(i);
    ZMatrix U = testing_unimodular(rng, n), W = testing_unimodular(rng, n);
    for (std::size_t i = 0; i < n; ++i) {
        RatFunc x(V.vars), y = RatFunc::constant(V.vars, 1);
        for (std::size_t j = 0; j < n; ++j) {
            x += RatFunc::constant(V.vars, Rational(U(i, j))) *
                 RatFunc::variable(V.vars, V.params[j]);
            long e = W(i, j).get_si();
            if (e != 0)
                y *= RatFunc::variable(V.vars, V.params[n + j]).pow(static_cast<int>(e));
        }
        V.xs.push_back(x);
        V.ys.push_back(y);
    }
    return V;
}

// ----- lifted exp points ----------------------------------------------------

struct GeneratedLift {
    ExpFieldPtr field;
    Equation equation;
    ExpInstance good; // satisfies Exp(mu_1 x, y)
    ExpInstance bad;  // same x, perturbed y
};

// One valid exp point for a random equation plus a perturbation that breaks
// the relation; the lift of the former is a solution, of the latter never.
inline GeneratedLift random_lift_case(std::mt19937_64& rng) {
    ExpFieldPtr f0 = ExpField::create({"s"});
    Equation E = random_equation(rng, f0->vars());
    FieldElement x0 = random_base(rng, f0);
    RatFunc h = E.mu_in(0, f0->vars()) * x0.value();
    auto adj = adjoin_exponent(f0, nonconstant_part(*f0, h));
    ExpFieldPtr f = adj.field;
    FieldElement x = f->element(x0.value().embedded(
        f->vars(), name_embedding(f0->vars(), f->vars())));
    FieldElement y = adj.expression;
    return {f, std::move(E), ExpInstance{x, y}, ExpInstance{x, y * f->t()}};
}

} // namespace axel

#endif
