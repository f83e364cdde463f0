#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <axel/rotundity.hpp>

#include "test_support.hpp"

using namespace axel;

namespace {

// variable table s, t, w1..wk with w's as parameters
VarsPtr variety_vars(std::size_t k) {
    std::vector<std::string> names = {"s", "t"};
    std::vector<VarKind> kinds = {VarKind::Constant, VarKind::Base};
    for (std::size_t i = 1; i <= k; ++i) {
        names.push_back("w" + std::to_string(i));
        kinds.push_back(VarKind::Param);
    }
    return make_vars(std::move(names), std::move(kinds));
}

std::vector<std::size_t> param_indices(const VarsPtr& v) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < v->size(); ++i)
        if (v->kinds[i] == VarKind::Param) out.push_back(i);
    return out;
}

RatFunc w(const VarsPtr& v, std::size_t i) {
    return RatFunc::variable(v, v->index_of("w" + std::to_string(i)));
}

// the surface y = x in G_1, parametrized by one free parameter
ParamVariety diagonal_surface() {
    ParamVariety V;
    V.vars = variety_vars(1);
    V.params = param_indices(V.vars);
    V.xs = {w(V.vars, 1)};
    V.ys = {w(V.vars, 1)};
    return V;
}

// all of G_n, one parameter per coordinate
ParamVariety full_gn(std::size_t n) {
    ParamVariety V;
    V.vars = variety_vars(2 * n);
    V.params = param_indices(V.vars);
    for (std::size_t i = 0; i < n; ++i) {
        V.xs.push_back(w(V.vars, i + 1));
        V.ys.push_back(w(V.vars, n + i + 1));
    }
    return V;
}

ZMatrix zmat(std::vector<std::vector<long>> rows) {
    ZMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
    return m;
}

} // namespace

TEST_CASE("canonical_matrices enumerates one representative per row space") {
    SUBCASE("counts for small parameters") {
        CHECK(canonical_matrices(1, 1).size() == 1);  // [1]
        CHECK(canonical_matrices(1, 3).size() == 3);  // [1], [2], [3]
        // [DERIVED] n=2, N=1: [1 v] for v in {-1,0,1}, [0 1], identity
        CHECK(canonical_matrices(2, 1).size() == 5);
    }
    SUBCASE("every matrix is its own canonical form, in sorted order") {
        auto mats = canonical_matrices(2, 2);
        for (std::size_t i = 0; i < mats.size(); ++i) {
            CHECK(hnf_row_canonical(mats[i]) == mats[i]);
            if (i > 0) CHECK(detail::zless(mats[i - 1], mats[i]));
        }
    }
    SUBCASE("unimodular multiples canonicalize back into the list") {
        std::mt19937_64 rng(11);
        auto mats = canonical_matrices(2, 2);
        for (int it = 0; it < 30; ++it) {
            const ZMatrix& m = mats[it % mats.size()];
            ZMatrix u = axel::testing::random_unimodular(rng, m.rows());
            CHECK(hnf_row_canonical(u * m) == m);
        }
    }
}

TEST_CASE("m_map acts additively on x and multiplicatively on y") {
    auto base = ExpField::create({"s"});
    auto r1 = adjoin_exponent(base, RatFunc::variable(base->vars(), base->t_index()));
    auto f1 = r1.field;
    RatFunc st = RatFunc::variable(f1->vars(), 0) *
                 RatFunc::variable(f1->vars(), f1->t_index());
    auto f = adjoin_exponent(f1, st).field;

    GroupPoint p{{f->constant(1), f->constant(3)}, {f->u(0), f->u(1)}};
    GroupPoint q = m_map(MMatrix(zmat({{2, -1}})), p);
    REQUIRE(q.x.size() == 1);
    CHECK(q.x[0] == f->constant(-1));
    CHECK(q.y[0] == f->u(0) * f->u(0) / f->u(1));
    CHECK_THROWS_AS(m_map(MMatrix(zmat({{1, 2, 3}})), p), DimensionMismatch);
}

TEST_CASE("dim_m agrees between representations and is row-space invariant") {
    // the coset x1 = x2 (A = [1,-1], no multiplicative equations) and its
    // parametrized twin
    LinBinVariety L;
    L.n = 2;
    L.A = QMatrix(1, 2);
    L.A(0, 0) = 1;
    L.A(0, 1) = -1;
    L.K = ZMatrix(0, 2);

    ParamVariety P;
    P.vars = variety_vars(3);
    P.params = param_indices(P.vars);
    P.xs = {w(P.vars, 1), w(P.vars, 1)};
    P.ys = {w(P.vars, 2), w(P.vars, 3)};

    CHECK(variety_dim(L) == 3);
    CHECK(variety_dim(P) == 3);
    std::mt19937_64 rng(23);
    for (const auto& m : canonical_matrices(2, 2)) {
        std::size_t d = dim_m(m, L);
        CHECK(dim_m(m, P) == d);
        // dim [M](V) depends only on the row space of M
        ZMatrix u = axel::testing::random_unimodular(rng, m.rows());
        CHECK(dim_m(u * m, L) == d);
        CHECK(dim_m(u * m, P) == d);
    }
}

TEST_CASE("check_exp_rotund on the diagonal surface") {
    Variety V = diagonal_surface();
    SUBCASE("rotund at bound 3") {
        RotundityVerdict r = check_exp_rotund(V, 3, false);
        CHECK(r.rotund);
        CHECK(r.matrices_checked == 3);
        CHECK(!r.violating);
    }
    SUBCASE("not strongly rotund; least witness is the identity") {
        RotundityVerdict r = check_exp_rotund(V, 3, true);
        CHECK(!r.rotund);
        REQUIRE(r.violating);
        CHECK(*r.violating == zmat({{1}}));
        CHECK(r.violating_dim == 1);
        CHECK(r.violating_rank == 1);
    }
    SUBCASE("monotone in the bound") {
        for (int N = 1; N <= 3; ++N) CHECK(check_exp_rotund(V, N, false).rotund);
    }
}

TEST_CASE("check_exp_rotund degenerate and strong cases") {
    SUBCASE("a constant point is not rotund") {
        ParamVariety V;
        V.vars = variety_vars(1);
        V.params = param_indices(V.vars);
        V.xs = {RatFunc::constant(V.vars, 1)};
        V.ys = {RatFunc::constant(V.vars, 2)};
        RotundityVerdict r = check_exp_rotund(V, 2, false);
        CHECK(!r.rotund);
        REQUIRE(r.violating);
        CHECK(*r.violating == zmat({{1}}));
        CHECK(r.violating_dim == 0);
    }
    SUBCASE("full G_2 is strongly rotund, hence rotund") {
        Variety V = full_gn(2);
        CHECK(check_exp_rotund(V, 2, true).rotund);
        CHECK(check_exp_rotund(V, 2, false).rotund);
    }
    SUBCASE("free coset of full dimension is strongly rotund") {
        LinBinVariety L;
        L.n = 2;
        L.A = QMatrix(0, 2);
        L.K = ZMatrix(0, 2);
        CHECK(check_exp_rotund(L, 3, true).rotund);
    }
}

TEST_CASE("check_exp_rotund is deterministic across thread counts") {
    Variety V = diagonal_surface();
    auto with_threads = [&](const char* n) {
        setenv("AXEL_THREADS", n, 1);
        RotundityVerdict r = check_exp_rotund(V, 3, true);
        unsetenv("AXEL_THREADS");
        return r;
    };
    RotundityVerdict a = with_threads("1");
    RotundityVerdict b = with_threads("4");
    CHECK(a.rotund == b.rotund);
    REQUIRE(a.violating);
    REQUIRE(b.violating);
    CHECK(*a.violating == *b.violating);
    CHECK(a.violating_dim == b.violating_dim);
}

TEST_CASE("check_exp_free") {
    SUBCASE("additive dependence is detected") {
        ParamVariety V;
        V.vars = variety_vars(1);
        V.params = param_indices(V.vars);
        RatFunc one = RatFunc::constant(V.vars, 1);
        V.xs = {w(V.vars, 1), one - w(V.vars, 1)};
        V.ys = {w(V.vars, 1), w(V.vars, 1) + one};
        FreeVerdict r = check_exp_free(V);
        CHECK(!r.free);
        REQUIRE(r.additive_relation);
        // x1 + x2 = 1 is constant
        CHECK((*r.additive_relation)[0] == (*r.additive_relation)[1]);
        CHECK(!r.multiplicative_relation);
    }
    SUBCASE("multiplicative dependence is detected") {
        ParamVariety V;
        V.vars = variety_vars(2);
        V.params = param_indices(V.vars);
        V.xs = {w(V.vars, 1), w(V.vars, 2)};
        V.ys = {w(V.vars, 1), RatFunc::constant(V.vars, 1) / w(V.vars, 1)};
        FreeVerdict r = check_exp_free(V);
        CHECK(!r.free);
        CHECK(!r.additive_relation);
        REQUIRE(r.multiplicative_relation);
        CHECK((*r.multiplicative_relation)[0] == (*r.multiplicative_relation)[1]);
    }
    SUBCASE("full G_2 is free") {
        CHECK(check_exp_free(full_gn(2)).free);
    }
    SUBCASE("coset varieties are free exactly without equations") {
        LinBinVariety L;
        L.n = 2;
        L.A = QMatrix(0, 2);
        L.K = ZMatrix(0, 2);
        CHECK(check_exp_free(L).free);
        L.K = zmat({{1, 1}});
        CHECK(!check_exp_free(L).free);
    }
}

TEST_CASE("point_on_variety three-valued membership") {
    SUBCASE("identical coordinates") {
        ParamVariety V = diagonal_surface();
        CHECK(point_on_variety(V, V.all_coords()) == Tri::Yes);
    }
    SUBCASE("triangular parametrization answers definitely") {
        ParamVariety V;
        V.vars = variety_vars(2);
        V.params = param_indices(V.vars);
        V.ambient = Ambient::EnSpace;
        V.xs = {w(V.vars, 1)};
        V.zs = {{w(V.vars, 2)}, {w(V.vars, 1) * w(V.vars, 2)}};
        RatFunc t = RatFunc::variable(V.vars, 1);
        RatFunc s = RatFunc::variable(V.vars, 0);
        CHECK(point_on_variety(V, {t, s, t * s}) == Tri::Yes);
        CHECK(point_on_variety(V, {t, s, t * s + RatFunc::constant(V.vars, 1)}) ==
              Tri::No);
    }
    SUBCASE("implicit relations give definite negatives") {
        ParamVariety V;
        V.vars = variety_vars(1);
        V.params = param_indices(V.vars);
        V.xs = {w(V.vars, 1).pow(2)};
        V.ys = {w(V.vars, 1).pow(3)};
        RatFunc t = RatFunc::variable(V.vars, 1);
        // x^3 = y^2 on the variety; t^2, t^4 violates it
        CHECK(point_on_variety(V, {t.pow(2), t.pow(4)}) == Tri::No);
        // t^2, t^3 satisfies every relation but is not certified
        CHECK(point_on_variety(V, {t.pow(2), t.pow(3)}) == Tri::Unknown);
    }
}

TEST_CASE("check_en_exp_rotund") {
    VarsPtr vv = variety_vars(2);
    auto E = make_equation(vv, std::vector<std::pair<Rational, int>>{{1, 1}, {2, 1}});
    ParamVariety V;
    V.ambient = Ambient::EnSpace;
    V.vars = vv;
    V.params = param_indices(vv);
    V.xs = {w(vv, 1)};
    SUBCASE("closed under the mu_1-lift") {
        V.zs = {{w(vv, 2)}, {w(vv, 2)}}; // z_1 = mu_1 z_0 with mu_1 = 1
        EnRotundVerdict r = check_en_exp_rotund(E, V, 2);
        CHECK(r.projection.rotund);
        CHECK(r.closure == Tri::Yes);
        CHECK(r.verdict());
    }
    SUBCASE("lift mismatch is detected") {
        V.zs = {{w(vv, 2)}, {RatFunc::constant(vv, 2) * w(vv, 2)}};
        EnRotundVerdict r = check_en_exp_rotund(E, V, 2);
        CHECK(r.closure == Tri::No);
        CHECK(!r.verdict());
    }
    SUBCASE("constant projection fails the rotundity half") {
        V.xs = {RatFunc::constant(vv, 1)};
        V.zs = {{RatFunc::constant(vv, 3)}, {RatFunc::constant(vv, 3)}};
        EnRotundVerdict r = check_en_exp_rotund(E, V, 2);
        CHECK(!r.projection.rotund);
        CHECK(!r.verdict());
    }
}

TEST_CASE("tilde transforms") {
    SUBCASE("simple spectrum: v-coordinates solve the transition system") {
        VarsPtr vv = variety_vars(3);
        auto E = make_equation(
            vv, std::vector<std::pair<RatFunc, int>>{
                    {RatFunc::constant(vv, 1), 1}, {RatFunc::variable(vv, 0), 1}});
        ParamVariety V;
        V.ambient = Ambient::EnSpace;
        V.vars = vv;
        V.params = param_indices(vv);
        V.xs = {w(vv, 1)};
        V.zs = {{w(vv, 2)}, {w(vv, 3)}};
        TildeResult tr = tilde_transforms(E, V);
        // [DERIVED] H is the Vandermonde [[1,1],[1,s]]; L recovers
        // v_1 = (s z_0 - z_1)/(s - 1), v_2 = (z_1 - z_0)/(s - 1)
        RatFunc s = RatFunc::variable(vv, 0), one = RatFunc::constant(vv, 1);
        CHECK(tr.canonical[0][0] == (s * w(vv, 2) - w(vv, 3)) / (s - one));
        CHECK(tr.canonical[1][0] == (w(vv, 3) - w(vv, 2)) / (s - one));
        // V' lives in G_2: x-parts scaled by the eigenvalues
        REQUIRE(tr.v_prime.xs.size() == 2);
        CHECK(tr.v_prime.xs[0] == w(vv, 1));
        CHECK(tr.v_prime.xs[1] == s * w(vv, 1));
        CHECK(tr.v_prime.ys[0] == tr.canonical[0][0]);
        CHECK(tr.v_prime.ys[1] == tr.canonical[1][0]);
        // V'' keeps x and the block leaders
        REQUIRE(tr.v_second.zs.size() == 2);
        CHECK(tr.v_second.zs[0][0] == tr.canonical[0][0]);
        CHECK(tr.v_second.zs[1][0] == tr.canonical[1][0]);
    }
    SUBCASE("repeated eigenvalue: L inverts the canonical H at x = w1") {
        VarsPtr vv = variety_vars(3);
        auto E = make_equation(vv, std::vector<std::pair<Rational, int>>{{1, 2}});
        ParamVariety V;
        V.ambient = Ambient::EnSpace;
        V.vars = vv;
        V.params = param_indices(vv);
        V.xs = {w(vv, 1)};
        V.zs = {{w(vv, 2)}, {w(vv, 3)}};
        TildeResult tr = tilde_transforms(E, V);
        // [DERIVED] H_x = [[1, 1], [1, (1+x)/x]]; check H * v = z
        RatFunc x = w(vv, 1), one = RatFunc::constant(vv, 1);
        RatFunc v1 = tr.canonical[0][0], v2 = tr.canonical[1][0];
        CHECK(v1 + v2 == w(vv, 2));
        CHECK(v1 + (one + x) / x * v2 == w(vv, 3));
        // the only block leader is v_1
        REQUIRE(tr.v_second.zs.size() == 1);
        CHECK(tr.v_second.zs[0][0] == v1);
    }
    SUBCASE("pole at a constant zero base coordinate") {
        VarsPtr vv = variety_vars(2);
        auto E = make_equation(vv, std::vector<std::pair<Rational, int>>{{1, 2}});
        ParamVariety V;
        V.ambient = Ambient::EnSpace;
        V.vars = vv;
        V.params = param_indices(vv);
        V.xs = {RatFunc(vv)}; // x = 0 sits on the pole of H's second column
        V.zs = {{w(vv, 1)}, {w(vv, 2)}};
        // L is polynomial in X here, so the forward transform is fine...
        TildeResult tr = tilde_transforms(E, V);
        CHECK(tr.v_prime.ys.size() == 1);
        // ...but reconstructing through H hits the 1/X entry
        CHECK_THROWS_AS(check_en_rotund(E, V, 2, false), SubstitutionPole);
    }
}

namespace {

// a variety built to satisfy Definition 5.1: pick x and the block leaders
// freely, then define the z-blocks through the canonical H
ParamVariety h_closed_variety(const Equation& E, const VarsPtr& vv, std::size_t m) {
    std::size_t n = E.order(), k = E.num_blocks();
    ParamVariety V;
    V.ambient = Ambient::EnSpace;
    V.vars = vv;
    V.params = param_indices(vv);
    for (std::size_t i = 0; i < m; ++i) V.xs.push_back(w(vv, i + 1));
    std::vector<std::vector<RatFunc>> leaders(k);
    std::size_t next = m + 1;
    for (std::size_t s = 0; s < k; ++s)
        for (std::size_t i = 0; i < m; ++i) leaders[s].push_back(w(vv, next++));
    VarsPtr xv = append_var(vv, "X__", VarKind::Formal);
    std::size_t xi = xv->size() - 1;
    ExactMatrix H = detail::symbolic_H(E, xv, xi);
    V.zs.assign(n, std::vector<RatFunc>(m, RatFunc(vv)));
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<RatFunc> canon;
        for (std::size_t s = 0; s < k; ++s) {
            RatFunc xp = RatFunc::constant(vv, 1);
            for (int j = 0; j < E.multiplicity(s); ++j) {
                canon.push_back(xp * leaders[s][i]);
                xp *= V.xs[i];
            }
        }
        for (std::size_t l = 0; l < n; ++l) {
            RatFunc acc(vv);
            for (std::size_t c = 0; c < n; ++c)
                acc += detail::subst_x(H(l, c), xv, xi, V.xs[i], vv) * canon[c];
            V.zs[l][i] = acc;
        }
    }
    return V;
}

} // namespace

TEST_CASE("check_en_rotund") {
    SUBCASE("H-closed variety with free leaders is E_n-rotund") {
        VarsPtr vv = variety_vars(2);
        auto E = make_equation(vv, std::vector<std::pair<Rational, int>>{{1, 2}});
        ParamVariety V = h_closed_variety(E, vv, 1);
        EnRotund5Verdict r = check_en_rotund(E, V, 2, false);
        CHECK(r.prime.rotund);
        CHECK(r.closure == Tri::Yes);
        CHECK(r.verdict());
    }
    SUBCASE("perturbing a z-coordinate breaks the closure condition") {
        VarsPtr vv = variety_vars(2);
        auto E = make_equation(vv, std::vector<std::pair<Rational, int>>{{1, 2}});
        ParamVariety V = h_closed_variety(E, vv, 1);
        V.zs[1][0] += RatFunc::constant(vv, 1);
        EnRotund5Verdict r = check_en_rotund(E, V, 2, false);
        CHECK(r.closure == Tri::No);
        CHECK(!r.verdict());
    }
    SUBCASE("strong flag propagates to the transformed variety") {
        VarsPtr vv = variety_vars(2);
        auto E = make_equation(vv, std::vector<std::pair<Rational, int>>{{1, 2}});
        ParamVariety V = h_closed_variety(E, vv, 1);
        // V' is the diagonal-like image with one parameter per coordinate
        // pair; strongly rotund fails just like the diagonal surface
        EnRotund5Verdict r = check_en_rotund(E, V, 2, true);
        CHECK(r.closure == Tri::Yes);
    }
}

TEST_CASE("check_en_free") {
    VarsPtr vv = variety_vars(3);
    SUBCASE("Q-dependent eigenvalues are refused") {
        auto E = make_equation(vv,
                               std::vector<std::pair<Rational, int>>{{1, 1}, {2, 1}});
        ParamVariety V;
        V.ambient = Ambient::EnSpace;
        V.vars = vv;
        V.params = param_indices(vv);
        V.xs = {w(vv, 1)};
        V.zs = {{w(vv, 2)}, {w(vv, 3)}};
        CHECK_THROWS_AS(check_en_free(E, V), DependentEigenvalues);
    }
    SUBCASE("independent eigenvalues: generic variety is free") {
        auto E = make_equation(
            vv, std::vector<std::pair<RatFunc, int>>{
                    {RatFunc::constant(vv, 1), 1}, {RatFunc::variable(vv, 0), 1}});
        ParamVariety V;
        V.ambient = Ambient::EnSpace;
        V.vars = vv;
        V.params = param_indices(vv);
        V.xs = {w(vv, 1)};
        V.zs = {{w(vv, 2)}, {w(vv, 3)}};
        CHECK(check_en_free(E, V).free);
    }
}

TEST_CASE("lift_exp_point") {
    auto base = ExpField::create({"s"});
    RatFunc t2 = RatFunc::constant(base->vars(), 2) *
                 RatFunc::variable(base->vars(), base->t_index());
    auto f = adjoin_exponent(base, t2).field; // u1 with exponent 2t
    auto E = make_equation(f->vars(), std::vector<std::pair<Rational, int>>{{2, 2}});
    SUBCASE("valid pair lifts to a solution") {
        std::vector<Solution> sols =
            lift_exp_point(E, {ExpInstance{f->t(), f->u(0)}});
        REQUIRE(sols.size() == 1);
        CHECK(sols[0].x == f->t());
        REQUIRE(sols[0].z.size() == 2);
        CHECK(sols[0].z[0] == f->u(0));
        CHECK(sols[0].z[1] == f->constant(2) * f->u(0));
        CHECK(en_membership(E, sols[0]));
    }
    SUBCASE("non-exponential pair is rejected") {
        CHECK_THROWS_AS(lift_exp_point(E, {ExpInstance{f->t(), f->t()}}),
                        NotExpPoint);
    }
}

TEST_CASE("scaling_transform") {
    SUBCASE("parametrized: x-coordinates are scaled") {
        ParamVariety V = diagonal_surface();
        Variety S = scaling_transform(V, Rational(2));
        const ParamVariety& P = std::get<ParamVariety>(S);
        CHECK(P.xs[0] == RatFunc::constant(V.vars, 2) * w(V.vars, 1));
        CHECK(P.ys[0] == V.ys[0]);
    }
    SUBCASE("rotundity verdicts are preserved") {
        Variety V = diagonal_surface();
        for (const Rational& c : {Rational(2), Rational(-1), Rational(1, 3)}) {
            Variety S = scaling_transform(V, c);
            CHECK(check_exp_rotund(S, 3, false).rotund ==
                  check_exp_rotund(V, 3, false).rotund);
            CHECK(check_exp_rotund(S, 3, true).rotund ==
                  check_exp_rotund(V, 3, true).rotund);
        }
    }
    SUBCASE("coset representation: row space of A is rescaled") {
        LinBinVariety L;
        L.n = 2;
        L.A = QMatrix(1, 2);
        L.A(0, 0) = 1;
        L.A(0, 1) = -1;
        L.K = ZMatrix(0, 2);
        Variety S = scaling_transform(L, Rational(3));
        const LinBinVariety& T = std::get<LinBinVariety>(S);
        CHECK(T.A(0, 0) == Rational(1, 3));
        for (const auto& m : canonical_matrices(2, 2))
            CHECK(dim_m(m, Variety(L)) == dim_m(m, S));
    }
    SUBCASE("zero scalar is rejected") {
        CHECK_THROWS_AS(scaling_transform(Variety(diagonal_surface()), Rational(0)),
                        ZeroScalar);
    }
}

TEST_CASE("property: rotundity invariances") {
    std::mt19937_64 rng(41);
    SUBCASE("strong rotundity implies rotundity") {
        std::vector<Variety> pool = {diagonal_surface(), full_gn(2)};
        for (const auto& V : pool) {
            RotundityVerdict strong = check_exp_rotund(V, 2, true);
            if (strong.rotund) CHECK(check_exp_rotund(V, 2, false).rotund);
        }
    }
    SUBCASE("verdicts shrink monotonically with the bound") {
        Variety V = full_gn(2);
        bool prev = check_exp_rotund(V, 3, true).rotund;
        for (int N = 2; N >= 1; --N) {
            bool cur = check_exp_rotund(V, N, true).rotund;
            // failing at a smaller bound would also fail at the larger one
            if (prev) CHECK(cur);
            prev = cur && prev;
        }
    }
    SUBCASE("H-closed varieties over several equations pass the E_n check") {
        VarsPtr vv = variety_vars(3);
        std::vector<Equation> eqs = {
            make_equation(vv, std::vector<std::pair<Rational, int>>{{1, 2}}),
            make_equation(vv, std::vector<std::pair<Rational, int>>{{2, 1}}),
            make_equation(vv,
                          std::vector<std::pair<RatFunc, int>>{
                              {RatFunc::constant(vv, 1), 1},
                              {RatFunc::variable(vv, 0), 1}}),
        };
        for (const auto& E : eqs) {
            ParamVariety V = h_closed_variety(E, vv, 1);
            EnRotund5Verdict r = check_en_rotund(E, V, 2, false);
            CHECK(r.verdict());
        }
    }
}
