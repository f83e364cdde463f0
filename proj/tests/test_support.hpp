#ifndef AXEL_TEST_SUPPORT_HPP
#define AXEL_TEST_SUPPORT_HPP

#include <axel/matrix.hpp>

#include <random>

namespace axel::testing {

inline VarsPtr st_vars() {
    return make_vars({"s", "t"}, {VarKind::Constant, VarKind::Base});
}

inline MultiPoly random_poly(std::mt19937_64& rng, const VarsPtr& vars, int max_deg = 2,
                             int max_terms = 3) {
    std::uniform_int_distribution<int> nt(0, max_terms);
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<int> coef(-4, 4);
    MultiPoly p(vars);
    int terms = nt(rng);
    for (int i = 0; i < terms; ++i) {
        ExpVec e(vars->size());
        for (auto& x : e) x = deg(rng);
        p.add_term(e, coef(rng));
    }
    return p;
}

inline MultiPoly random_nonzero_poly(std::mt19937_64& rng, const VarsPtr& vars,
                                     int max_deg = 2, int max_terms = 3) {
    for (;;) {
        MultiPoly p = random_poly(rng, vars, max_deg, max_terms);
        if (!p.is_zero()) return p;
    }
}

inline RatFunc random_ratfunc(std::mt19937_64& rng, const VarsPtr& vars) {
    return RatFunc(random_poly(rng, vars, 2, 3),
                   random_nonzero_poly(rng, vars, 1, 2));
}

// Random unimodular integer matrix as a product of elementary row operations.
inline ZMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int ops = 6) {
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

} // namespace axel::testing

#endif
