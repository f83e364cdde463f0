#ifndef AXEL_ROTUNDITY_HPP
#define AXEL_ROTUNDITY_HPP

#include <axel/predimension.hpp>

#include <cstdlib>
#include <thread>
#include <variant>

namespace axel {

struct ZeroScalar : std::runtime_error {
    ZeroScalar() : std::runtime_error("scaling constant must be nonzero") {}
};
struct SubstitutionPole : std::runtime_error {
    SubstitutionPole() : std::runtime_error("transform entry has a pole on the variety") {}
};
struct DependentEigenvalues : std::runtime_error {
    DependentEigenvalues()
        : std::runtime_error("eigenvalues are Q-linearly dependent; refusing") {}
};
struct NotExpPoint : std::runtime_error {
    NotExpPoint() : std::runtime_error("pair does not satisfy the exp relation") {}
};

// ----- points and varieties -----------------------------------------------

// A point of G_n = G_a^n x G_m^n.
struct GroupPoint {
    std::vector<FieldElement> x, y;
};

enum class Ambient { Gn, EnSpace };

// Parametrized variety: coordinates are rational functions of parameters.
// Gn: coordinates xs (n additive) and ys (n multiplicative, not identically
// zero).  EnSpace (F^{m(n+1)}): coordinates xs (m) and n blocks zs[l] of m.
struct ParamVariety {
    Ambient ambient = Ambient::Gn;
    VarsPtr vars;
    std::vector<std::size_t> params;
    std::vector<RatFunc> xs, ys;
    std::vector<std::vector<RatFunc>> zs;

    std::size_t n() const { return ambient == Ambient::Gn ? xs.size() : zs.size(); }
    std::size_t m() const { return xs.size(); }
    std::vector<RatFunc> all_coords() const {
        std::vector<RatFunc> out = xs;
        if (ambient == Ambient::Gn) {
            out.insert(out.end(), ys.begin(), ys.end());
        } else {
            for (const auto& blk : zs) out.insert(out.end(), blk.begin(), blk.end());
        }
        return out;
    }
};

// Coset-style variety in G_n: affine-linear equations A x = c on the
// additive part, binomial equations prod y^K = gamma on the multiplicative
// part (c, gamma constants).
struct LinBinVariety {
    std::size_t n = 0;
    QMatrix A;
    ZMatrix K;
};

using Variety = std::variant<ParamVariety, LinBinVariety>;

// ----- the [M]-map ---------------------------------------------------------

// k x n integer matrix with its canonical row-space representative.
struct MMatrix {
    explicit MMatrix(ZMatrix m) : mat(std::move(m)), canonical(hnf_row_canonical(mat)) {}
    ZMatrix mat, canonical;
    std::size_t rank() const { return canonical.rows(); }
};

// [M]: G_n -> G_k, additive on x, multiplicative on y.
inline GroupPoint m_map(const MMatrix& M, const GroupPoint& p) {
    std::size_t k = M.mat.rows(), n = M.mat.cols();
    if (p.x.size() != n || p.y.size() != n) throw DimensionMismatch();
    const auto& f = p.x.front().field();
    GroupPoint out;
    for (std::size_t i = 0; i < k; ++i) {
        FieldElement u = f->element(RatFunc(f->vars()));
        FieldElement v = f->constant(1);
        for (std::size_t j = 0; j < n; ++j) {
            long mij = M.mat(i, j).get_si();
            u = u + f->constant(Rational(mij)) * p.x[j];
            if (mij != 0) v = v * p.y[j].pow(static_cast<int>(mij));
        }
        out.x.push_back(u);
        out.y.push_back(v);
    }
    return out;
}

// ----- dim [M](V) ----------------------------------------------------------

// Composed coordinates of [M] with the parametrization of a Gn variety.
inline std::vector<RatFunc> m_composed(const ZMatrix& M, const ParamVariety& V) {
    std::vector<RatFunc> out;
    for (std::size_t i = 0; i < M.rows(); ++i) {
        RatFunc u(V.vars);
        RatFunc v = RatFunc::constant(V.vars, 1);
        for (std::size_t j = 0; j < M.cols(); ++j) {
            long mij = M(i, j).get_si();
            u += RatFunc::constant(V.vars, Rational(mij)) * V.xs[j];
            if (mij != 0) v *= V.ys[j].pow(static_cast<int>(mij));
        }
        out.push_back(u);
        out.push_back(v);
    }
    return out;
}

inline std::size_t dim_m(const ZMatrix& M, const ParamVariety& V) {
    return image_dim(m_composed(M, V), V.params);
}

namespace detail {

inline QMatrix q_stack(const QMatrix& top, const QMatrix& bottom) {
    QMatrix out(top.rows() + bottom.rows(), std::max(top.cols(), bottom.cols()));
    for (std::size_t r = 0; r < top.rows(); ++r)
        for (std::size_t c = 0; c < top.cols(); ++c) out(r, c) = top(r, c);
    for (std::size_t r = 0; r < bottom.rows(); ++r)
        for (std::size_t c = 0; c < bottom.cols(); ++c) out(top.rows() + r, c) = bottom(r, c);
    return out;
}

inline QMatrix to_q(const ZMatrix& m) {
    QMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = Rational(m(r, c));
    return out;
}

} // namespace detail

// For a coset variety {A x = c, y^K = gamma} the image under [M] is again a
// coset; its dimension splits into the two group factors.
inline std::size_t dim_m(const ZMatrix& M, const LinBinVariety& V) {
    QMatrix mq = detail::to_q(M);
    std::size_t dx = q_rank(detail::q_stack(mq, V.A)) - q_rank(V.A);
    std::size_t dy = q_rank(detail::q_stack(mq, detail::to_q(V.K))) -
                     q_rank(detail::to_q(V.K));
    return dx + dy;
}

inline std::size_t dim_m(const ZMatrix& M, const Variety& V) {
    return std::visit([&](const auto& v) { return dim_m(M, v); }, V);
}

inline std::size_t variety_dim(const ParamVariety& V) {
    return image_dim(V.all_coords(), V.params);
}
inline std::size_t variety_dim(const LinBinVariety& V) {
    return (V.n - q_rank(V.A)) + (V.n - q_rank(detail::to_q(V.K)));
}

// ----- canonical matrix enumeration ---------------------------------------

namespace detail {

// All full-rank matrices in canonical row Hermite form with r rows, n
// columns and entries bounded by N: staircase pivots (positive, <= N),
// entries above a pivot reduced into [0, pivot), zeros left of pivots,
// free entries in non-pivot columns bounded by N.
inline void canonical_fill(std::size_t n, int N, const std::vector<std::size_t>& pivots,
                           ZMatrix& m, std::size_t row, std::size_t col,
                           std::vector<ZMatrix>& out) {
    std::size_t r = pivots.size();
    if (row == r) {
        out.push_back(m);
        return;
    }
    if (col == n) {
        canonical_fill(n, N, pivots, m, row + 1, 0, out);
        return;
    }
    if (col < pivots[row]) {
        m(row, col) = 0;
        canonical_fill(n, N, pivots, m, row, col + 1, out);
        return;
    }
    if (col == pivots[row]) {
        for (int p = 1; p <= N; ++p) {
            m(row, col) = p;
            canonical_fill(n, N, pivots, m, row, col + 1, out);
        }
        return;
    }
    // col > pivots[row]: pivot column of a later row -> entry reduced into
    // [0, pivot); the pivot value is filled later, so enumerate [0, N) here
    // and let the caller's canonical-form check discard the excess
    for (std::size_t r2 = row + 1; r2 < r; ++r2)
        if (pivots[r2] == col) {
            for (int v = 0; v < N; ++v) {
                m(row, col) = v;
                canonical_fill(n, N, pivots, m, row, col + 1, out);
            }
            return;
        }
    for (int v = -N; v <= N; ++v) {
        m(row, col) = v;
        canonical_fill(n, N, pivots, m, row, col + 1, out);
    }
}

inline void pivot_choices(std::size_t n, std::size_t r, std::size_t start,
                          std::vector<std::size_t>& cur,
                          std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == r) {
        out.push_back(cur);
        return;
    }
    for (std::size_t c = start; c < n; ++c) {
        cur.push_back(c);
        pivot_choices(n, r, c + 1, cur, out);
        cur.pop_back();
    }
}

inline bool zless(const ZMatrix& a, const ZMatrix& b) {
    if (a.rows() != b.rows()) return a.rows() < b.rows();
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) {
            if (a(r, c) < b(r, c)) return true;
            if (b(r, c) < a(r, c)) return false;
        }
    return false;
}

} // namespace detail

// One representative per rational row space with a canonical form whose
// entries are bounded by N, in deterministic order.
inline std::vector<ZMatrix> canonical_matrices(std::size_t n, int N) {
    std::vector<ZMatrix> out;
    for (std::size_t r = 1; r <= n; ++r) {
        std::vector<std::vector<std::size_t>> pivots;
        std::vector<std::size_t> cur;
        detail::pivot_choices(n, r, 0, cur, pivots);
        for (const auto& pv : pivots) {
            ZMatrix m(r, n);
            std::vector<ZMatrix> cand;
            detail::canonical_fill(n, N, pv, m, 0, 0, cand);
            for (auto& c : cand)
                if (hnf_row_canonical(c) == c) out.push_back(std::move(c));
        }
    }
    std::sort(out.begin(), out.end(), detail::zless);
    return out;
}

inline unsigned thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("AXEL_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v < 256) hw = static_cast<unsigned>(v);
    }
    return hw;
}

// ----- Exp-rotundity -------------------------------------------------------

struct RotundityVerdict {
    bool rotund = true;
    bool strong = false;
    int bound = 0;
    std::optional<ZMatrix> violating; // lexicographically least violation
    std::size_t violating_dim = 0;
    std::size_t violating_rank = 0;
    std::size_t matrices_checked = 0;
};

// Definition-2.4 check up to the entry bound: dim [M](V) >= rank M (+1 when
// strong) for every canonical nonzero M.  The enumeration is complete per
// row space because dim [M](V) depends only on the row space of M.
inline RotundityVerdict check_exp_rotund(const Variety& V, int N, bool strong) {
    if (N < 1) throw std::invalid_argument("bound must be at least 1");
    std::size_t n = std::holds_alternative<ParamVariety>(V)
                        ? std::get<ParamVariety>(V).n()
                        : std::get<LinBinVariety>(V).n;
    RotundityVerdict verdict;
    verdict.strong = strong;
    verdict.bound = N;
    std::vector<ZMatrix> mats = canonical_matrices(n, N);
    verdict.matrices_checked = mats.size();
    std::vector<int> bad(mats.size(), 0);
    std::vector<std::size_t> dims(mats.size(), 0);
    unsigned threads = static_cast<unsigned>(
        std::min<std::size_t>(thread_budget(), mats.size()));
    if (threads == 0) threads = 1;
    auto work = [&](unsigned tid) {
        for (std::size_t i = tid; i < mats.size(); i += threads) {
            std::size_t d = dim_m(mats[i], V);
            dims[i] = d;
            std::size_t need = mats[i].rows() + (strong ? 1 : 0);
            if (d < need) bad[i] = 1;
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned tidx = 0; tidx < threads; ++tidx) pool.emplace_back(work, tidx);
        for (auto& th : pool) th.join();
    }
    for (std::size_t i = 0; i < mats.size(); ++i)
        if (bad[i]) {
            verdict.rotund = false;
            verdict.violating = mats[i];
            verdict.violating_dim = dims[i];
            verdict.violating_rank = mats[i].rows();
            break;
        }
    return verdict;
}

// ----- Exp-freeness --------------------------------------------------------

struct FreeVerdict {
    bool free = true;
    std::optional<std::vector<Rational>> additive_relation;
    std::optional<std::vector<Rational>> multiplicative_relation;
};

namespace detail {

// Kernel of { m : sum m_i f_i has zero derivative along every parameter }.
inline std::vector<std::vector<Rational>> param_constant_relations(
    const std::vector<RatFunc>& funcs, const std::vector<std::size_t>& params,
    bool logarithmic) {
    if (funcs.empty()) return {};
    std::vector<std::vector<Rational>> rows;
    for (std::size_t p : params) {
        std::vector<RatFunc> ders;
        for (const auto& fn : funcs)
            ders.push_back(logarithmic ? fn.derivative(p) / fn : fn.derivative(p));
        const VarsPtr& vars = funcs.front().vars();
        MultiPoly common = MultiPoly::constant(vars, 1);
        for (const auto& d : ders)
            common = divexact(common * d.den(), poly_gcd(common, d.den()));
        std::vector<MultiPoly> cleared;
        for (const auto& d : ders) cleared.push_back(d.num() * divexact(common, d.den()));
        flatten_rows(cleared, rows);
    }
    QMatrix m(rows.size(), funcs.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < funcs.size(); ++c) m(r, c) = rows[r][c];
    return q_kernel_basis(m);
}

} // namespace detail

// Definition-2.6 freeness for parametrized varieties: no integer vector
// makes an additive combination of the x-functions or a multiplicative
// combination of the y-functions constant.
inline FreeVerdict check_exp_free(const ParamVariety& V) {
    FreeVerdict out;
    auto add = detail::param_constant_relations(V.xs, V.params, false);
    if (!add.empty()) {
        out.free = false;
        out.additive_relation = add.front();
    }
    auto mul = detail::param_constant_relations(V.ys, V.params, true);
    if (!mul.empty()) {
        out.free = false;
        out.multiplicative_relation = mul.front();
    }
    return out;
}

// Coset varieties are free exactly when they carry no equations.
inline FreeVerdict check_exp_free(const LinBinVariety& V) {
    FreeVerdict out;
    out.free = V.A.rows() == 0 && V.K.rows() == 0;
    return out;
}

inline FreeVerdict check_exp_free(const Variety& V) {
    return std::visit([](const auto& v) { return check_exp_free(v); }, V);
}

// ----- three-valued membership --------------------------------------------

enum class Tri { Yes, No, Unknown };

// Does the point with coordinate functions `point` lie on the Zariski
// closure of the image of V's parametrization?  Definite answers come from
// two sound mechanisms: when every parameter is itself a coordinate of the
// parametrization, membership reduces to one exact substitution; otherwise
// any low-degree polynomial relation of the parametrization that the point
// violates gives a definite no.  Everything else is unknown.
inline Tri point_on_variety(const ParamVariety& V, const std::vector<RatFunc>& point,
                            int degree_budget = 8, int s_degree_budget = 2) {
    std::vector<RatFunc> coords = V.all_coords();
    if (coords.size() != point.size())
        throw std::invalid_argument("coordinate count mismatch");
    if (coords == point) return Tri::Yes;

    // triangular shortcut: recover every parameter from a coordinate
    {
        std::vector<std::optional<std::size_t>> where(V.params.size());
        for (std::size_t j = 0; j < V.params.size(); ++j)
            for (std::size_t i = 0; i < coords.size(); ++i)
                if (coords[i] == RatFunc::variable(V.vars, V.params[j])) {
                    where[j] = i;
                    break;
                }
        bool all = true;
        for (const auto& w : where)
            if (!w) all = false;
        if (all) {
            std::vector<RatFunc> images;
            for (std::size_t i = 0; i < V.vars->size(); ++i)
                images.push_back(RatFunc::variable(V.vars, i));
            for (std::size_t j = 0; j < V.params.size(); ++j)
                images[V.params[j]] = point[*where[j]];
            try {
                for (std::size_t i = 0; i < coords.size(); ++i)
                    if (substitute(coords[i], images, V.vars) != point[i]) return Tri::No;
                return Tri::Yes;
            } catch (const std::domain_error&) {
                return Tri::No; // substitution hits a pole off the variety
            }
        }
    }

    // relation search: monomials s^a * prod coords^e of bounded degree
    std::vector<std::size_t> sidx;
    for (std::size_t i = 0; i < V.vars->size(); ++i)
        if (V.vars->kinds[i] == VarKind::Constant) sidx.push_back(i);
    for (int d = 1; d <= degree_budget; ++d) {
        std::vector<RatFunc> monoV, monoP;
        std::vector<ExpVec> exps;
        ExpVec e(coords.size(), 0);
        std::function<void(std::size_t, int)> gen = [&](std::size_t i, int left) {
            if (i == coords.size()) {
                exps.push_back(e);
                return;
            }
            for (int v = 0; v <= left; ++v) {
                e[i] = v;
                gen(i + 1, left - v);
            }
            e[i] = 0;
        };
        gen(0, d);
        if (exps.size() > 4000) return Tri::Unknown;
        for (const auto& ev : exps)
            for (int a = 0; a <= s_degree_budget; ++a) {
                RatFunc mv = RatFunc::constant(V.vars, 1), mp = mv;
                if (a > 0 && sidx.empty()) continue;
                if (a > 0) {
                    RatFunc s0 = RatFunc::variable(V.vars, sidx.front());
                    mv = s0.pow(a);
                    mp = mv;
                }
                for (std::size_t i = 0; i < coords.size(); ++i)
                    if (ev[i] != 0) {
                        mv *= coords[i].pow(ev[i]);
                        mp *= point[i].pow(ev[i]);
                    }
                monoV.push_back(mv);
                monoP.push_back(mp);
            }
        auto kernel = q_linear_relations(monoV);
        for (const auto& rel : kernel) {
            RatFunc acc(V.vars);
            for (std::size_t i = 0; i < monoP.size(); ++i)
                if (rel[i] != 0)
                    acc += RatFunc::constant(V.vars, rel[i]) * monoP[i];
            if (!acc.is_zero()) return Tri::No;
        }
    }
    return Tri::Unknown;
}

// ----- E_n-Exp-rotundity (Definition 4.3) ---------------------------------

inline ParamVariety pr1(const ParamVariety& V) {
    ParamVariety out;
    out.ambient = Ambient::Gn;
    out.vars = V.vars;
    out.params = V.params;
    out.xs = V.xs;
    out.ys = V.zs.at(0);
    return out;
}

struct EnRotundVerdict {
    RotundityVerdict projection;
    Tri closure = Tri::Unknown;
    bool verdict() const { return projection.rotund && closure == Tri::Yes; }
};

// pr_1(V) must be Exp-rotund and V closed under the mu_1-scaling lift
// (condition (4.2)).
inline EnRotundVerdict check_en_exp_rotund(const Equation& E, const ParamVariety& V,
                                           int N) {
    EnRotundVerdict out;
    out.projection = check_exp_rotund(pr1(V), N, false);
    RatFunc mu1 = E.mu_in(0, V.vars);
    std::vector<RatFunc> lifted = V.xs;
    RatFunc p = RatFunc::constant(V.vars, 1);
    for (std::size_t l = 0; l < V.zs.size(); ++l) {
        for (const auto& z0 : V.zs[0]) lifted.push_back(p * z0);
        p *= mu1;
    }
    out.closure = point_on_variety(V, lifted);
    return out;
}

// ----- the section-5 transforms -------------------------------------------

namespace detail {

// Symbolic H matrix in a formal variable X: column (block i, inner j) has
// entries g_{ijl}(X)/X^j, with the g-recurrence g_{ij0} = X^j,
// g_{ij,l+1} = g' + mu_i g run over the caller's table.
inline ExactMatrix symbolic_H(const Equation& E, const VarsPtr& xv, std::size_t xi) {
    std::size_t n = E.order();
    ExactMatrix H(n, n, RatFunc(xv));
    RatFunc X = RatFunc::variable(xv, xi);
    std::size_t col = 0;
    for (std::size_t i = 0; i < E.num_blocks(); ++i) {
        RatFunc mu = E.mu_in(i, xv);
        for (int j = 0; j < E.multiplicity(i); ++j, ++col) {
            RatFunc g = X.pow(j);
            for (std::size_t l = 0; l < n; ++l) {
                H(l, col) = g / X.pow(j);
                g = g.derivative(xi) + mu * g;
            }
        }
    }
    return H;
}

// Substitutes X := xfun into a symbolic matrix entry.
inline RatFunc subst_x(const RatFunc& entry, const VarsPtr& xv, std::size_t xi,
                       const RatFunc& xfun, const VarsPtr& target) {
    std::vector<RatFunc> images;
    for (std::size_t i = 0; i < xv->size(); ++i) {
        if (i == xi)
            images.push_back(xfun);
        else
            images.push_back(RatFunc::variable(target, i));
    }
    try {
        return substitute(entry, images, target);
    } catch (const std::domain_error&) {
        throw SubstitutionPole();
    }
}

} // namespace detail

struct TildeResult {
    ParamVariety v_prime;  // in G_{km}
    ParamVariety v_second; // in F^{m(k+1)}
    // canonical-system coordinates of every tuple, block-major (n rows of m)
    std::vector<std::vector<RatFunc>> canonical;
};

// V' = R-tilde(L-tilde(V)) and V'' = R(L-tilde(V)).  L-tilde applies L_x
// per tuple; R keeps the block leaders; R-tilde additionally scales the x's
// by the eigenvalues.
inline TildeResult tilde_transforms(const Equation& E, const ParamVariety& V) {
    if (V.ambient != Ambient::EnSpace)
        throw std::invalid_argument("tilde transforms expect an E_n-space variety");
    std::size_t n = E.order(), m = V.m(), k = E.num_blocks();
    VarsPtr xv = append_var(V.vars, "X__", VarKind::Formal);
    std::size_t xi = xv->size() - 1;
    ExactMatrix H = detail::symbolic_H(E, xv, xi);
    ExactMatrix L = invert(H);
    TildeResult out;
    out.canonical.assign(n, std::vector<RatFunc>(m, RatFunc(V.vars)));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t c = 0; c < n; ++c) {
            RatFunc acc(V.vars);
            for (std::size_t l = 0; l < n; ++l) {
                RatFunc entry = detail::subst_x(L(c, l), xv, xi, V.xs[i], V.vars);
                acc += entry * V.zs[l][i];
            }
            out.canonical[c][i] = acc;
        }
    }
    out.v_prime.ambient = Ambient::Gn;
    out.v_prime.vars = V.vars;
    out.v_prime.params = V.params;
    out.v_second.ambient = Ambient::EnSpace;
    out.v_second.vars = V.vars;
    out.v_second.params = V.params;
    out.v_second.xs = V.xs;
    for (std::size_t s = 0; s < k; ++s) {
        RatFunc mus = E.mu_in(s, V.vars);
        std::size_t leader = E.block_offset(s) - 1;
        for (std::size_t i = 0; i < m; ++i) {
            out.v_prime.xs.push_back(mus * V.xs[i]);
            out.v_prime.ys.push_back(out.canonical[leader][i]);
        }
        out.v_second.zs.push_back(out.canonical[leader]);
    }
    return out;
}

// ----- E_n-rotundity and E_n-freeness (Definitions 5.1/5.3) ---------------

struct EnRotund5Verdict {
    RotundityVerdict prime;
    Tri closure = Tri::Unknown;
    bool verdict() const { return prime.rotund && closure == Tri::Yes; }
};

// V' must be (strongly) Exp-rotund and V must be closed under the H-tilde
// lift of the canonical block pattern built from V''.
inline EnRotund5Verdict check_en_rotund(const Equation& E, const ParamVariety& V,
                                        int N, bool strong) {
    TildeResult tr = tilde_transforms(E, V);
    EnRotund5Verdict out;
    out.prime = check_exp_rotund(tr.v_prime, N, strong);
    // build the canonical coordinates (y_s, x y_s, ..., x^{n_s-1} y_s) from
    // the block leaders of V'' and push them through H-tilde
    std::size_t n = E.order(), m = V.m();
    VarsPtr xv = append_var(V.vars, "X__", VarKind::Formal);
    std::size_t xi = xv->size() - 1;
    ExactMatrix H = detail::symbolic_H(E, xv, xi);
    std::vector<RatFunc> lifted = V.xs;
    std::vector<std::vector<RatFunc>> zlift(n, std::vector<RatFunc>(m, RatFunc(V.vars)));
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<RatFunc> canon;
        std::size_t col = 0;
        for (std::size_t s = 0; s < E.num_blocks(); ++s) {
            RatFunc xp = RatFunc::constant(V.vars, 1);
            for (int j = 0; j < E.multiplicity(s); ++j, ++col) {
                canon.push_back(xp * tr.v_second.zs[s][i]);
                xp *= V.xs[i];
            }
        }
        for (std::size_t l = 0; l < n; ++l) {
            RatFunc acc(V.vars);
            for (std::size_t c = 0; c < n; ++c)
                acc += detail::subst_x(H(l, c), xv, xi, V.xs[i], V.vars) * canon[c];
            zlift[l][i] = acc;
        }
    }
    for (const auto& blk : zlift) lifted.insert(lifted.end(), blk.begin(), blk.end());
    out.closure = point_on_variety(V, lifted);
    return out;
}

// E_n-freeness: Exp-freeness of V', defined only under Q-independent
// eigenvalues (the standing assumption of the transforms).
inline FreeVerdict check_en_free(const Equation& E, const ParamVariety& V) {
    std::vector<RatFunc> mus;
    for (std::size_t i = 0; i < E.num_blocks(); ++i) mus.push_back(E.mu(i));
    if (!q_linear_relations(mus).empty()) throw DependentEigenvalues();
    return check_exp_free(tilde_transforms(E, V).v_prime);
}

// ----- the Lemma 4.5 point lift -------------------------------------------

// Lifts exp points (x_i, y_i) with Exp(mu_1 x_i, y_i) to E_n solutions
// (x_i, y_i, mu_1 y_i, ..., mu_1^{n-1} y_i).
inline std::vector<Solution> lift_exp_point(const Equation& E,
                                            const std::vector<ExpInstance>& points) {
    std::vector<Solution> out;
    for (const auto& [x, y] : points) {
        const auto& f = x.field();
        FieldElement mu1 = f->element(E.mu_in(0, f->vars()));
        if (derive(y) != y * derive(mu1 * x)) throw NotExpPoint();
        Solution sol;
        sol.x = x;
        FieldElement p = f->constant(1);
        for (std::size_t l = 0; l < E.order(); ++l) {
            sol.z.push_back(p * y);
            p = p * mu1;
        }
        if (!en_membership(E, sol)) throw NotExpPoint();
        out.push_back(std::move(sol));
    }
    return out;
}

// ----- the Lemma 2.8 scaling ----------------------------------------------

inline Variety scaling_transform(const Variety& V, const Rational& c) {
    if (c == 0) throw ZeroScalar();
    if (std::holds_alternative<ParamVariety>(V)) {
        ParamVariety out = std::get<ParamVariety>(V);
        for (auto& x : out.xs) x *= RatFunc::constant(out.vars, c);
        return out;
    }
    LinBinVariety out = std::get<LinBinVariety>(V);
    // A x = 0 becomes (1/c) A x' = 0, same row space
    Rational inv = 1 / c;
    for (std::size_t r = 0; r < out.A.rows(); ++r)
        for (std::size_t col = 0; col < out.A.cols(); ++col) out.A(r, col) *= inv;
    return out;
}

} // namespace axel

#endif
