#ifndef AXEL_TRANSCENDENCE_HPP
#define AXEL_TRANSCENDENCE_HPP

#include <axel/lindeq.hpp>

namespace axel {

// ----- transcendence degree over C ----------------------------------------

// td over C of the field generated by the elements: rank of the Jacobian
// with respect to the carriers t, u_1, ..., u_r.  Sound because the carriers
// are algebraically independent over C (the exponent-basis invariant) and
// the characteristic is 0.
inline std::size_t td_over_C(const ExpFieldPtr& field,
                             const std::vector<FieldElement>& elements) {
    std::vector<std::size_t> carriers = field->carrier_indices();
    ExactMatrix j(elements.size(), carriers.size(), RatFunc(field->vars()));
    for (std::size_t r = 0; r < elements.size(); ++r)
        for (std::size_t c = 0; c < carriers.size(); ++c)
            j(r, c) = elements[r].value().derivative(carriers[c]);
    return rank(j);
}

// ----- dimension of images of parametrizations ----------------------------

// Dimension of the Zariski closure of the image of w -> (phi_1(w), ...):
// rank of the Jacobian over the parameter function field.
inline std::size_t image_dim(const std::vector<RatFunc>& phi,
                             const std::vector<std::size_t>& params) {
    if (phi.empty()) return 0;
    const VarsPtr& vars = phi.front().vars();
    ExactMatrix j(phi.size(), params.size(), RatFunc(vars));
    for (std::size_t r = 0; r < phi.size(); ++r)
        for (std::size_t c = 0; c < params.size(); ++c)
            j(r, c) = phi[r].derivative(params[c]);
    return rank(j);
}

// Convenience: differentiate with respect to the Param-kind variables, or
// all variables when none is marked.
inline std::size_t image_dim(const std::vector<RatFunc>& phi) {
    if (phi.empty()) return 0;
    const VarsPtr& vars = phi.front().vars();
    std::vector<std::size_t> params;
    for (std::size_t i = 0; i < vars->size(); ++i)
        if (vars->kinds[i] == VarKind::Param) params.push_back(i);
    if (params.empty())
        for (std::size_t i = 0; i < vars->size(); ++i) params.push_back(i);
    return image_dim(phi, params);
}

// ----- Q-linear relations --------------------------------------------------

namespace detail {

// Splits an exponent vector into its carrier part and its constant part.
inline ExpVec mask_to(const ExpVec& e, const std::vector<std::size_t>& keep) {
    ExpVec r(e.size(), 0);
    for (std::size_t i : keep) r[i] = e[i];
    return r;
}

// Expands p as sum over carrier monomials mu of q_mu(s) * mu.
inline std::map<ExpVec, MultiPoly, GrlexGreater>
carrier_expansion(const MultiPoly& p, const std::vector<std::size_t>& carriers) {
    std::map<ExpVec, MultiPoly, GrlexGreater> out;
    for (const auto& [e, c] : p.terms()) {
        ExpVec mu = mask_to(e, carriers);
        ExpVec rest = e;
        for (std::size_t i : carriers) rest[i] = 0;
        auto it = out.find(mu);
        if (it == out.end()) it = out.emplace(mu, MultiPoly(p.vars())).first;
        it->second.add_term(rest, c);
    }
    return out;
}

// Builds the Q-matrix of the conditions "sum_i m_i given_i(s) = 0", one row
// per s-monomial occurring in any of the given polynomials.
inline void flatten_rows(const std::vector<MultiPoly>& given,
                         std::vector<std::vector<Rational>>& rows) {
    std::map<ExpVec, std::size_t, GrlexGreater> seen;
    std::vector<std::vector<Rational>> local;
    for (std::size_t i = 0; i < given.size(); ++i)
        for (const auto& [e, c] : given[i].terms()) {
            auto it = seen.find(e);
            if (it == seen.end()) {
                it = seen.emplace(e, local.size()).first;
                local.emplace_back(given.size(), Rational(0));
            }
            local[it->second][i] = c;
        }
    for (auto& r : local) rows.push_back(std::move(r));
}

} // namespace detail

struct LdimResult {
    std::size_t dimension = 0;
    std::vector<std::vector<Rational>> relations; // basis of {m : sum m_i x_i in C}
};

// Q-linear dimension of the images of the elements in K/C together with a
// canonical basis of the relation space {m : sum m_i x_i in C}.  The sum
// lies in C iff, over the common denominator Q, the carrier expansion of
// sum m_i P_i is proportional to that of Q with a C-scalar; eliminating the
// scalar by cross products against a fixed monomial of Q leaves Q-linear
// conditions on m, flattened over the s-monomial basis.
inline LdimResult ldim_mod_C(const ExpFieldPtr& field,
                             const std::vector<FieldElement>& elements) {
    LdimResult res;
    std::size_t n = elements.size();
    if (n == 0) return res;
    const VarsPtr& vars = field->vars();
    std::vector<std::size_t> carriers = field->carrier_indices();

    MultiPoly common = MultiPoly::constant(vars, 1);
    for (const auto& x : elements)
        common = divexact(common * x.value().den(), poly_gcd(common, x.value().den()));
    std::vector<std::map<ExpVec, MultiPoly, GrlexGreater>> P;
    for (const auto& x : elements)
        P.push_back(detail::carrier_expansion(
            x.value().num() * divexact(common, x.value().den()), carriers));
    auto Qexp = detail::carrier_expansion(common, carriers);
    const ExpVec& mu0 = Qexp.begin()->first;
    const MultiPoly& q0 = Qexp.begin()->second;

    std::map<ExpVec, int, GrlexGreater> keys;
    for (const auto& pi : P)
        for (const auto& [mu, c] : pi) keys[mu] = 1;
    for (const auto& [mu, c] : Qexp) keys[mu] = 1;

    std::vector<std::vector<Rational>> rows;
    MultiPoly zero(vars);
    for (const auto& [mu, tag] : keys) {
        if (mu == mu0) continue;
        MultiPoly qmu = zero;
        if (auto it = Qexp.find(mu); it != Qexp.end()) qmu = it->second;
        std::vector<MultiPoly> cond;
        for (std::size_t i = 0; i < n; ++i) {
            MultiPoly pimu = zero, pimu0 = zero;
            if (auto it = P[i].find(mu); it != P[i].end()) pimu = it->second;
            if (auto it = P[i].find(mu0); it != P[i].end()) pimu0 = it->second;
            cond.push_back(pimu * q0 - pimu0 * qmu);
        }
        detail::flatten_rows(cond, rows);
    }

    QMatrix m(rows.size(), n);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = rows[r][c];
    res.relations = q_kernel_basis(m);
    res.dimension = n - res.relations.size();
    return res;
}

// Canonical basis of {m : sum m_i w_i = 0 exactly}, flattened over all
// monomials of the common-denominator forms.
inline std::vector<std::vector<Rational>> q_linear_relations(
    const std::vector<RatFunc>& w) {
    if (w.empty()) return {};
    const VarsPtr& vars = w.front().vars();
    MultiPoly common = MultiPoly::constant(vars, 1);
    for (const auto& x : w)
        common = divexact(common * x.den(), poly_gcd(common, x.den()));
    std::vector<MultiPoly> cleared;
    for (const auto& x : w) cleared.push_back(x.num() * divexact(common, x.den()));
    std::vector<std::vector<Rational>> rows;
    detail::flatten_rows(cleared, rows);
    QMatrix m(rows.size(), w.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < w.size(); ++c) m(r, c) = rows[r][c];
    return q_kernel_basis(m);
}

// Multiplicative relations: basis of {m : prod y_i^{m_i} in C}, via the
// logarithmic derivatives (the product is constant iff sum m_i D y_i / y_i
// vanishes, and C is exactly the kernel of D).
inline std::vector<std::vector<Rational>> mult_relations(
    const ExpFieldPtr& field, const std::vector<FieldElement>& elements) {
    std::vector<RatFunc> logd;
    for (const auto& y : elements) {
        if (y.is_zero()) throw std::domain_error("multiplicative relation of zero");
        logd.push_back(derive_raw(*field, y.value()) / y.value());
    }
    return q_linear_relations(logd);
}

} // namespace axel

#endif
