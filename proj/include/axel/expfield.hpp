#ifndef AXEL_EXPFIELD_HPP
#define AXEL_EXPFIELD_HPP

#include <axel/matrix.hpp>

#include <memory>

namespace axel {

struct ConstantExponent : std::runtime_error {
    explicit ConstantExponent(const std::string& m) : std::runtime_error(m) {}
};
struct ConstantBase : std::runtime_error {
    ConstantBase() : std::runtime_error("derivation base is constant") {}
};

class ExpField;
using ExpFieldPtr = std::shared_ptr<const ExpField>;

class FieldElement;
struct AdjoinResult;

// The differential field K = C(t)[u_1^{+-1},...,u_r^{+-1}] with C = Q(s_1..s_p),
// D t = 1 and D u_j = h_j'(t) u_j.  Each stored exponent h_j is a polynomial in
// t over C with zero constant term; the h_j are Q-linearly independent, which
// makes t, u_1,...,u_r algebraically independent over C.
class ExpField : public std::enable_shared_from_this<ExpField> {
public:
    static ExpFieldPtr create(const std::vector<std::string>& const_symbols,
                              const std::string& base = "t") {
        std::vector<std::string> names = const_symbols;
        std::vector<VarKind> kinds(const_symbols.size(), VarKind::Constant);
        names.push_back(base);
        kinds.push_back(VarKind::Base);
        auto f = std::shared_ptr<ExpField>(new ExpField);
        f->vars_ = make_vars(names, kinds);
        f->n_const_ = const_symbols.size();
        return f;
    }

    const VarsPtr& vars() const { return vars_; }
    std::size_t num_constants() const { return n_const_; }
    std::size_t t_index() const { return n_const_; }
    std::size_t num_exponents() const { return exponents_.size(); }
    std::size_t u_index(std::size_t j) const { return n_const_ + 1 + j; }
    const RatFunc& exponent(std::size_t j) const { return exponents_[j]; }
    const RatFunc& exponent_derivative(std::size_t j) const { return hprime_[j]; }

    // Indices of t and the u_j: the transcendence carriers over C.
    std::vector<std::size_t> carrier_indices() const {
        std::vector<std::size_t> v;
        for (std::size_t i = n_const_; i < vars_->size(); ++i) v.push_back(i);
        return v;
    }

    std::vector<std::size_t> u_indices() const {
        std::vector<std::size_t> v;
        for (std::size_t j = 0; j < exponents_.size(); ++j) v.push_back(u_index(j));
        return v;
    }

    bool same_structure(const ExpField& o) const {
        return same_vars(vars_, o.vars_) && exponents_ == o.exponents_;
    }

    // Checks the basis invariant: the stored exponents (all with zero
    // constant term) are Q-linearly independent.
    bool basis_independent() const;

    FieldElement element(const RatFunc& v) const;
    FieldElement constant(const Rational& c) const;
    FieldElement t() const;
    FieldElement s(std::size_t i) const;
    FieldElement u(std::size_t j) const;

private:
    ExpField() = default;
    friend struct AdjoinResult;
    friend AdjoinResult adjoin_exponent(const ExpFieldPtr& f, const RatFunc& h);

    VarsPtr vars_;
    std::size_t n_const_ = 0;
    std::vector<RatFunc> exponents_;
    std::vector<RatFunc> hprime_;
};

// An element of an ExpField: a canonical rational function in (s..,t,u..).
class FieldElement {
public:
    FieldElement() = default;
    FieldElement(ExpFieldPtr field, RatFunc v) : field_(std::move(field)), v_(std::move(v)) {
        if (!same_vars(field_->vars(), v_.vars()))
            throw std::invalid_argument("element value over wrong variable table");
    }

    const ExpFieldPtr& field() const { return field_; }
    const RatFunc& value() const { return v_; }
    bool is_zero() const { return v_.is_zero(); }

    bool is_constant() const { return v_.independent_of(field_->carrier_indices()); }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        a.check(b);
        return FieldElement(a.field_, a.v_ + b.v_);
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        a.check(b);
        return FieldElement(a.field_, a.v_ - b.v_);
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        a.check(b);
        return FieldElement(a.field_, a.v_ * b.v_);
    }
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        a.check(b);
        return FieldElement(a.field_, a.v_ / b.v_);
    }
    FieldElement operator-() const { return FieldElement(field_, -v_); }
    FieldElement pow(int k) const { return FieldElement(field_, v_.pow(k)); }

    bool operator==(const FieldElement& o) const { return v_ == o.v_; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    std::string str() const { return v_.str(); }

private:
    void check(const FieldElement& o) const {
        if (!field_->same_structure(*o.field_))
            throw std::invalid_argument("elements of different fields");
    }

    ExpFieldPtr field_;
    RatFunc v_;
};

inline FieldElement ExpField::element(const RatFunc& v) const {
    return FieldElement(shared_from_this(), v);
}
inline FieldElement ExpField::constant(const Rational& c) const {
    return element(RatFunc::constant(vars_, c));
}
inline FieldElement ExpField::t() const { return element(RatFunc::variable(vars_, t_index())); }
inline FieldElement ExpField::s(std::size_t i) const {
    if (i >= n_const_) throw std::out_of_range("constant symbol index");
    return element(RatFunc::variable(vars_, i));
}
inline FieldElement ExpField::u(std::size_t j) const {
    if (j >= exponents_.size()) throw std::out_of_range("exponent index");
    return element(RatFunc::variable(vars_, u_index(j)));
}

// ----- derivation ---------------------------------------------------------

inline RatFunc derive_raw(const ExpField& f, const RatFunc& v) {
    const VarsPtr& vars = f.vars();
    auto dpoly = [&](const MultiPoly& p) {
        RatFunc acc(RatFunc(p.derivative(f.t_index())));
        for (std::size_t j = 0; j < f.num_exponents(); ++j) {
            MultiPoly pj = p.derivative(f.u_index(j));
            if (pj.is_zero()) continue;
            acc += f.exponent_derivative(j) *
                   RatFunc(pj * MultiPoly::variable(vars, f.u_index(j)));
        }
        return acc;
    };
    RatFunc pn(v.num()), pd(v.den());
    return (dpoly(v.num()) * pd - pn * dpoly(v.den())) / (pd * pd);
}

inline FieldElement derive(const FieldElement& a) {
    return FieldElement(a.field(), derive_raw(*a.field(), a.value()));
}

inline bool is_constant(const FieldElement& a) { return a.is_constant(); }

// partial(x, a) = D(a)/D(x); errors when x is constant.
inline FieldElement partial(const FieldElement& x, const FieldElement& a) {
    RatFunc dx = derive_raw(*x.field(), x.value());
    if (dx.is_zero()) throw ConstantBase();
    return FieldElement(a.field(), derive_raw(*a.field(), a.value()) / dx);
}

// ----- exponent lattice management ----------------------------------------

namespace detail {

// Writes the coefficient data of polynomials-in-t over C as rational rows:
// one column per (s-monomial, t-power) pair occurring.  Denominators in s
// are cleared by the common denominator first.
inline QMatrix exponent_coeff_matrix(const std::vector<RatFunc>& hs, const VarsPtr& vars) {
    MultiPoly common = MultiPoly::constant(vars, 1);
    for (const auto& h : hs) common = divexact(common * h.den(), poly_gcd(common, h.den()));
    std::vector<MultiPoly> cleared;
    for (const auto& h : hs) cleared.push_back(h.num() * divexact(common, h.den()));
    std::map<ExpVec, std::size_t, GrlexGreater> cols;
    for (const auto& p : cleared)
        for (const auto& [e, c] : p.terms())
            if (cols.find(e) == cols.end()) cols.emplace(e, cols.size());
    QMatrix m(cols.size(), hs.size());
    for (std::size_t j = 0; j < cleared.size(); ++j)
        for (const auto& [e, c] : cleared[j].terms()) m(cols.at(e), j) = c;
    return m;
}

} // namespace detail

inline bool ExpField::basis_independent() const {
    if (exponents_.empty()) return true;
    return q_kernel_basis(detail::exponent_coeff_matrix(exponents_, vars_)).empty();
}

struct AdjoinResult {
    ExpFieldPtr field;       // possibly extended / rescaled field
    FieldElement expression; // exp(h) as a Laurent monomial in the new field
    // transports an element of the pre-adjoin field into the new field
    FieldElement transport(const FieldElement& e) const {
        if (e.field()->same_structure(*field)) return field->element(
            e.value().embedded(field->vars(), embed_map));
        RatFunc v = e.value();
        for (std::size_t j : rescaled_u) v = v.exponents_scaled(j, rescale_factor);
        return field->element(v.embedded(field->vars(), embed_map));
    }

    std::vector<std::size_t> embed_map; // old var index -> new var index
    std::vector<std::size_t> rescaled_u;
    int rescale_factor = 1;
};

// Adjoins exp(h) for a polynomial h in t over C.  If h's nonconstant part
// lies in the Q-span of the basis, the basis is rescaled by the minimal
// integer d making all coordinates integral; otherwise a new generator is
// appended.  h must be nonconstant with zero constant term.
inline AdjoinResult adjoin_exponent(const ExpFieldPtr& f, const RatFunc& h) {
    const VarsPtr& vars = f->vars();
    std::vector<std::size_t> carriers = f->carrier_indices();
    if (!h.den().independent_of(carriers))
        throw std::invalid_argument("exponent denominator must be constant");
    for (std::size_t j = 0; j < f->num_exponents(); ++j)
        if (h.num().depends_on(f->u_index(j)))
            throw std::invalid_argument("exponent must be a polynomial in t over C");
    if (!h.num().depends_on(f->t_index()))
        throw ConstantExponent("exponent is constant");
    // split off the constant (t-free) part
    MultiPoly cpart(vars), ncpart(vars);
    for (const auto& [e, c] : h.num().terms())
        (e[f->t_index()] == 0 ? cpart : ncpart).add_term(e, c);
    if (!cpart.is_zero())
        throw ConstantExponent("exponent has a nonzero constant part");
    RatFunc hn(ncpart, h.den());

    AdjoinResult res;
    std::size_t old_nv = vars->size();
    // try to express hn in the current lattice
    if (f->num_exponents() > 0) {
        std::vector<RatFunc> all;
        for (std::size_t j = 0; j < f->num_exponents(); ++j) all.push_back(f->exponent(j));
        all.push_back(hn);
        QMatrix m = detail::exponent_coeff_matrix(all, vars);
        QMatrix basis_part(m.rows(), m.cols() - 1);
        std::vector<Rational> target(m.rows());
        for (std::size_t r = 0; r < m.rows(); ++r) {
            for (std::size_t c = 0; c + 1 < m.cols(); ++c) basis_part(r, c) = m(r, c);
            target[r] = m(r, m.cols() - 1);
        }
        if (auto coords = q_solve(basis_part, target)) {
            Integer d = 1;
            for (const auto& c : *coords) d = lcm(d, denom(c));
            int di = static_cast<int>(d.get_si());
            ExpFieldPtr nf = f;
            if (di != 1) {
                auto g = std::shared_ptr<ExpField>(new ExpField);
                g->vars_ = vars;
                g->n_const_ = f->num_constants();
                Rational inv(1, di);
                inv.canonicalize();
                for (std::size_t j = 0; j < f->num_exponents(); ++j) {
                    g->exponents_.push_back(f->exponent(j) * RatFunc::constant(vars, inv));
                    g->hprime_.push_back(f->exponent_derivative(j) *
                                         RatFunc::constant(vars, inv));
                }
                nf = g;
            }
            res.field = nf;
            res.rescale_factor = di;
            if (di != 1) res.rescaled_u = f->u_indices();
            for (std::size_t i = 0; i < old_nv; ++i) res.embed_map.push_back(i);
            RatFunc expr = RatFunc::constant(vars, 1);
            for (std::size_t j = 0; j < coords->size(); ++j) {
                Rational scaled = (*coords)[j] * di;
                long e = numer(scaled).get_si();
                if (e != 0)
                    expr *= RatFunc::variable(vars, f->u_index(j)).pow(static_cast<int>(e));
            }
            res.expression = nf->element(expr);
            return res;
        }
    }
    // independent: append a new generator
    std::string name;
    for (int k = static_cast<int>(f->num_exponents()) + 1;; ++k) {
        name = "u" + std::to_string(k);
        if (vars->index_of(name) < 0) break;
    }
    auto g = std::shared_ptr<ExpField>(new ExpField);
    g->vars_ = append_var(vars, name, VarKind::ExpGen);
    g->n_const_ = f->num_constants();
    std::vector<std::size_t> emap;
    for (std::size_t i = 0; i < old_nv; ++i) emap.push_back(i);
    for (std::size_t j = 0; j < f->num_exponents(); ++j) {
        g->exponents_.push_back(f->exponent(j).embedded(g->vars_, emap));
        g->hprime_.push_back(f->exponent_derivative(j).embedded(g->vars_, emap));
    }
    RatFunc hne = hn.embedded(g->vars_, emap);
    g->exponents_.push_back(hne);
    g->hprime_.push_back(
        RatFunc(hne.num().derivative(g->t_index()), hne.den()));
    res.field = g;
    res.embed_map = emap;
    res.expression = g->element(RatFunc::variable(g->vars_, g->vars_->size() - 1));
    return res;
}

// Convenience: adjoins and strips a (harmless) nonzero constant part is NOT
// done here; callers that may pass a nonzero constant part must strip it
// themselves (the canonical fundamental system does).
inline RatFunc nonconstant_part(const ExpField& f, const RatFunc& h) {
    MultiPoly nc(f.vars());
    for (const auto& [e, c] : h.num().terms())
        if (e[f.t_index()] != 0) nc.add_term(e, c);
    return RatFunc(nc, h.den());
}

} // namespace axel

#endif
