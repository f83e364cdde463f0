#ifndef AXEL_MULTIPOLY_HPP
#define AXEL_MULTIPOLY_HPP

#include <axel/rational.hpp>
#include <axel/vars.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <vector>

namespace axel {

using ExpVec = std::vector<int>;

// Graded lexicographic order, largest term first.
struct GrlexGreater {
    bool operator()(const ExpVec& a, const ExpVec& b) const {
        long da = std::accumulate(a.begin(), a.end(), 0L);
        long db = std::accumulate(b.begin(), b.end(), 0L);
        if (da != db) return da > db;
        return a > b;
    }
};

// Multivariate polynomial with rational coefficients over a fixed variable
// table.  No zero coefficients are stored; term order is grlex, so equality
// of canonical forms is structural equality.
class MultiPoly {
public:
    using TermMap = std::map<ExpVec, Rational, GrlexGreater>;

    MultiPoly() = default;
    explicit MultiPoly(VarsPtr vars) : vars_(std::move(vars)) {}

    static MultiPoly constant(VarsPtr vars, const Rational& c) {
        MultiPoly p(std::move(vars));
        if (c != 0) p.terms_[ExpVec(p.vars_->size(), 0)] = c;
        return p;
    }

    static MultiPoly variable(VarsPtr vars, std::size_t idx, int power = 1) {
        MultiPoly p(std::move(vars));
        if (idx >= p.vars_->size()) throw std::out_of_range("variable index");
        ExpVec e(p.vars_->size(), 0);
        e[idx] = power;
        p.terms_[std::move(e)] = 1;
        return p;
    }

    const VarsPtr& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        if (terms_.empty()) return true;
        if (terms_.size() > 1) return false;
        const ExpVec& e = terms_.begin()->first;
        return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    }

    // True when no variable from `idxs` occurs.
    bool independent_of(const std::vector<std::size_t>& idxs) const {
        for (const auto& [e, c] : terms_)
            for (std::size_t i : idxs)
                if (e[i] != 0) return false;
        return true;
    }

    bool depends_on(std::size_t idx) const {
        for (const auto& [e, c] : terms_)
            if (e[idx] != 0) return true;
        return false;
    }

    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_constant()) throw std::logic_error("not a constant polynomial");
        return terms_.begin()->second;
    }

    int degree_in(std::size_t idx) const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max(d, e[idx]);
        return d; // -1 for the zero polynomial
    }

    long total_degree() const {
        long d = -1;
        for (const auto& [e, c] : terms_)
            d = std::max(d, std::accumulate(e.begin(), e.end(), 0L));
        return d;
    }

    const Rational& leading_coeff() const {
        if (terms_.empty()) throw std::logic_error("zero polynomial has no leading coefficient");
        return terms_.begin()->second;
    }

    const ExpVec& leading_exp() const {
        if (terms_.empty()) throw std::logic_error("zero polynomial has no leading term");
        return terms_.begin()->first;
    }

    void add_term(const ExpVec& e, const Rational& c) {
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    MultiPoly operator-() const {
        MultiPoly r(vars_);
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        check_vars(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        check_vars(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_vars(b);
        MultiPoly r(a.vars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                ExpVec e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    MultiPoly& operator*=(const Rational& c) {
        if (c == 0) { terms_.clear(); return *this; }
        for (auto& [e, v] : terms_) v *= c;
        return *this;
    }
    friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
    friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }

    MultiPoly pow(int k) const {
        if (k < 0) throw std::invalid_argument("negative power of a polynomial");
        MultiPoly r = constant(vars_, 1);
        MultiPoly b = *this;
        while (k > 0) {
            if (k & 1) r *= b;
            b = (k >>= 1) ? b * b : b;
        }
        return r;
    }

    // Formal partial derivative with respect to variable idx.
    MultiPoly derivative(std::size_t idx) const {
        MultiPoly r(vars_);
        for (const auto& [e, c] : terms_) {
            if (e[idx] == 0) continue;
            ExpVec d = e;
            d[idx] -= 1;
            r.add_term(d, c * e[idx]);
        }
        return r;
    }

    bool operator==(const MultiPoly& o) const {
        return same_vars(vars_, o.vars_) && terms_ == o.terms_;
    }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    // Deterministic total order (used for canonical choices, not math).
    bool operator<(const MultiPoly& o) const {
        auto ia = terms_.begin(), ib = o.terms_.begin();
        GrlexGreater gt;
        for (; ia != terms_.end() && ib != o.terms_.end(); ++ia, ++ib) {
            if (gt(ia->first, ib->first)) return false;
            if (gt(ib->first, ia->first)) return true;
            int c = cmp(ia->second, ib->second);
            if (c != 0) return c < 0;
        }
        return ib != o.terms_.end();
    }

    // Re-expresses this polynomial over a larger table.  `map[i]` is the
    // index of old variable i in the new table.
    MultiPoly embedded(const VarsPtr& target, const std::vector<std::size_t>& map) const {
        MultiPoly r(target);
        for (const auto& [e, c] : terms_) {
            ExpVec ne(target->size(), 0);
            for (std::size_t i = 0; i < e.size(); ++i) ne[map[i]] = e[i];
            r.terms_[std::move(ne)] = c;
        }
        return r;
    }

    // Multiplies the exponents of variable idx by factor (lattice rescale).
    MultiPoly exponents_scaled(std::size_t idx, int factor) const {
        MultiPoly r(vars_);
        for (const auto& [e, c] : terms_) {
            ExpVec ne = e;
            ne[idx] *= factor;
            r.terms_[std::move(ne)] = c;
        }
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            Rational ac = abs(c);
            if (first) {
                if (c < 0) os << "-";
                first = false;
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            bool hasvar = false;
            std::ostringstream vs;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (hasvar) vs << "*";
                vs << vars_->names[i];
                if (e[i] != 1) vs << "^" << e[i];
                hasvar = true;
            }
            if (!hasvar) {
                os << to_string(ac);
            } else {
                if (ac != 1) os << to_string(ac) << "*";
                os << vs.str();
            }
        }
        return os.str();
    }

private:
    void check_vars(const MultiPoly& o) const {
        if (!same_vars(vars_, o.vars_))
            throw std::invalid_argument("polynomials over different variable tables");
    }

    VarsPtr vars_;
    TermMap terms_;
};

// ----- exact division and gcd -------------------------------------------

// Exact division: returns a/b, throws if b does not divide a.
inline MultiPoly divexact(const MultiPoly& a, const MultiPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
    MultiPoly q(a.vars());
    MultiPoly r = a;
    const ExpVec& lb = b.leading_exp();
    const Rational& cb = b.leading_coeff();
    while (!r.is_zero()) {
        const ExpVec& lr = r.leading_exp();
        ExpVec e(lr.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
            e[i] = lr[i] - lb[i];
            if (e[i] < 0) throw std::logic_error("divexact: not divisible");
        }
        Rational c = r.leading_coeff() / cb;
        MultiPoly m(a.vars());
        m.add_term(e, c);
        q += m;
        r -= m * b;
    }
    return q;
}

namespace detail {

// Univariate view of a multivariate polynomial in variable idx.
inline std::map<int, MultiPoly> univariate_view(const MultiPoly& p, std::size_t idx) {
    std::map<int, MultiPoly> v;
    for (const auto& [e, c] : p.terms()) {
        int d = e[idx];
        ExpVec rest = e;
        rest[idx] = 0;
        auto it = v.find(d);
        if (it == v.end()) it = v.emplace(d, MultiPoly(p.vars())).first;
        it->second.add_term(rest, c);
    }
    return v;
}

inline MultiPoly from_univariate(const std::map<int, MultiPoly>& v, std::size_t idx,
                                 const VarsPtr& vars) {
    MultiPoly r(vars);
    for (const auto& [d, coeff] : v)
        r += coeff * MultiPoly::variable(vars, idx, d);
    return r;
}

inline int highest_var(const MultiPoly& a, const MultiPoly& b) {
    for (int i = static_cast<int>(a.vars()->size()) - 1; i >= 0; --i)
        if (a.depends_on(i) || b.depends_on(i)) return i;
    return -1;
}

} // namespace detail

inline MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);

// Normalizes so coefficients are coprime integers with positive leading
// (grlex) coefficient.  Deterministic representative of the associate class.
inline MultiPoly primitive_normalize(const MultiPoly& p) {
    if (p.is_zero()) return p;
    Integer num_gcd = 0, den_lcm = 1;
    for (const auto& [e, c] : p.terms()) {
        num_gcd = gcd(num_gcd, numer(c));
        den_lcm = lcm(den_lcm, denom(c));
    }
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    if (p.leading_coeff() < 0) scale = -scale;
    return p * scale;
}

// Content of p viewed as univariate in idx: gcd of the coefficients.
inline MultiPoly poly_content(const MultiPoly& p, std::size_t idx) {
    auto view = detail::univariate_view(p, idx);
    MultiPoly g(p.vars());
    for (const auto& [d, c] : view) g = poly_gcd(g, c);
    return g;
}

// Pseudo-remainder where every reduction step is followed by removal of the
// content in the main variable.  Valid inside a primitive PRS: scaling chain
// elements by the coefficient field does not change the gcd.
inline MultiPoly pseudo_rem_primitive(const MultiPoly& a, const MultiPoly& b,
                                      std::size_t idx) {
    int db = b.degree_in(idx);
    auto bv = detail::univariate_view(b, idx);
    MultiPoly lb = bv.rbegin()->second;
    MultiPoly r = a;
    MultiPoly xi = MultiPoly::variable(a.vars(), idx);
    while (!r.is_zero() && r.degree_in(idx) >= db) {
        auto rv = detail::univariate_view(r, idx);
        int dr = rv.rbegin()->first;
        MultiPoly lr = rv.rbegin()->second;
        r = r * lb - b * lr * xi.pow(dr - db);
        if (!r.is_zero()) {
            MultiPoly c = poly_content(r, idx);
            if (!(c.is_constant())) r = divexact(r, c);
            r = primitive_normalize(r);
        }
    }
    return r;
}

inline bool is_monomial(const MultiPoly& p) { return p.terms().size() == 1; }

// gcd of a monomial with an arbitrary polynomial: min exponents, unit coeff.
inline MultiPoly monomial_gcd(const MultiPoly& mono, const MultiPoly& p) {
    ExpVec e = mono.leading_exp();
    for (const auto& [pe, c] : p.terms())
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::min(e[i], pe[i]);
    MultiPoly r(mono.vars());
    r.add_term(e, 1);
    return r;
}

namespace detail {

// Arithmetic modulo the Mersenne prime 2^61 - 1.
constexpr std::uint64_t kModP = (1ULL << 61) - 1;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kModP);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a);
        a = mulmod(a, a);
        e >>= 1;
    }
    return r;
}

inline std::uint64_t invmod(std::uint64_t a) { return powmod(a, kModP - 2); }

inline std::optional<std::uint64_t> rat_mod(const Rational& c) {
    std::uint64_t n = mpz_fdiv_ui(numer(c).get_mpz_t(), kModP);
    std::uint64_t d = mpz_fdiv_ui(denom(c).get_mpz_t(), kModP);
    if (d == 0) return std::nullopt;
    return mulmod(n, invmod(d));
}

// Univariate polynomial over Z_p as degree -> coefficient.
using UniPolyP = std::map<int, std::uint64_t>;

inline int uni_deg(const UniPolyP& p) { return p.empty() ? -1 : p.rbegin()->first; }

inline int uni_gcd_degree(UniPolyP a, UniPolyP b) {
    while (!b.empty()) {
        int db = uni_deg(b);
        std::uint64_t lbinv = invmod(b.rbegin()->second);
        while (uni_deg(a) >= db) {
            int da = uni_deg(a);
            std::uint64_t f = mulmod(a.rbegin()->second, lbinv);
            for (const auto& [d, c] : b) {
                int dd = d + da - db;
                auto it = a.find(dd);
                std::uint64_t cur = (it == a.end() ? 0 : it->second);
                std::uint64_t v = (cur + kModP - mulmod(f, c)) % kModP;
                if (v == 0) a.erase(dd);
                else a[dd] = v;
            }
            a.erase(da);
        }
        std::swap(a, b);
    }
    return uni_deg(a);
}

// Specializes all variables except idx at the given residues; returns the
// univariate image mod p, or nullopt if it degenerates.
inline std::optional<UniPolyP> specialize_mod(const MultiPoly& p, std::size_t idx,
                                              const std::vector<std::uint64_t>& vals) {
    UniPolyP u;
    for (const auto& [e, c] : p.terms()) {
        auto cm = rat_mod(c);
        if (!cm) return std::nullopt;
        std::uint64_t v = *cm;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i == idx || e[i] == 0) continue;
            v = mulmod(v, powmod(vals[i], e[i]));
        }
        auto it = u.find(e[idx]);
        if (it == u.end()) {
            if (v != 0) u[e[idx]] = v;
        } else {
            it->second = (it->second + v) % kModP;
            if (it->second == 0) u.erase(it);
        }
    }
    if (uni_deg(u) != p.degree_in(idx)) return std::nullopt;
    return u;
}

// Sound coprimality certificate: for every shared variable, a nondegenerate
// specialization mod p with univariate gcd of degree 0 proves the true gcd
// is free of that variable.  All shared variables ruled out means the gcd
// is constant.
inline bool certified_coprime(const MultiPoly& a, const MultiPoly& b) {
    const std::size_t nv = a.vars()->size();
    std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
    auto next = [&seed]() {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        return seed % (kModP - 2) + 1;
    };
    for (std::size_t v = 0; v < nv; ++v) {
        if (!a.depends_on(v) || !b.depends_on(v)) continue;
        bool ruled_out = false;
        for (int attempt = 0; attempt < 4 && !ruled_out; ++attempt) {
            std::vector<std::uint64_t> vals(nv);
            for (auto& x : vals) x = next();
            auto ua = specialize_mod(a, v, vals);
            auto ub = specialize_mod(b, v, vals);
            if (!ua || !ub) continue;
            if (uni_gcd_degree(std::move(*ua), std::move(*ub)) == 0) ruled_out = true;
        }
        if (!ruled_out) return false;
    }
    return true;
}

} // namespace detail

// GCD via primitive pseudo-remainder sequences; result is primitive with
// positive leading coefficient (and 1 for coprime/constant inputs).
inline MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) {
    if (a.is_zero()) return primitive_normalize(b);
    if (b.is_zero()) return primitive_normalize(a);
    if (is_monomial(a)) return monomial_gcd(a, b);
    if (is_monomial(b)) return monomial_gcd(b, a);
    if (a == b) return primitive_normalize(a);
    if (detail::certified_coprime(a, b)) return MultiPoly::constant(a.vars(), 1);
    int idx = detail::highest_var(a, b);
    if (idx < 0) return MultiPoly::constant(a.vars(), 1);
    MultiPoly f = a, g = b;
    if (f.degree_in(idx) < g.degree_in(idx)) std::swap(f, g);
    if (!g.depends_on(idx)) {
        // g is free of the main variable: gcd(content_f, g)
        return poly_gcd(poly_content(f, idx), g);
    }
    MultiPoly cf = poly_content(f, idx);
    MultiPoly cg = poly_content(g, idx);
    MultiPoly cont = poly_gcd(cf, cg);
    f = divexact(f, cf);
    g = divexact(g, cg);
    while (true) {
        MultiPoly r = pseudo_rem_primitive(f, g, idx);
        if (r.is_zero()) break;
        if (!r.depends_on(idx)) {
            g = MultiPoly::constant(a.vars(), 1);
            break;
        }
        f = g;
        g = r; // already primitive in idx
    }
    return primitive_normalize(cont * g);
}

} // namespace axel

#endif
