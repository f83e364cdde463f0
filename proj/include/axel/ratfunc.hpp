#ifndef AXEL_RATFUNC_HPP
#define AXEL_RATFUNC_HPP

#include <axel/multipoly.hpp>

namespace axel {

// Rational function num/den in canonical form: gcd(num,den)=1 and den monic
// with respect to grlex.  Structural equality is mathematical equality.
class RatFunc {
public:
    RatFunc() = default;
    explicit RatFunc(VarsPtr vars)
        : num_(MultiPoly(vars)), den_(MultiPoly::constant(vars, 1)) {}
    explicit RatFunc(MultiPoly num)
        : num_(std::move(num)), den_(MultiPoly::constant(num_.vars(), 1)) {}
    RatFunc(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
        reduce();
    }

    static RatFunc constant(VarsPtr vars, const Rational& c) {
        return RatFunc(MultiPoly::constant(vars, c));
    }
    static RatFunc variable(VarsPtr vars, std::size_t idx) {
        return RatFunc(MultiPoly::variable(vars, idx));
    }

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }
    const VarsPtr& vars() const { return num_.vars(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

    Rational constant_value() const {
        return num_.constant_value() / den_.constant_value();
    }

    bool independent_of(const std::vector<std::size_t>& idxs) const {
        return num_.independent_of(idxs) && den_.independent_of(idxs);
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        MultiPoly g = poly_gcd(a.den_, b.den_);
        MultiPoly da = divexact(a.den_, g), db = divexact(b.den_, g);
        return RatFunc(a.num_ * db + b.num_ * da, da * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        MultiPoly g = poly_gcd(a.den_, b.den_);
        MultiPoly da = divexact(a.den_, g), db = divexact(b.den_, g);
        return RatFunc(a.num_ * db - b.num_ * da, da * b.den_);
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        // cross-cancel first so the final gcd is cheap
        MultiPoly g1 = poly_gcd(a.num_, b.den_);
        MultiPoly g2 = poly_gcd(b.num_, a.den_);
        return RatFunc(divexact(a.num_, g1) * divexact(b.num_, g2),
                       divexact(a.den_, g2) * divexact(b.den_, g1));
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw std::domain_error("division by zero");
        MultiPoly g1 = poly_gcd(a.num_, b.num_);
        MultiPoly g2 = poly_gcd(b.den_, a.den_);
        return RatFunc(divexact(a.num_, g1) * divexact(b.den_, g2),
                       divexact(a.den_, g2) * divexact(b.num_, g1));
    }
    RatFunc operator-() const {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }

    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    RatFunc pow(int k) const {
        if (k < 0) {
            if (is_zero()) throw std::domain_error("zero to a negative power");
            return RatFunc(den_, num_).pow(-k);
        }
        return RatFunc(num_.pow(k), den_.pow(k));
    }

    // Formal partial derivative (quotient rule).
    RatFunc derivative(std::size_t idx) const {
        return RatFunc(num_.derivative(idx) * den_ - num_ * den_.derivative(idx),
                       den_ * den_);
    }

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    bool operator<(const RatFunc& o) const {
        if (num_ < o.num_) return true;
        if (o.num_ < num_) return false;
        return den_ < o.den_;
    }

    RatFunc embedded(const VarsPtr& target, const std::vector<std::size_t>& map) const {
        RatFunc r;
        r.num_ = num_.embedded(target, map);
        r.den_ = den_.embedded(target, map);
        return r;
    }

    RatFunc exponents_scaled(std::size_t idx, int factor) const {
        RatFunc r;
        r.num_ = num_.exponents_scaled(idx, factor);
        r.den_ = den_.exponents_scaled(idx, factor);
        r.reduce(); // monic renormalization is unaffected but keep canonical
        return r;
    }

    std::string str() const {
        if (den_.is_constant() && den_.constant_value() == 1) return num_.str();
        std::string n = num_.str(), d = den_.str();
        bool np = num_.terms().size() > 1;
        // parenthesize the denominator unless it is a single variable power
        bool dp = true;
        if (den_.terms().size() == 1) {
            const ExpVec& e = den_.terms().begin()->first;
            int nz = 0;
            for (int x : e)
                if (x != 0) ++nz;
            dp = nz != 1;
        }
        return (np ? "(" + n + ")" : n) + " / " + (dp ? "(" + d + ")" : d);
    }

private:
    void reduce() {
        if (den_.is_zero()) throw std::domain_error("zero denominator");
        if (num_.is_zero()) {
            den_ = MultiPoly::constant(num_.vars(), 1);
            return;
        }
        MultiPoly g = poly_gcd(num_, den_);
        if (!(g.is_constant() && g.constant_value() == 1)) {
            num_ = divexact(num_, g);
            den_ = divexact(den_, g);
        }
        Rational lc = den_.leading_coeff();
        if (lc != 1) {
            Rational inv = 1 / lc;
            num_ *= inv;
            den_ *= inv;
        }
    }

    MultiPoly num_, den_;
};

// Evaluates p with variable i replaced by images[i] (an element of the
// target function field).  All images share one variable table.
inline RatFunc poly_substitute(const MultiPoly& p, const std::vector<RatFunc>& images,
                               const VarsPtr& target) {
    RatFunc acc(target);
    for (const auto& [e, c] : p.terms()) {
        RatFunc term = RatFunc::constant(target, c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) term *= images[i].pow(e[i]);
        acc += term;
    }
    return acc;
}

inline RatFunc substitute(const RatFunc& f, const std::vector<RatFunc>& images,
                          const VarsPtr& target) {
    RatFunc d = poly_substitute(f.den(), images, target);
    if (d.is_zero()) throw std::domain_error("substitution hits a pole");
    return poly_substitute(f.num(), images, target) / d;
}

} // namespace axel

#endif
