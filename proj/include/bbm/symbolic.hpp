#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace bbm::sym {

using Rational = boost::multiprecision::cpp_rational;

/// d_t^t_order d_x^x_order u. Mixed partials commute, so (t, x) orders are canonical.
struct JetVar {
    int t_order = 0;
    int x_order = 0;

    int order() const { return t_order + x_order; }
    auto operator<=>(const JetVar&) const = default;
};

enum class Direction { T, X };

/// A formal function of u: f^(k)(u), or the antiderivatives F (F' = f) and h (h' = u f').
/// F and h only appear undifferentiated; their derivatives are rewritten in terms of f.
struct FuncSym {
    enum class Base { f, F, h };
    Base base = Base::f;
    int deriv_order = 0;

    auto operator<=>(const FuncSym&) const = default;
};

/// Product of jet-variable powers and function-symbol powers (exponents > 0).
struct Monomial {
    std::map<JetVar, int> jets;
    std::map<FuncSym, int> funcs;

    bool is_one() const { return jets.empty() && funcs.empty(); }
    auto operator<=>(const Monomial&) const = default;
};

Monomial operator*(const Monomial& a, const Monomial& b);

/// Exact-rational differential polynomial in normal form: like terms merged, no zero
/// coefficients. Structural equality is polynomial identity.
class DiffPoly {
public:
    DiffPoly() = default;
    DiffPoly(Rational c);  // NOLINT: constants convert implicitly
    DiffPoly(long c) : DiffPoly(Rational(c)) {}  // NOLINT

    static DiffPoly var(JetVar v, int power = 1);
    static DiffPoly u(int t_order = 0, int x_order = 0) { return var({t_order, x_order}); }
    static DiffPoly func(FuncSym s, int power = 1);
    static DiffPoly f(int deriv_order = 0) { return func({FuncSym::Base::f, deriv_order}); }
    static DiffPoly F() { return func({FuncSym::Base::F, 0}); }
    static DiffPoly h() { return func({FuncSym::Base::h, 0}); }

    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    /// Largest t_order + x_order of any jet variable present (0 for constants and u).
    int jet_order() const;
    std::vector<JetVar> jet_vars() const;
    bool is_constant() const;

    DiffPoly& operator+=(const DiffPoly& o);
    DiffPoly& operator-=(const DiffPoly& o);
    DiffPoly& operator*=(const DiffPoly& o);
    DiffPoly& operator*=(const Rational& c);
    DiffPoly operator-() const;

    DiffPoly pow(int n) const;

    bool operator==(const DiffPoly&) const = default;

    std::string to_string() const;

private:
    void add_term(const Monomial& m, const Rational& c);

    std::map<Monomial, Rational> terms_;
};

DiffPoly operator+(DiffPoly a, const DiffPoly& b);
DiffPoly operator-(DiffPoly a, const DiffPoly& b);
DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);

/// Partial derivative with respect to one jet coordinate. For u itself this includes the
/// chain rule through f^(k), F and h.
DiffPoly partial(const DiffPoly& p, JetVar v);

/// Total derivative D_t or D_x: sum_J (dP/du_J) u_{J + e}.
DiffPoly total_d(const DiffPoly& p, Direction dir);

/// Euler-Lagrange operator E_u(P) = sum_J (-D)^J dP/du_J.
DiffPoly euler_op(const DiffPoly& p);

/// D_t C0 + D_x C1.
DiffPoly divergence(const DiffPoly& c0, const DiffPoly& c1);

/// u_t - u_txx + f'(u) u_x, the generalized BBM operator in jet form.
DiffPoly bbm_operator();

struct Verification {
    bool exact_zero = false;
    DiffPoly residual;  // E_u(Q * Delta)
};

/// Certifies Q as a characteristic iff E_u(Q * Delta) vanishes identically. Q must have
/// jet order at most 2.
Verification verify_characteristic(const DiffPoly& q);

/// A conserved current (C0, C1) with its characteristic Q.
struct Current {
    std::string name;
    DiffPoly density;
    DiffPoly flux;
    DiffPoly characteristic;
};

/// Mass, energy and potential currents with Q = 1, u, f(u) - u_tx.
std::vector<Current> standard_currents();

}  // namespace bbm::sym
