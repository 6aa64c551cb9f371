#include "bbm/symbolic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bbm::sym {

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m = a;
    for (const auto& [v, p] : b.jets) m.jets[v] += p;
    for (const auto& [s, p] : b.funcs) m.funcs[s] += p;
    return m;
}

DiffPoly::DiffPoly(Rational c) {
    if (c != 0) terms_.emplace(Monomial{}, std::move(c));
}

DiffPoly DiffPoly::var(JetVar v, int power) {
    if (v.t_order < 0 || v.x_order < 0) throw std::invalid_argument("negative jet order");
    if (power < 0) throw std::invalid_argument("negative exponent");
    DiffPoly p;
    Monomial m;
    if (power > 0) m.jets[v] = power;
    p.terms_.emplace(std::move(m), Rational(1));
    return p;
}

DiffPoly DiffPoly::func(FuncSym s, int power) {
    if (power < 0) throw std::invalid_argument("negative exponent");
    // F^(k) and h^(k) for k >= 1 are rewritten through F' = f and h' = u f'.
    if (s.base != FuncSym::Base::f && s.deriv_order > 0) {
        DiffPoly base = s.base == FuncSym::Base::F ? f(s.deriv_order - 1) : DiffPoly();
        if (s.base == FuncSym::Base::h) {
            // h^(k) = d^{k-1}/du^{k-1} (u f') = u f^(k) + (k-1) f^(k-1)
            base = u() * f(s.deriv_order) + DiffPoly(Rational(s.deriv_order - 1)) * f(s.deriv_order - 1);
        }
        return base.pow(power);
    }
    DiffPoly p;
    Monomial m;
    if (power > 0) m.funcs[s] = power;
    p.terms_.emplace(std::move(m), Rational(1));
    return p;
}

int DiffPoly::jet_order() const {
    int order = 0;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, p] : m.jets) order = std::max(order, v.order());
    return order;
}

std::vector<JetVar> DiffPoly::jet_vars() const {
    std::map<JetVar, bool> seen;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, p] : m.jets) seen[v] = true;
    std::vector<JetVar> out;
    for (const auto& [v, b] : seen) out.push_back(v);
    return out;
}

bool DiffPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

void DiffPoly::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

DiffPoly& DiffPoly::operator*=(const DiffPoly& o) {
    DiffPoly out;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) out.add_term(ma * mb, ca * cb);
    *this = std::move(out);
    return *this;
}

DiffPoly& DiffPoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, coeff] : terms_) coeff *= c;
    return *this;
}

DiffPoly DiffPoly::operator-() const {
    DiffPoly out = *this;
    out *= Rational(-1);
    return out;
}

DiffPoly DiffPoly::pow(int n) const {
    if (n < 0) throw std::invalid_argument("negative exponent");
    DiffPoly out(1);
    for (int i = 0; i < n; ++i) out *= *this;
    return out;
}

DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
    DiffPoly out = a;
    out *= b;
    return out;
}

namespace {

std::string jet_name(JetVar v) {
    if (v.order() == 0) return "u";
    return "u_" + std::string(static_cast<std::size_t>(v.t_order), 't') + std::string(static_cast<std::size_t>(v.x_order), 'x');
}

std::string func_name(FuncSym s) {
    switch (s.base) {
    case FuncSym::Base::f: return "f" + std::string(static_cast<std::size_t>(s.deriv_order), '\'') + "(u)";
    case FuncSym::Base::F: return "F(u)";
    case FuncSym::Base::h: return "h(u)";
    }
    return "?";
}

DiffPoly monomial_poly(const Monomial& m, const Rational& c) {
    DiffPoly p(c);
    for (const auto& [v, e] : m.jets) p *= DiffPoly::var(v, e);
    for (const auto& [s, e] : m.funcs) p *= DiffPoly::func(s, e);
    return p;
}

// d/du of a single function symbol.
DiffPoly func_du(FuncSym s) {
    switch (s.base) {
    case FuncSym::Base::f: return DiffPoly::f(s.deriv_order + 1);
    case FuncSym::Base::F: return DiffPoly::f(0);
    case FuncSym::Base::h: return DiffPoly::u() * DiffPoly::f(1);
    }
    throw std::logic_error("unreachable function symbol");
}

}  // namespace

std::string DiffPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational mag = c < 0 ? Rational(-c) : c;
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        std::vector<std::string> factors;
        if (mag != 1 || m.is_one()) factors.push_back(mag.str());
        for (const auto& [v, e] : m.jets) factors.push_back(jet_name(v) + (e > 1 ? "^" + std::to_string(e) : ""));
        for (const auto& [s, e] : m.funcs) factors.push_back(func_name(s) + (e > 1 ? "^" + std::to_string(e) : ""));
        for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
    }
    return os.str();
}

DiffPoly partial(const DiffPoly& p, JetVar v) {
    DiffPoly out;
    const bool is_u = v.order() == 0;
    for (const auto& [m, c] : p.terms()) {
        if (auto it = m.jets.find(v); it != m.jets.end()) {
            Monomial reduced = m;
            if (--reduced.jets[v] == 0) reduced.jets.erase(v);
            out += monomial_poly(reduced, c * it->second);
        }
        if (!is_u) continue;
        for (const auto& [s, e] : m.funcs) {
            Monomial reduced = m;
            if (--reduced.funcs[s] == 0) reduced.funcs.erase(s);
            out += monomial_poly(reduced, c * e) * func_du(s);
        }
    }
    return out;
}

DiffPoly total_d(const DiffPoly& p, Direction dir) {
    const JetVar step = dir == Direction::T ? JetVar{1, 0} : JetVar{0, 1};
    std::vector<JetVar> vars = p.jet_vars();
    if (std::find(vars.begin(), vars.end(), JetVar{}) == vars.end()) vars.push_back(JetVar{});
    DiffPoly out;
    for (const JetVar& v : vars) {
        DiffPoly d = partial(p, v);
        if (d.is_zero()) continue;
        out += d * DiffPoly::var({v.t_order + step.t_order, v.x_order + step.x_order});
    }
    return out;
}

DiffPoly euler_op(const DiffPoly& p) {
    std::vector<JetVar> vars = p.jet_vars();
    if (std::find(vars.begin(), vars.end(), JetVar{}) == vars.end()) vars.push_back(JetVar{});
    DiffPoly out;
    for (const JetVar& v : vars) {
        DiffPoly term = partial(p, v);
        for (int i = 0; i < v.t_order; ++i) term = total_d(term, Direction::T);
        for (int i = 0; i < v.x_order; ++i) term = total_d(term, Direction::X);
        if (v.order() % 2 != 0) term = -term;
        out += term;
    }
    return out;
}

DiffPoly divergence(const DiffPoly& c0, const DiffPoly& c1) {
    return total_d(c0, Direction::T) + total_d(c1, Direction::X);
}

DiffPoly bbm_operator() {
    return DiffPoly::u(1, 0) - DiffPoly::u(1, 2) + DiffPoly::f(1) * DiffPoly::u(0, 1);
}

Verification verify_characteristic(const DiffPoly& q) {
    if (q.jet_order() > 2)
        throw std::invalid_argument("characteristic has jet order " + std::to_string(q.jet_order()) +
                                    "; at most 2 is supported");
    Verification v;
    v.residual = euler_op(q * bbm_operator());
    v.exact_zero = v.residual.is_zero();
    return v;
}

std::vector<Current> standard_currents() {
    using P = DiffPoly;
    const P u = P::u();
    const P ux = P::u(0, 1);
    const P ut = P::u(1, 0);
    const P utx = P::u(1, 1);
    const Rational half(1, 2);
    return {
        {"mass", u, -utx + P::f(), P(1)},
        {"energy", P(half) * (u * u + ux * ux), -(u * utx) + P::h(), u},
        {"potential", P::F(), P(half) * (utx * utx - ut * ut) - P::f() * utx + P(half) * P::f() * P::f(),
         P::f() - utx},
    };
}

}  // namespace bbm::sym
