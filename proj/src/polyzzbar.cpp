#include "bergman/polyzzbar.hpp"

#include <algorithm>

namespace bergman {

PolyZZbar PolyZZbar::constant(int n, RationalComplex v) {
    PolyZZbar p(n);
    ZZbarExp e{std::vector<unsigned>(n, 0), std::vector<unsigned>(n, 0)};
    p.add_term(e, v);
    return p;
}

PolyZZbar PolyZZbar::monomial(int n, const ZZbarExp& e, RationalComplex v) {
    if (static_cast<int>(e.a.size()) != n || static_cast<int>(e.b.size()) != n)
        throw std::invalid_argument("PolyZZbar::monomial: exponent dimension mismatch");
    PolyZZbar p(n);
    p.add_term(e, v);
    return p;
}

PolyZZbar PolyZZbar::variable(int n, int j) {
    if (j < 1 || j > n) throw std::invalid_argument("PolyZZbar::variable: index out of range");
    ZZbarExp e{std::vector<unsigned>(n, 0), std::vector<unsigned>(n, 0)};
    e.a[j - 1] = 1;
    return monomial(n, e, RationalComplex(1));
}

PolyZZbar PolyZZbar::variable_conj(int n, int j) {
    if (j < 1 || j > n) throw std::invalid_argument("PolyZZbar::variable_conj: index out of range");
    ZZbarExp e{std::vector<unsigned>(n, 0), std::vector<unsigned>(n, 0)};
    e.b[j - 1] = 1;
    return monomial(n, e, RationalComplex(1));
}

void PolyZZbar::add_term(const ZZbarExp& e, const RationalComplex& v) {
    if (v.is_zero()) return;
    auto it = coeffs_.find(e);
    if (it == coeffs_.end()) {
        coeffs_.emplace(e, v);
    } else {
        it->second += v;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

PolyZZbar PolyZZbar::operator+(const PolyZZbar& o) const {
    if (n_ != o.n_) throw std::invalid_argument("PolyZZbar: dimension mismatch in +");
    PolyZZbar out = *this;
    for (auto& [e, v] : o.coeffs_) out.add_term(e, v);
    return out;
}

PolyZZbar PolyZZbar::operator-(const PolyZZbar& o) const { return *this + o.scaled(RationalComplex(-1)); }

PolyZZbar PolyZZbar::operator*(const PolyZZbar& o) const {
    if (n_ != o.n_) throw std::invalid_argument("PolyZZbar: dimension mismatch in *");
    PolyZZbar out(n_);
    for (auto& [e1, v1] : coeffs_)
        for (auto& [e2, v2] : o.coeffs_) {
            ZZbarExp e = e1;
            for (int j = 0; j < n_; ++j) {
                e.a[j] += e2.a[j];
                e.b[j] += e2.b[j];
            }
            out.add_term(e, v1 * v2);
        }
    return out;
}

PolyZZbar PolyZZbar::conj() const {
    PolyZZbar out(n_);
    for (auto& [e, v] : coeffs_) out.add_term({e.b, e.a}, v.conj());
    return out;
}

PolyZZbar PolyZZbar::scaled(const RationalComplex& s) const {
    PolyZZbar out(n_);
    for (auto& [e, v] : coeffs_) out.add_term(e, v * s);
    return out;
}

Complex PolyZZbar::eval(const Point& z) const {
    if (z.dim() != n_) throw std::invalid_argument("PolyZZbar::eval: dimension mismatch");
    Complex total = 0.0;
    for (auto& [e, v] : coeffs_) {
        Complex m = v.to_complex();
        for (int j = 0; j < n_; ++j) {
            for (unsigned i = 0; i < e.a[j]; ++i) m *= z.coords[j];
            Complex zc = std::conj(z.coords[j]);
            for (unsigned i = 0; i < e.b[j]; ++i) m *= zc;
        }
        total += m;
    }
    return total;
}

SymbolExpr PolyZZbar::to_symbol() const {
    SymbolExpr s(n_);
    for (auto& [e, v] : coeffs_) {
        SymbolExpr::TensorTerm t(n_, UniSymbol{UniTerm{}});
        for (int j = 0; j < n_; ++j) {
            t[j][0].a = e.a[j];
            t[j][0].b = e.b[j];
        }
        t[0][0].scale = v;
        s = s + SymbolExpr(n_, {std::move(t)});
    }
    return s;
}

PolyZZbar laplacian_j(const PolyZZbar& p, int j) {
    if (j < 1 || j > p.dim()) throw std::invalid_argument("laplacian_j: index out of range");
    PolyZZbar out(p.dim());
    for (auto& [e, v] : p.coeffs()) {
        unsigned a = e.a[j - 1], b = e.b[j - 1];
        if (a == 0 || b == 0) continue;
        ZZbarExp d = e;
        d.a[j - 1] = a - 1;
        d.b[j - 1] = b - 1;
        out.add_term(d, v * RationalComplex(Rational(4) * a * b));
    }
    return out;
}

bool is_n_harmonic(const PolyZZbar& p) {
    for (int j = 1; j <= p.dim(); ++j)
        if (!laplacian_j(p, j).is_zero()) return false;
    return true;
}

CanonicalRadialForm canonical_radial_form(const PolyZZbar& f) {
    if (f.dim() != 1) throw std::invalid_argument("canonical_radial_form: one-variable polynomials only");
    CanonicalRadialForm form;
    for (auto& [e, v] : f.coeffs()) {
        unsigned a = e.a[0], b = e.b[0];
        unsigned m = std::min(a, b);  // z^a zbar^b = |z|^{2m} z^{a-m} zbar^{b-m}
        if (a >= b) {
            unsigned j = a - b;
            if (form.p.size() <= j) form.p.resize(j + 1);
            form.p[j] += RPoly::monomial(m, v);
        } else {
            unsigned j = b - a;
            if (form.q.size() <= j) form.q.resize(j + 1);
            form.q[j] += RPoly::monomial(m, v);
        }
    }
    return form;
}

PolyZZbar CanonicalRadialForm::reconstruct() const {
    PolyZZbar f(1);
    auto emit = [&f](const RPoly& poly, unsigned j, bool conj_side) {
        const auto& c = poly.coeffs();
        for (size_t m = 0; m < c.size(); ++m) {
            if (c[m].is_zero()) continue;
            ZZbarExp e{{0}, {0}};
            e.a[0] = static_cast<unsigned>(m) + (conj_side ? 0 : j);
            e.b[0] = static_cast<unsigned>(m) + (conj_side ? j : 0);
            f.add_term(e, c[m]);
        }
    };
    for (size_t j = 0; j < p.size(); ++j) emit(p[j], static_cast<unsigned>(j), false);
    for (size_t j = 0; j < q.size(); ++j) emit(q[j], static_cast<unsigned>(j), true);
    return f;
}

std::optional<PolyZZbar> divide_by_one_minus_mod2(const PolyZZbar& f) {
    if (f.dim() != 1) throw std::invalid_argument("divide_by_one_minus_mod2: one-variable polynomials only");
    CanonicalRadialForm form = canonical_radial_form(f);
    CanonicalRadialForm quot;
    quot.p.resize(form.p.size());
    quot.q.resize(form.q.size());
    for (size_t j = 0; j < form.p.size(); ++j) {
        auto g = form.p[j].divide_by_one_minus_x();
        if (!g) return std::nullopt;
        quot.p[j] = std::move(*g);
    }
    for (size_t j = 0; j < form.q.size(); ++j) {
        auto g = form.q[j].divide_by_one_minus_x();
        if (!g) return std::nullopt;
        quot.q[j] = std::move(*g);
    }
    return quot.reconstruct();
}

bool circle_vanishing(const PolyZZbar& f) {
    CanonicalRadialForm form = canonical_radial_form(f);
    for (auto& poly : form.p)
        if (!poly.eval(Rational(1)).is_zero()) return false;
    for (auto& poly : form.q)
        if (!poly.eval(Rational(1)).is_zero()) return false;
    return true;
}

bool face_vanishing(const PolyZZbar& f, int k) {
    if (k < 1 || k > f.dim()) throw std::invalid_argument("face_vanishing: face out of range");
    // Group coefficients by the monomial in the remaining variables.
    std::map<ZZbarExp, PolyZZbar> groups;
    for (auto& [e, v] : f.coeffs()) {
        ZZbarExp rest = e;
        rest.a[k - 1] = 0;
        rest.b[k - 1] = 0;
        ZZbarExp slot{{e.a[k - 1]}, {e.b[k - 1]}};
        auto it = groups.find(rest);
        if (it == groups.end()) it = groups.emplace(rest, PolyZZbar(1)).first;
        it->second.add_term(slot, v);
    }
    for (auto& [rest, poly] : groups)
        if (!circle_vanishing(poly)) return false;
    return true;
}

std::optional<PolyZZbar> symbol_to_poly(const SymbolExpr& s) {
    PolyZZbar out(s.dim());
    for (auto& t : s.terms()) {
        // Expand the per-slot sums of uniterms into monomials.
        std::vector<std::pair<ZZbarExp, RationalComplex>> acc{
            {ZZbarExp{std::vector<unsigned>(s.dim(), 0), std::vector<unsigned>(s.dim(), 0)},
             RationalComplex(1)}};
        for (int j = 0; j < s.dim(); ++j) {
            std::vector<std::pair<ZZbarExp, RationalComplex>> next;
            for (auto& u : t[j]) {
                RationalComplex c;
                if (!u.radial.is_constant(&c)) return std::nullopt;
                c *= u.scale;
                if (c.is_zero()) continue;
                for (auto& [e, v] : acc) {
                    ZZbarExp e2 = e;
                    e2.a[j] += u.a;
                    e2.b[j] += u.b;
                    next.emplace_back(std::move(e2), v * c);
                }
            }
            acc = std::move(next);
        }
        for (auto& [e, v] : acc) out.add_term(e, v);
    }
    return out;
}

}  // namespace bergman
