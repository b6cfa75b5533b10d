#include "bergman/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bergman {

Complex UniTerm::eval(Complex z) const {
    double r = std::abs(z);
    Complex v = scale.to_complex() * radial.eval_double(r);
    for (unsigned i = 0; i < a; ++i) v *= z;
    Complex zc = std::conj(z);
    for (unsigned i = 0; i < b; ++i) v *= zc;
    return v;
}

UniSymbol uni_mul(const UniSymbol& x, const UniSymbol& y) {
    UniSymbol out;
    for (auto& u : x)
        for (auto& v : y) out.push_back({u.scale * v.scale, u.a + v.a, u.b + v.b, u.radial * v.radial});
    return out;
}

UniSymbol uni_conj(const UniSymbol& x) {
    UniSymbol out;
    for (auto& u : x) out.push_back(u.conj());
    return out;
}

Complex uni_eval(const UniSymbol& x, Complex z) {
    Complex acc = 0.0;
    for (auto& u : x) acc += u.eval(z);
    return acc;
}

std::map<int, PiecewisePoly> uni_canonical_slices(const UniSymbol& x) {
    std::map<int, PiecewisePoly> slices;
    for (auto& u : x) {
        if (u.scale.is_zero()) continue;
        unsigned fold = std::min(u.a, u.b);
        int d = static_cast<int>(u.a) - static_cast<int>(u.b);
        PiecewisePoly rho = u.scale * u.radial.shifted(2 * fold);
        auto it = slices.find(d);
        if (it == slices.end())
            slices.emplace(d, std::move(rho));
        else
            it->second = it->second + rho;
    }
    for (auto it = slices.begin(); it != slices.end();)
        it = it->second.is_zero() ? slices.erase(it) : std::next(it);
    return slices;
}

bool uni_is_zero(const UniSymbol& x) { return uni_canonical_slices(x).empty(); }

std::map<int, RationalComplex> uni_boundary_trace(const UniSymbol& x) {
    std::map<int, RationalComplex> trace;
    for (auto& u : x) {
        int d = static_cast<int>(u.a) - static_cast<int>(u.b);
        trace[d] += u.scale * u.radial.value_at_one();
    }
    for (auto it = trace.begin(); it != trace.end();)
        it = it->second.is_zero() ? trace.erase(it) : std::next(it);
    return trace;
}

SymbolExpr SymbolExpr::constant(int n, RationalComplex v) {
    SymbolExpr s(n);
    if (v.is_zero()) return s;
    TensorTerm t(n, UniSymbol{UniTerm{}});
    t[0][0].scale = std::move(v);
    s.terms_.push_back(std::move(t));
    return s;
}

SymbolExpr SymbolExpr::coordinate(int n, int j) {
    if (j < 1 || j > n) throw std::invalid_argument("SymbolExpr::coordinate: slot out of range");
    SymbolExpr s(n);
    TensorTerm t(n, UniSymbol{UniTerm{}});
    t[j - 1][0].a = 1;
    s.terms_.push_back(std::move(t));
    return s;
}

SymbolExpr SymbolExpr::coordinate_conj(int n, int j) {
    if (j < 1 || j > n) throw std::invalid_argument("SymbolExpr::coordinate_conj: slot out of range");
    SymbolExpr s(n);
    TensorTerm t(n, UniSymbol{UniTerm{}});
    t[j - 1][0].b = 1;
    s.terms_.push_back(std::move(t));
    return s;
}

SymbolExpr SymbolExpr::radial_profile(int n, int j, PiecewisePoly rho) {
    if (j < 1 || j > n) throw std::invalid_argument("SymbolExpr::radial_profile: slot out of range");
    SymbolExpr s(n);
    TensorTerm t(n, UniSymbol{UniTerm{}});
    t[j - 1][0].radial = std::move(rho);
    s.terms_.push_back(std::move(t));
    return s;
}

SymbolExpr SymbolExpr::operator+(const SymbolExpr& o) const {
    if (n_ != o.n_) throw std::invalid_argument("SymbolExpr: dimension mismatch in +");
    SymbolExpr s(n_);
    s.terms_ = terms_;
    s.terms_.insert(s.terms_.end(), o.terms_.begin(), o.terms_.end());
    return s;
}

SymbolExpr SymbolExpr::operator-(const SymbolExpr& o) const { return *this + o.scaled(RationalComplex(-1)); }

SymbolExpr SymbolExpr::operator*(const SymbolExpr& o) const {
    if (n_ != o.n_) throw std::invalid_argument("SymbolExpr: dimension mismatch in *");
    SymbolExpr s(n_);
    for (auto& t1 : terms_)
        for (auto& t2 : o.terms_) {
            TensorTerm t(n_);
            for (int j = 0; j < n_; ++j) t[j] = uni_mul(t1[j], t2[j]);
            s.terms_.push_back(std::move(t));
        }
    return s;
}

SymbolExpr SymbolExpr::conj() const {
    SymbolExpr s(n_);
    for (auto& t : terms_) {
        TensorTerm ct(n_);
        for (int j = 0; j < n_; ++j) ct[j] = uni_conj(t[j]);
        s.terms_.push_back(std::move(ct));
    }
    return s;
}

SymbolExpr SymbolExpr::scaled(const RationalComplex& c) const {
    SymbolExpr s(n_);
    if (c.is_zero()) return s;
    s.terms_ = terms_;
    for (auto& t : s.terms_)
        for (auto& u : t[0]) u.scale *= c;
    return s;
}

SymbolExpr SymbolExpr::pow(unsigned e) const {
    SymbolExpr acc = constant(n_, RationalComplex(1));
    for (unsigned i = 0; i < e; ++i) acc = acc * *this;
    return acc;
}

Complex SymbolExpr::eval(const Point& z) const {
    if (z.dim() != n_) throw std::invalid_argument("SymbolExpr::eval: dimension mismatch");
    Complex total = 0.0;
    for (auto& t : terms_) {
        Complex prod = 1.0;
        for (int j = 0; j < n_; ++j) prod *= uni_eval(t[j], z.coords[j]);
        total += prod;
    }
    return total;
}

RationalComplex SymbolExpr::eval_origin() const {
    RationalComplex total;
    for (auto& t : terms_) {
        RationalComplex prod{Rational(1)};
        for (int j = 0; j < n_; ++j) {
            RationalComplex slot;
            for (auto& u : t[j])
                if (u.a == 0 && u.b == 0) slot += u.scale * u.radial.value_at(Rational(0));
            prod *= slot;
        }
        total += prod;
    }
    return total;
}

bool SymbolExpr::boundary_continuous() const {
    for (auto& t : terms_)
        for (auto& slot : t)
            for (auto& u : slot)
                if (!u.radial.continuous()) return false;
    return true;
}

namespace {

// Pure tensor product of canonical one-variable slices, with the overall
// scalar pulled out so equal shapes can be grouped and summed.
struct PureTerm {
    std::vector<std::pair<int, PiecewisePoly>> slots;  // (d_j, unit-normalized rho_j)
    RationalComplex coeff;
};

// Divides out the first nonzero coefficient; returns it.
RationalComplex normalize_profile(PiecewisePoly& rho) {
    RationalComplex lead;
    for (auto& piece : rho.pieces()) {
        for (auto& c : piece.poly.coeffs())
            if (!c.is_zero()) {
                lead = c;
                break;
            }
        if (!lead.is_zero()) break;
    }
    if (lead.is_zero()) return lead;
    Rational a2 = lead.abs2();
    rho = RationalComplex{lead.re / a2, -lead.im / a2} * rho;
    return lead;
}

bool same_shape(const PureTerm& a, const PureTerm& b) {
    if (a.slots.size() != b.slots.size()) return false;
    for (size_t j = 0; j < a.slots.size(); ++j)
        if (a.slots[j].first != b.slots[j].first || !(a.slots[j].second == b.slots[j].second)) return false;
    return true;
}

}  // namespace

bool SymbolExpr::structurally_zero() const {
    // Expand every tensor term over its per-slot canonical slices into pure
    // tensor products, group equal shapes, and check that each group sums to
    // zero. Sound for "zero"; a false return is only "no certificate".
    std::vector<PureTerm> pure;
    for (auto& t : terms_) {
        std::vector<std::map<int, PiecewisePoly>> slot_slices;
        slot_slices.reserve(n_);
        bool dead = false;
        for (int j = 0; j < n_; ++j) {
            slot_slices.push_back(uni_canonical_slices(t[j]));
            if (slot_slices.back().empty()) {
                dead = true;
                break;
            }
        }
        if (dead) continue;
        std::vector<PureTerm> expanded{PureTerm{{}, RationalComplex(1)}};
        for (int j = 0; j < n_; ++j) {
            std::vector<PureTerm> next;
            for (auto& base : expanded)
                for (auto& [d, rho] : slot_slices[j]) {
                    PureTerm pt = base;
                    PiecewisePoly unit = rho;
                    RationalComplex lead = normalize_profile(unit);
                    pt.coeff *= lead;
                    pt.slots.emplace_back(d, std::move(unit));
                    next.push_back(std::move(pt));
                }
            expanded = std::move(next);
        }
        for (auto& pt : expanded) pure.push_back(std::move(pt));
    }
    std::vector<bool> used(pure.size(), false);
    for (size_t i = 0; i < pure.size(); ++i) {
        if (used[i]) continue;
        RationalComplex sum = pure[i].coeff;
        for (size_t j = i + 1; j < pure.size(); ++j) {
            if (used[j] || !same_shape(pure[i], pure[j])) continue;
            used[j] = true;
            sum += pure[j].coeff;
        }
        if (!sum.is_zero()) return false;
    }
    return true;
}

SymbolExpr SymbolExpr::restrict(int k, Complex xi) const {
    if (n_ < 2) throw std::invalid_argument("restrict: needs n >= 2");
    if (k < 1 || k > n_) throw std::invalid_argument("restrict: slot out of range");
    if (std::abs(std::abs(xi) - 1.0) > 1e-12)
        throw std::invalid_argument("restrict: xi must be unimodular");
    const RationalComplex xr = rc_from_complex(xi);
    const RationalComplex xc = xr.conj();
    SymbolExpr out(n_ - 1);
    for (auto& t : terms_) {
        RationalComplex scalar;
        for (auto& u : t[k - 1]) scalar += u.scale * u.radial.value_at_one() * rc_pow(xr, u.a) * rc_pow(xc, u.b);
        if (scalar.is_zero()) continue;
        TensorTerm rt;
        rt.reserve(n_ - 1);
        for (int j = 0; j < n_; ++j)
            if (j != k - 1) rt.push_back(t[j]);
        for (auto& u : rt[0]) u.scale *= scalar;
        out.terms_.push_back(std::move(rt));
    }
    return out;
}

bool SymbolExpr::restriction_vanishes_all_xi(int k) const {
    if (n_ < 2 || k < 1 || k > n_) throw std::invalid_argument("restriction_vanishes_all_xi: bad arguments");
    // Group the slot-k boundary trace by its angular degree d: the restriction
    // is sum_d xi^d h_d with h_d an (n-1)-variable symbol; it vanishes for all
    // unimodular xi iff every h_d vanishes.
    std::map<int, SymbolExpr> h;
    for (auto& t : terms_) {
        for (auto& [d, coeff] : uni_boundary_trace(t[k - 1])) {
            TensorTerm rt;
            rt.reserve(n_ - 1);
            for (int j = 0; j < n_; ++j)
                if (j != k - 1) rt.push_back(t[j]);
            for (auto& u : rt[0]) u.scale *= coeff;
            auto it = h.find(d);
            if (it == h.end()) it = h.emplace(d, SymbolExpr(n_ - 1)).first;
            it->second = it->second + SymbolExpr(n_ - 1, {std::move(rt)});
        }
    }
    for (auto& [d, hd] : h)
        if (!hd.structurally_zero()) return false;
    return true;
}

SymbolExpr SymbolExpr::extend(int k) const {
    if (k < 1 || k > n_ + 1) throw std::invalid_argument("extend: slot out of range");
    SymbolExpr out(n_ + 1);
    std::vector<TensorTerm> terms;
    for (auto& t : terms_) {
        TensorTerm et;
        et.reserve(n_ + 1);
        for (int j = 0; j < k - 1; ++j) et.push_back(t[j]);
        et.push_back(UniSymbol{UniTerm{}});
        for (int j = k - 1; j < n_; ++j) et.push_back(t[j]);
        terms.push_back(std::move(et));
    }
    return SymbolExpr(n_ + 1, std::move(terms));
}

int SymbolExpr::angular_degree(int j) const {
    int deg = 0;
    for (auto& t : terms_)
        for (auto& u : t[j - 1])
            deg = std::max(deg, std::abs(static_cast<int>(u.a) - static_cast<int>(u.b)));
    return deg;
}

int SymbolExpr::max_analytic_degree() const {
    int deg = 0;
    for (auto& t : terms_)
        for (auto& slot : t)
            for (auto& u : slot) deg = std::max(deg, static_cast<int>(std::max(u.a, u.b)));
    return deg;
}

namespace {
bool uniterm_equal(const UniTerm& a, const UniTerm& b) {
    return a.scale == b.scale && a.a == b.a && a.b == b.b && a.radial == b.radial;
}
}  // namespace

bool operator==(const SymbolExpr& a, const SymbolExpr& b) {
    if (a.n_ != b.n_ || a.terms_.size() != b.terms_.size()) return false;
    for (size_t t = 0; t < a.terms_.size(); ++t)
        for (int j = 0; j < a.n_; ++j) {
            const UniSymbol& x = a.terms_[t][j];
            const UniSymbol& y = b.terms_[t][j];
            if (x.size() != y.size()) return false;
            for (size_t i = 0; i < x.size(); ++i)
                if (!uniterm_equal(x[i], y[i])) return false;
        }
    return true;
}

double boundary_face_max(const SymbolExpr& s, int k, const BoundaryGrid& grid) {
    if (k < 1 || k > s.dim()) throw std::invalid_argument("boundary_face_max: face out of range");
    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<Complex> xis;
    for (int i = 0; i < grid.xi_count; ++i)
        xis.push_back(std::polar(1.0, two_pi * i / grid.xi_count));
    // Polar grids for the free coordinates.
    std::vector<Complex> bulk;
    for (double r : grid.radii)
        for (int i = 0; i < grid.angle_count; ++i) {
            bulk.push_back(std::polar(r, two_pi * i / grid.angle_count));
            if (r == 0.0) break;
        }
    const int n = s.dim();
    double best = 0.0;
    std::vector<size_t> idx(static_cast<size_t>(n - 1), 0);
    Point z;
    z.coords.resize(n);
    bool done = n > 1 ? false : true;
    auto scan_xi = [&]() {
        for (auto& xi : xis) {
            z.coords[k - 1] = xi;
            best = std::max(best, std::abs(s.eval(z)));
        }
    };
    if (n == 1) {
        scan_xi();
        return best;
    }
    while (!done) {
        int slot = 0;
        for (int j = 0; j < n; ++j) {
            if (j == k - 1) continue;
            z.coords[j] = bulk[idx[slot++]];
        }
        scan_xi();
        // mixed-radix increment
        int pos = n - 2;
        while (pos >= 0) {
            if (++idx[pos] < bulk.size()) break;
            idx[pos--] = 0;
        }
        if (pos < 0) done = true;
    }
    return best;
}

}  // namespace bergman
