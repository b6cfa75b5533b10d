#include "bergman/rpoly.hpp"

#include <algorithm>
#include <cmath>

namespace bergman {

RPoly RPoly::monomial(unsigned deg, RationalComplex v) {
    std::vector<RationalComplex> c(deg + 1);
    c[deg] = std::move(v);
    return RPoly(std::move(c));
}

RationalComplex RPoly::eval(const Rational& x) const {
    RationalComplex acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc *= RationalComplex(x);
        acc += *it;
    }
    return acc;
}

Complex RPoly::eval_double(double x) const {
    Complex acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->to_complex();
    return acc;
}

RPoly RPoly::conj() const {
    std::vector<RationalComplex> c = c_;
    for (auto& v : c) v = v.conj();
    return RPoly(std::move(c));
}

RPoly RPoly::shifted(unsigned k) const {
    if (is_zero()) return {};
    std::vector<RationalComplex> c(c_.size() + k);
    std::copy(c_.begin(), c_.end(), c.begin() + k);
    return RPoly(std::move(c));
}

RPoly& RPoly::operator+=(const RPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

RPoly& RPoly::operator-=(const RPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

RPoly operator*(const RPoly& a, const RPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<RationalComplex> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return RPoly(std::move(c));
}

RPoly operator*(const RationalComplex& s, RPoly p) {
    if (s.is_zero()) return {};
    for (auto& v : p.c_) v *= s;
    return p;
}

std::optional<RPoly> RPoly::divide_by_one_minus_x() const {
    if (is_zero()) return RPoly();
    if (!eval(Rational(1)).is_zero()) return std::nullopt;
    // p = (1-x) q  =>  p_i = q_i - q_{i-1}
    std::vector<RationalComplex> q(c_.size() - 1);
    RationalComplex carry;
    for (size_t i = 0; i + 1 < c_.size(); ++i) {
        carry += c_[i];
        q[i] = carry;
    }
    return RPoly(std::move(q));
}

PiecewisePoly::PiecewisePoly(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
    if (pieces_.empty()) throw std::invalid_argument("PiecewisePoly: no pieces");
    std::sort(pieces_.begin(), pieces_.end(), [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
    if (pieces_.front().lo != 0 || pieces_.back().hi != 1)
        throw std::invalid_argument("PiecewisePoly: pieces must cover [0,1]");
    for (size_t i = 0; i < pieces_.size(); ++i) {
        if (pieces_[i].lo >= pieces_[i].hi) throw std::invalid_argument("PiecewisePoly: empty or inverted piece");
        if (i + 1 < pieces_.size() && pieces_[i].hi != pieces_[i + 1].lo)
            throw std::invalid_argument("PiecewisePoly: pieces must partition [0,1] without gaps or overlaps");
    }
    merge_equal_neighbors();
}

void PiecewisePoly::merge_equal_neighbors() {
    std::vector<Piece> merged;
    for (auto& p : pieces_) {
        if (!merged.empty() && merged.back().poly == p.poly)
            merged.back().hi = p.hi;
        else
            merged.push_back(p);
    }
    pieces_ = std::move(merged);
}

bool PiecewisePoly::is_zero() const {
    return std::all_of(pieces_.begin(), pieces_.end(), [](const Piece& p) { return p.poly.is_zero(); });
}

bool PiecewisePoly::is_constant(RationalComplex* value) const {
    if (pieces_.size() != 1 || pieces_[0].poly.degree() > 0) return false;
    if (value) *value = pieces_[0].poly.coeff(0);
    return true;
}

bool PiecewisePoly::continuous() const {
    for (size_t i = 0; i + 1 < pieces_.size(); ++i) {
        const Rational& x = pieces_[i].hi;
        if (pieces_[i].poly.eval(x) != pieces_[i + 1].poly.eval(x)) return false;
    }
    return true;
}

RationalComplex PiecewisePoly::value_at(const Rational& r) const {
    for (auto& p : pieces_)
        if (r >= p.lo && r <= p.hi) return p.poly.eval(r);
    throw std::invalid_argument("PiecewisePoly::value_at: argument outside [0,1]");
}

Complex PiecewisePoly::eval_double(double r) const {
    for (auto& p : pieces_) {
        if (r <= to_double(p.hi) || &p == &pieces_.back()) return p.poly.eval_double(r);
    }
    return pieces_.back().poly.eval_double(r);
}

PiecewisePoly PiecewisePoly::conj() const {
    std::vector<Piece> out = pieces_;
    for (auto& p : out) p.poly = p.poly.conj();
    return PiecewisePoly(std::move(out));
}

PiecewisePoly PiecewisePoly::shifted(unsigned k) const {
    std::vector<Piece> out = pieces_;
    for (auto& p : out) p.poly = p.poly.shifted(k);
    return PiecewisePoly(std::move(out));
}

int PiecewisePoly::max_degree() const {
    int d = 0;
    for (auto& p : pieces_) d = std::max(d, p.poly.degree());
    return d;
}

std::vector<Rational> PiecewisePoly::breakpoints() const {
    std::vector<Rational> bp;
    bp.push_back(Rational(0));
    for (auto& p : pieces_) bp.push_back(p.hi);
    return bp;
}

std::vector<Rational> merge_breakpoints(const PiecewisePoly& a, const PiecewisePoly& b) {
    std::vector<Rational> bp = a.breakpoints();
    for (auto& x : b.breakpoints()) bp.push_back(x);
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    return bp;
}

namespace {
template <class Op>
PiecewisePoly combine(const PiecewisePoly& a, const PiecewisePoly& b, Op op) {
    auto bp = merge_breakpoints(a, b);
    std::vector<PiecewisePoly::Piece> out;
    for (size_t i = 0; i + 1 < bp.size(); ++i) {
        Rational mid = (bp[i] + bp[i + 1]) / 2;
        const RPoly* pa = nullptr;
        const RPoly* pb = nullptr;
        for (auto& p : a.pieces())
            if (mid >= p.lo && mid <= p.hi) pa = &p.poly;
        for (auto& p : b.pieces())
            if (mid >= p.lo && mid <= p.hi) pb = &p.poly;
        out.push_back({bp[i], bp[i + 1], op(*pa, *pb)});
    }
    return PiecewisePoly(std::move(out));
}
}  // namespace

PiecewisePoly operator+(const PiecewisePoly& a, const PiecewisePoly& b) {
    return combine(a, b, [](const RPoly& x, const RPoly& y) { return x + y; });
}

PiecewisePoly operator*(const PiecewisePoly& a, const PiecewisePoly& b) {
    return combine(a, b, [](const RPoly& x, const RPoly& y) { return x * y; });
}

PiecewisePoly operator*(const RationalComplex& s, PiecewisePoly p) {
    std::vector<PiecewisePoly::Piece> out = p.pieces_;
    for (auto& piece : out) piece.poly = s * piece.poly;
    return PiecewisePoly(std::move(out));
}

bool operator==(const PiecewisePoly& a, const PiecewisePoly& b) {
    if (a.pieces_.size() != b.pieces_.size()) return false;
    for (size_t i = 0; i < a.pieces_.size(); ++i) {
        if (a.pieces_[i].lo != b.pieces_[i].lo || a.pieces_[i].hi != b.pieces_[i].hi ||
            !(a.pieces_[i].poly == b.pieces_[i].poly))
            return false;
    }
    return true;
}

RationalComplex PiecewisePoly::radial_moment(unsigned k) const {
    RationalComplex total;
    for (auto& p : pieces_) {
        const auto& c = p.poly.coeffs();
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i].is_zero()) continue;
            unsigned e = 2 * k + 2 + static_cast<unsigned>(i);
            Rational w = Rational(2) * (rat_pow(p.hi, e) - rat_pow(p.lo, e)) / e;
            total += RationalComplex(w) * c[i];
        }
    }
    return total;
}

Complex PiecewisePoly::radial_moment_double(unsigned k) const {
    Complex total = 0.0;
    for (auto& p : pieces_) {
        double lo = to_double(p.lo), hi = to_double(p.hi);
        const auto& c = p.poly.coeffs();
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i].is_zero()) continue;
            double e = 2.0 * k + 2.0 + static_cast<double>(i);
            total += c[i].to_complex() * (2.0 * (std::pow(hi, e) - std::pow(lo, e)) / e);
        }
    }
    return total;
}

}  // namespace bergman
