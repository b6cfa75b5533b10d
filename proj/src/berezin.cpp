#include "bergman/berezin.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

namespace bergman {

namespace {

int alias_qtheta(double pabs, int angdeg) {
    if (pabs < 1e-3) return angdeg + 8;
    int extra = static_cast<int>(std::ceil(30.0 / -std::log(pabs)));
    return std::min(angdeg + extra + 8, 8192);
}

// Ratio of int u |K_p|^2 dnu to int |K_p|^2 dnu over the disc, both on the
// same nodes.
Complex berezin_uni_ratio(const UniSymbol& u, Complex p, int q_r) {
    std::vector<const PiecewisePoly*> profiles;
    int angdeg = 0;
    for (auto& t : u) {
        profiles.push_back(&t.radial);
        angdeg = std::max(angdeg, std::abs(static_cast<int>(t.a) - static_cast<int>(t.b)));
    }
    const std::vector<double> panels = radial_panels(profiles, true);
    const int qt = alias_qtheta(std::abs(p), angdeg);
    const double two_pi = 2.0 * std::numbers::pi;
    const RadialRule rule = gauss_legendre(q_r);
    Complex num = 0.0;
    double den = 0.0;
    for (size_t s = 0; s + 1 < panels.size(); ++s) {
        const double lo = panels[s], hi = panels[s + 1];
        for (int i = 0; i < rule.order(); ++i) {
            const double r = lo + (hi - lo) * rule.nodes[i];
            const double w = 2.0 * (hi - lo) * rule.weights[i] * r / qt;
            for (int a = 0; a < qt; ++a) {
                const Complex z = std::polar(r, two_pi * a / qt);
                const Complex d = 1.0 - z * std::conj(p);
                const double kern = 1.0 / std::norm(d * d);
                num += w * kern * uni_eval(u, z);
                den += w * kern;
            }
        }
    }
    return num / den;
}

}  // namespace

Complex berezin_symbol(const SymbolExpr& f, const Point& p, int q_r) {
    if (f.dim() != p.dim()) throw std::invalid_argument("berezin_symbol: dimension mismatch");
    if (!p.interior()) throw std::invalid_argument("berezin_symbol: point must be interior");
    Complex total = 0.0;
    for (auto& t : f.terms()) {
        Complex prod = 1.0;
        for (int j = 0; j < f.dim(); ++j) prod *= berezin_uni_ratio(t[j], p.coords[j], q_r);
        total += prod;
    }
    return total;
}

Complex berezin_operator(const OperatorMatrix& a, const Point& p) {
    if (p.dim() != a.trunc.dim()) throw std::invalid_argument("berezin_operator: dimension mismatch");
    CoefVector k = kernel_coeffs(p, a.trunc);
    return k.coeffs.dot(a.mat * k.coeffs);
}

ApproachSchedule ApproachSchedule::toward(Point target) {
    ApproachSchedule s;
    s.anchor = Point(std::vector<Complex>(target.dim(), Complex(0.0)));
    s.target = std::move(target);
    return s;
}

Point ApproachSchedule::at(double t) const {
    if (anchor.dim() != target.dim()) throw std::invalid_argument("ApproachSchedule: dimension mismatch");
    Point p;
    p.coords.resize(target.dim());
    for (int j = 0; j < target.dim(); ++j)
        p.coords[j] = (1.0 - t) * anchor.coords[j] + t * target.coords[j];
    return p;
}

double DecayProfile::tail() const { return points.empty() ? 0.0 : points.back().abs_bt; }

double DecayProfile::reliable_tail() const {
    for (auto it = points.rbegin(); it != points.rend(); ++it)
        if (it->reliable) return it->abs_bt;
    return tail();
}

double DecayProfile::max_reliable() const {
    double m = 0.0;
    for (auto& pt : points)
        if (pt.reliable) m = std::max(m, pt.abs_bt);
    return m;
}

bool DecayProfile::reliable_segment_decreasing() const {
    double prev = -1.0;
    for (auto& pt : points) {
        if (!pt.reliable) continue;
        if (prev >= 0.0 && pt.abs_bt >= prev) return false;
        prev = pt.abs_bt;
    }
    return prev >= 0.0;
}

namespace {
std::string fmt_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}
}  // namespace

void DecayProfile::write_csv(std::ostream& os) const {
    os << "t";
    for (int j = 1; j <= trunc.dim(); ++j) os << ",p" << j << "_re,p" << j << "_im";
    os << ",abs_bt,kernel_mass_defect,reliable\n";
    for (auto& pt : points) {
        os << fmt_double(pt.t);
        for (auto& c : pt.p.coords) os << ',' << fmt_double(c.real()) << ',' << fmt_double(c.imag());
        os << ',' << fmt_double(pt.abs_bt) << ',' << fmt_double(pt.defect) << ',' << (pt.reliable ? 1 : 0)
           << '\n';
    }
}

DecayProfile decay_profile(const OperatorExpr& expr, const ApproachSchedule& schedule,
                           const Truncation& trunc, int pad) {
    if (pad < 0) throw std::invalid_argument("decay_profile: pad must be >= 0");
    DecayProfile profile;
    profile.target = schedule.target;
    profile.trunc = trunc;
    profile.pad = pad;
    std::vector<int> padded_caps = trunc.caps();
    for (int& c : padded_caps) c += pad;
    Truncation padded(padded_caps);
    KronApplicator op(expr, padded);
    for (double t : schedule.ts) {
        Point p = schedule.at(t);
        if (!p.interior())
            throw std::invalid_argument("decay_profile: schedule leaves the open polydisc before t = 1");
        CoefVector k = kernel_coeffs(p, trunc);
        DecayPoint pt;
        pt.t = t;
        pt.p = p;
        pt.defect = std::max(0.0, 1.0 - k.norm2());
        pt.reliable = pt.defect <= kKernelMassTolerance;
        // <crop(A) khat, khat> = <A embed(khat), embed(khat)>.
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(padded.total());
        for (long i = 0; i < trunc.total(); ++i) v(padded.linearize(trunc.delinearize(i))) = k.coeffs(i);
        pt.abs_bt = std::abs(v.dot(op.apply(v)));
        profile.points.push_back(std::move(pt));
    }
    return profile;
}

}  // namespace bergman
