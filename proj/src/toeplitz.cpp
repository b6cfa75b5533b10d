#include "bergman/toeplitz.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <random>

namespace bergman {

ScaledBandMatrix ScaledBandMatrix::identity(int n) {
    ScaledBandMatrix m(n);
    std::vector<RationalComplex> diag(n);
    for (int i = 0; i < n; ++i) diag[i] = RationalComplex(Rational(1, i + 1));
    m.add_band(0, std::move(diag));
    return m;
}

RationalComplex ScaledBandMatrix::scaled_entry(int l, int m) const {
    auto it = bands_.find(l - m);
    if (it == bands_.end()) return {};
    return it->second[static_cast<size_t>(std::min(l, m))];
}

Complex ScaledBandMatrix::entry(int l, int m) const {
    return std::sqrt(static_cast<double>(l + 1) * (m + 1)) * scaled_entry(l, m).to_complex();
}

void ScaledBandMatrix::add_band(int offset, std::vector<RationalComplex> values) {
    if (std::abs(offset) >= n_) return;
    if (static_cast<int>(values.size()) != n_ - std::abs(offset))
        throw std::invalid_argument("ScaledBandMatrix::add_band: band length mismatch");
    auto it = bands_.find(offset);
    if (it == bands_.end()) {
        bands_.emplace(offset, std::move(values));
        return;
    }
    for (size_t i = 0; i < values.size(); ++i) it->second[i] += values[i];
}

bool ScaledBandMatrix::is_zero() const {
    for (auto& [d, vals] : bands_)
        for (auto& v : vals)
            if (!v.is_zero()) return false;
    return true;
}

bool ScaledBandMatrix::is_diagonal() const {
    for (auto& [d, vals] : bands_) {
        if (d == 0) continue;
        for (auto& v : vals)
            if (!v.is_zero()) return false;
    }
    return true;
}

std::vector<RationalComplex> ScaledBandMatrix::diagonal() const {
    std::vector<RationalComplex> out(n_);
    auto it = bands_.find(0);
    if (it == bands_.end()) return out;
    for (int m = 0; m < n_; ++m) out[m] = RationalComplex(Rational(m + 1)) * it->second[m];
    return out;
}

Eigen::MatrixXcd ScaledBandMatrix::to_dense() const {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n_, n_);
    for (auto& [d, vals] : bands_) {
        for (int s = 0; s < n_ - std::abs(d); ++s) {
            int l = s + std::max(d, 0);
            int m = s + std::max(-d, 0);
            out(l, m) = std::sqrt(static_cast<double>(l + 1) * (m + 1)) * vals[s].to_complex();
        }
    }
    return out;
}

bool operator==(const ScaledBandMatrix& a, const ScaledBandMatrix& b) {
    if (a.n_ != b.n_) return false;
    auto nonzero = [](const ScaledBandMatrix& m) {
        std::map<int, std::vector<RationalComplex>> out;
        for (auto& [d, vals] : m.bands_) {
            bool any = false;
            for (auto& v : vals) any = any || !v.is_zero();
            if (any) out.emplace(d, vals);
        }
        return out;
    };
    return nonzero(a) == nonzero(b);
}

ScaledBandMatrix assemble_exact_1var(const UniSymbol& f, int n) {
    ScaledBandMatrix out(n);
    for (auto& [d, rho] : uni_canonical_slices(f)) {
        if (std::abs(d) >= n) continue;
        std::vector<RationalComplex> band(static_cast<size_t>(n - std::abs(d)));
        for (int s = 0; s < n - std::abs(d); ++s)
            band[s] = rho.radial_moment(static_cast<unsigned>(s + std::abs(d)));
        out.add_band(d, std::move(band));
    }
    return out;
}

ScaledBandMatrix compose_exact(const ScaledBandMatrix& a, const ScaledBandMatrix& b) {
    if (a.size() != b.size()) throw std::invalid_argument("compose_exact: size mismatch");
    const int n = a.size();
    ScaledBandMatrix out(n);
    std::map<int, std::vector<RationalComplex>> acc;
    for (auto& [da, va] : a.bands()) {
        for (auto& [db, vb] : b.bands()) {
            int d = da + db;
            if (std::abs(d) >= n) continue;
            auto it = acc.find(d);
            if (it == acc.end()) it = acc.emplace(d, std::vector<RationalComplex>(n - std::abs(d))).first;
            // (AB)tilde_{l,m} = sum_k (k+1) Atilde_{l,k} Btilde_{k,m}; the
            // band structure pins k = l - da = m + db.
            for (int s = 0; s < n - std::abs(d); ++s) {
                int l = s + std::max(d, 0);
                int m = s + std::max(-d, 0);
                int k = l - da;
                if (k < 0 || k >= n) continue;
                int sa = std::min(l, k), sb = std::min(k, m);
                const auto& bandA = va;
                const auto& bandB = vb;
                if (sa >= static_cast<int>(bandA.size()) || sb >= static_cast<int>(bandB.size())) continue;
                it->second[s] += RationalComplex(Rational(k + 1)) * bandA[sa] * bandB[sb];
            }
        }
    }
    for (auto& [d, vals] : acc) out.add_band(d, std::move(vals));
    return out;
}

ScaledBandMatrix scaled_sum(const ScaledBandMatrix& a, const ScaledBandMatrix& b) {
    if (a.size() != b.size()) throw std::invalid_argument("scaled_sum: size mismatch");
    ScaledBandMatrix out = a;
    for (auto& [d, vals] : b.bands()) out.add_band(d, vals);
    return out;
}

std::vector<Rational> exact_radial_spectrum(const UniSymbol& f, int count) {
    auto slices = uni_canonical_slices(f);
    for (auto& [d, rho] : slices)
        if (d != 0) throw std::invalid_argument("exact_radial_spectrum: symbol is not radial");
    std::vector<Rational> out;
    out.reserve(count);
    if (slices.empty()) {
        out.assign(count, Rational(0));
        return out;
    }
    const PiecewisePoly& rho = slices.begin()->second;
    for (int m = 0; m < count; ++m) {
        RationalComplex v = rho.radial_moment(static_cast<unsigned>(m));
        if (v.im != 0) throw std::invalid_argument("exact_radial_spectrum: non-real radial profile");
        out.push_back(Rational(m + 1) * v.re);
    }
    return out;
}

OperatorMatrix::OperatorMatrix(Truncation t, Eigen::MatrixXcd m) : trunc(std::move(t)), mat(std::move(m)) {
    if (mat.rows() != trunc.total() || mat.cols() != trunc.total())
        throw std::invalid_argument("OperatorMatrix: dimension mismatch");
}

namespace {
std::string fmt_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}
}  // namespace

void ScaledBandMatrix::write_csv(std::ostream& os) const {
    os << "row,col,re,im\n";
    for (int l = 0; l < n_; ++l)
        for (int m = 0; m < n_; ++m) {
            if (scaled_entry(l, m).is_zero()) continue;
            Complex v = entry(l, m);
            os << l << ',' << m << ',' << fmt_double(v.real()) << ',' << fmt_double(v.imag()) << '\n';
        }
}

void OperatorMatrix::write_csv(std::ostream& os) const {
    os << "row,col,re,im\n";
    for (long i = 0; i < mat.rows(); ++i)
        for (long j = 0; j < mat.cols(); ++j) {
            if (std::abs(mat(i, j)) <= 1e-300) continue;
            os << i << ',' << j << ',' << fmt_double(mat(i, j).real()) << ',' << fmt_double(mat(i, j).imag())
               << '\n';
        }
}

namespace {

// Quadrature assembly of a one-variable factor: entry (l,m) =
// sqrt((m+1)(l+1)) * 2 int r^{m+l+1} h_{m-l}(r) dr with h_d the d-th angular
// coefficient of the factor at radius r. The angle count is raised past the
// largest harmonic so the trapezoid sum is alias-free.
Eigen::MatrixXcd assemble_quad_1var(const UniSymbol& f, int n, const DiscRule& rule) {
    std::vector<const PiecewisePoly*> profiles;
    int angdeg = 0;
    for (auto& u : f) {
        profiles.push_back(&u.radial);
        angdeg = std::max(angdeg, std::abs(static_cast<int>(u.a) - static_cast<int>(u.b)));
    }
    const std::vector<double> panels = radial_panels(profiles, rule.composite);
    const int qt = std::max(rule.q_theta, angdeg + n + 1);
    const double two_pi = 2.0 * std::numbers::pi;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
    std::vector<Complex> values(qt);
    std::vector<Complex> h(2 * n - 1);  // h[d + n - 1], d = m - l
    for (size_t s = 0; s + 1 < panels.size(); ++s) {
        const double lo = panels[s], hi = panels[s + 1];
        for (int i = 0; i < rule.radial.order(); ++i) {
            const double r = lo + (hi - lo) * rule.radial.nodes[i];
            const double w = (hi - lo) * rule.radial.weights[i];
            for (int a = 0; a < qt; ++a) values[a] = uni_eval(f, std::polar(r, two_pi * a / qt));
            for (int d = -(n - 1); d <= n - 1; ++d) {
                Complex acc = 0.0;
                for (int a = 0; a < qt; ++a) acc += values[a] * std::polar(1.0, two_pi * a * d / qt);
                h[d + n - 1] = acc / static_cast<double>(qt);
            }
            for (int l = 0; l < n; ++l)
                for (int m = 0; m < n; ++m)
                    out(l, m) += 2.0 * w * std::pow(r, m + l + 1) * h[m - l + n - 1];
        }
    }
    for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m) out(l, m) *= std::sqrt(static_cast<double>(l + 1) * (m + 1));
    return out;
}

Eigen::MatrixXcd kron_dense(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

bool symbol_is_real(const SymbolExpr& f) { return (f - f.conj()).structurally_zero(); }

}  // namespace

OperatorMatrix assemble(const SymbolExpr& f, const Truncation& trunc, AssembleMode mode,
                        const std::vector<DiscRule>& rules) {
    if (f.dim() != trunc.dim()) throw std::invalid_argument("assemble: dimension mismatch");
    const int n = f.dim();
    if (!rules.empty() && static_cast<int>(rules.size()) != n)
        throw std::invalid_argument("assemble: need one quadrature rule per variable");
    Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(trunc.total(), trunc.total());
    for (auto& t : f.terms()) {
        Eigen::MatrixXcd acc;
        for (int j = 0; j < n; ++j) {
            Eigen::MatrixXcd factor;
            if (mode == AssembleMode::Exact)
                factor = assemble_exact_1var(t[j], trunc.caps()[j]).to_dense();
            else
                factor = assemble_quad_1var(t[j], trunc.caps()[j],
                                            rules.empty() ? DiscRule(64, 8) : rules[j]);
            acc = (j == 0) ? std::move(factor) : kron_dense(acc, factor);
        }
        total += acc;
    }
    OperatorMatrix out(trunc, std::move(total));
    if (symbol_is_real(f)) {
        const double dev = (out.mat - out.mat.adjoint()).cwiseAbs().maxCoeff();
        const double scale = std::max(1.0, out.mat.cwiseAbs().maxCoeff());
        if (dev > 1e-8 * scale)
            throw std::logic_error("assemble: real symbol produced a non-Hermitian matrix");
    }
    return out;
}

OperatorMatrix kronecker(const OperatorMatrix& a, const OperatorMatrix& b) {
    std::vector<int> caps = a.trunc.caps();
    for (int c : b.trunc.caps()) caps.push_back(c);
    return {Truncation(std::move(caps)), kron_dense(a.mat, b.mat)};
}

bool OperatorExpr::boundary_continuous() const {
    for (auto& prod : products)
        for (auto& f : prod)
            if (!f.boundary_continuous()) return false;
    return true;
}

SymbolExpr OperatorExpr::total_symbol() const {
    SymbolExpr total(n);
    for (auto& prod : products) {
        SymbolExpr p = SymbolExpr::constant(n, RationalComplex(1));
        for (auto& f : prod) p = p * f;
        total = total + p;
    }
    return total;
}

OperatorExpr OperatorExpr::single(SymbolExpr f) {
    OperatorExpr e;
    e.n = f.dim();
    e.products.push_back({std::move(f)});
    return e;
}

int default_pad(const OperatorExpr& expr) {
    int pad = 0;
    for (auto& prod : expr.products) {
        int shift = 0;
        for (auto& f : prod) shift += f.max_analytic_degree();
        pad = std::max(pad, shift);
    }
    return std::min(pad, 16);
}

OperatorMatrix compose(const OperatorExpr& expr, const Truncation& trunc, int pad, AssembleMode mode) {
    if (pad < 0) throw std::invalid_argument("compose: pad must be >= 0");
    if (expr.n != trunc.dim()) throw std::invalid_argument("compose: dimension mismatch");
    std::vector<int> padded_caps = trunc.caps();
    for (int& c : padded_caps) c += pad;
    Truncation padded(padded_caps);
    Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(padded.total(), padded.total());
    for (auto& prod : expr.products) {
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(padded.total(), padded.total());
        for (auto& f : prod) acc = acc * assemble(f, padded, mode).mat;
        total += acc;
    }
    if (pad == 0) return {trunc, std::move(total)};
    // Crop back to the requested truncation.
    std::vector<long> keep(trunc.total());
    for (long i = 0; i < trunc.total(); ++i) keep[i] = padded.linearize(trunc.delinearize(i));
    Eigen::MatrixXcd cropped(trunc.total(), trunc.total());
    for (long i = 0; i < trunc.total(); ++i)
        for (long j = 0; j < trunc.total(); ++j) cropped(i, j) = total(keep[i], keep[j]);
    return {trunc, std::move(cropped)};
}

double operator_norm(const Eigen::MatrixXcd& a, double tol) {
    if (tol <= 0) throw std::invalid_argument("operator_norm: tol must be > 0");
    if (!a.allFinite()) throw std::invalid_argument("operator_norm: non-finite entries");
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    auto run = [&](Eigen::VectorXcd v) {
        v /= v.norm();
        double sigma = 0.0;
        bool converged = false;
        for (int it = 0; it < 5000; ++it) {
            Eigen::VectorXcd w = a * v;
            double s = w.norm();  // sqrt(v^H A^H A v)
            Eigen::VectorXcd u = a.adjoint() * w;
            double un = u.norm();
            if (un == 0.0) return std::make_pair(s, true);
            v = u / un;
            if (it > 0 && std::abs(s - sigma) <= tol * std::max(s, 1e-300)) {
                sigma = s;
                converged = true;
                break;
            }
            sigma = s;
        }
        return std::make_pair(sigma, converged);
    };
    auto [sigma, ok] = run(Eigen::VectorXcd::Ones(a.cols()));
    if (!ok) {
        std::mt19937_64 rng(0x5eed);
        std::normal_distribution<double> dist;
        Eigen::VectorXcd v(a.cols());
        for (long i = 0; i < v.size(); ++i) v(i) = Complex(dist(rng), dist(rng));
        auto [sigma2, ok2] = run(std::move(v));
        sigma = std::max(sigma, sigma2);
    }
    return sigma;
}

KronApplicator::KronApplicator(const OperatorExpr& expr, const Truncation& trunc) : trunc_(trunc) {
    if (expr.n != trunc.dim()) throw std::invalid_argument("KronApplicator: dimension mismatch");
    for (auto& prod : expr.products) {
        std::vector<std::vector<TensorFactor>> factors;
        for (auto& f : prod) {
            std::vector<TensorFactor> tensor_terms;
            for (auto& t : f.terms()) {
                TensorFactor tf;
                for (int j = 0; j < expr.n; ++j)
                    tf.axis.push_back(assemble_exact_1var(t[j], trunc.caps()[j]).to_dense());
                tensor_terms.push_back(std::move(tf));
            }
            factors.push_back(std::move(tensor_terms));
        }
        products_.push_back(std::move(factors));
    }
}

namespace {
Eigen::VectorXcd apply_axis(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& v,
                            const std::vector<int>& caps, int axis) {
    long pre = 1, post = 1;
    for (int j = 0; j < axis; ++j) pre *= caps[j];
    for (size_t j = axis + 1; j < caps.size(); ++j) post *= caps[j];
    const long nj = caps[axis];
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
    for (long p = 0; p < pre; ++p)
        for (long i = 0; i < nj; ++i)
            for (long k = 0; k < nj; ++k) {
                const Complex mik = m(i, k);
                if (mik == 0.0) continue;
                const long obase = (p * nj + i) * post;
                const long ibase = (p * nj + k) * post;
                for (long q = 0; q < post; ++q) out(obase + q) += mik * v(ibase + q);
            }
    return out;
}
}  // namespace

Eigen::VectorXcd KronApplicator::apply(const Eigen::VectorXcd& v) const {
    if (v.size() != trunc_.total()) throw std::invalid_argument("KronApplicator::apply: size mismatch");
    Eigen::VectorXcd total = Eigen::VectorXcd::Zero(v.size());
    for (auto& factors : products_) {
        Eigen::VectorXcd cur = v;
        for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
            Eigen::VectorXcd next = Eigen::VectorXcd::Zero(v.size());
            for (auto& tf : *it) {
                Eigen::VectorXcd term = cur;
                for (int j = 0; j < trunc_.dim(); ++j) term = apply_axis(tf.axis[j], term, trunc_.caps(), j);
                next += term;
            }
            cur = std::move(next);
        }
        total += cur;
    }
    return total;
}

}  // namespace bergman
