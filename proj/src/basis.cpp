#include "bergman/basis.hpp"

#include <charconv>
#include <cmath>

namespace bergman {

Truncation::Truncation(std::vector<int> caps) : caps_(std::move(caps)) {
    if (caps_.empty()) throw std::invalid_argument("Truncation: dimension must be >= 1");
    total_ = 1;
    for (int n : caps_) {
        if (n < 1) throw std::invalid_argument("Truncation: caps must be >= 1");
        total_ *= n;
    }
}

long Truncation::linearize(const MultiIndex& m) const {
    if (static_cast<int>(m.size()) != dim()) throw std::invalid_argument("linearize: dimension mismatch");
    long idx = 0;
    for (int j = 0; j < dim(); ++j) {
        if (m[j] < 0 || m[j] >= caps_[j]) throw std::invalid_argument("linearize: index out of range");
        idx = idx * caps_[j] + m[j];
    }
    return idx;
}

MultiIndex Truncation::delinearize(long idx) const {
    if (idx < 0 || idx >= total_) throw std::invalid_argument("delinearize: index out of range");
    MultiIndex m(dim());
    for (int j = dim() - 1; j >= 0; --j) {
        m[j] = static_cast<int>(idx % caps_[j]);
        idx /= caps_[j];
    }
    return m;
}

bool Point::interior() const {
    for (auto& z : coords)
        if (std::abs(z) >= 1.0) return false;
    return true;
}

bool Point::on_boundary(double tol) const {
    return !boundary_faces(tol).empty();
}

std::vector<int> Point::boundary_faces(double tol) const {
    std::vector<int> faces;
    for (int j = 0; j < dim(); ++j)
        if (std::abs(std::abs(coords[j]) - 1.0) <= tol) faces.push_back(j + 1);
    return faces;
}

CoefVector::CoefVector(Truncation t, Eigen::VectorXcd c) : trunc(std::move(t)), coeffs(std::move(c)) {
    if (coeffs.size() != trunc.total()) throw std::invalid_argument("CoefVector: length mismatch");
}

CoefVector CoefVector::unit(const Truncation& t, long idx) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(t.total());
    c(idx) = 1.0;
    return {t, std::move(c)};
}

namespace {
std::string fmt_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}
}  // namespace

void CoefVector::write_csv(std::ostream& os) const {
    os << "index";
    for (int j = 1; j <= trunc.dim(); ++j) os << ",m" << j;
    os << ",re,im\n";
    for (long i = 0; i < trunc.total(); ++i) {
        MultiIndex m = trunc.delinearize(i);
        os << i;
        for (int v : m) os << ',' << v;
        os << ',' << fmt_double(coeffs(i).real()) << ',' << fmt_double(coeffs(i).imag()) << '\n';
    }
}

CoefVector kernel_coeffs(const Point& p, const Truncation& trunc) {
    if (p.dim() != trunc.dim()) throw std::invalid_argument("kernel_coeffs: dimension mismatch");
    if (!p.interior())
        throw std::invalid_argument("kernel_coeffs: point must be interior (|p_j| < 1 for all j)");
    // Per-variable factors, then the mixed-radix outer product (variable 1 slowest).
    std::vector<Eigen::VectorXcd> factors;
    for (int j = 0; j < p.dim(); ++j) {
        const Complex pj = p.coords[j];
        const double scale = 1.0 - std::norm(pj);
        const int N = trunc.caps()[j];
        Eigen::VectorXcd f(N);
        Complex pw = 1.0;
        for (int m = 0; m < N; ++m) {
            f(m) = scale * std::sqrt(static_cast<double>(m + 1)) * pw;
            pw *= std::conj(pj);
        }
        factors.push_back(std::move(f));
    }
    Eigen::VectorXcd out = factors[0];
    for (size_t j = 1; j < factors.size(); ++j) {
        Eigen::VectorXcd next(out.size() * factors[j].size());
        long k = 0;
        for (long a = 0; a < out.size(); ++a)
            for (long b = 0; b < factors[j].size(); ++b) next(k++) = out(a) * factors[j](b);
        out = std::move(next);
    }
    return {trunc, std::move(out)};
}

Complex eval_kernel(const Point& z, const Point& p) {
    if (z.dim() != p.dim()) throw std::invalid_argument("eval_kernel: dimension mismatch");
    Complex prod = 1.0;
    for (int j = 0; j < z.dim(); ++j) {
        Complex d = 1.0 - z.coords[j] * std::conj(p.coords[j]);
        prod *= 1.0 / (d * d);
    }
    return prod;
}

Complex inner_product(const CoefVector& u, const CoefVector& v) {
    if (u.trunc != v.trunc) throw std::invalid_argument("inner_product: truncation mismatch");
    // <u, v> = sum u_m conj(v_m)
    return v.coeffs.dot(u.coeffs);
}

}  // namespace bergman
