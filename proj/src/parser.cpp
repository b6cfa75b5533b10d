#include "bergman/parser.hpp"

#include <cctype>
#include <sstream>

namespace bergman {

namespace {

class Cursor {
  public:
    Cursor(const std::string& text) : s_(text) {}

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eof() {
        skip_ws();
        return pos_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    bool accept_word(const std::string& w) {
        skip_ws();
        if (s_.compare(pos_, w.size(), w) == 0) {
            // keywords must not swallow the head of an identifier-like token
            size_t end = pos_ + w.size();
            if (end < s_.size() && std::isalpha(static_cast<unsigned char>(s_[end]))) return false;
            pos_ = end;
            return true;
        }
        return false;
    }
    size_t offset() const { return pos_; }
    [[noreturn]] void fail(const std::string& what) { throw parse_error(what, pos_); }

    bool at_digit() {
        skip_ws();
        return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
    }
    std::string digits() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected digits");
        return s_.substr(start, pos_ - start);
    }

    unsigned parse_uint() {
        std::string d = digits();
        return static_cast<unsigned>(std::stoul(d));
    }

    Rational parse_number() {
        std::string ip = digits();
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            std::string dp = digits();
            BigInt den(dp);
            if (den == 0) fail("zero denominator");
            return Rational(BigInt(ip), den);
        }
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            std::string fp = digits();
            BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(fp.size()));
            return Rational(BigInt(ip) * scale + BigInt(fp), scale);
        }
        return Rational(BigInt(ip));
    }

    int parse_coord(int n) {
        if (!accept('z')) fail("expected coordinate 'z<k>'");
        int j = static_cast<int>(parse_uint());
        if (j < 1 || j > n) fail("coordinate index out of range for dimension " + std::to_string(n));
        return j;
    }

  private:
    const std::string& s_;
    size_t pos_ = 0;
};

class SymbolParser {
  public:
    SymbolParser(Cursor& cur, int n) : cur_(cur), n_(n) {}

    SymbolExpr parse_expr() {
        bool neg = cur_.accept('-');
        SymbolExpr acc = parse_term();
        if (neg) acc = acc.scaled(RationalComplex(-1));
        while (true) {
            if (cur_.accept('+'))
                acc = acc + parse_term();
            else if (cur_.accept('-'))
                acc = acc - parse_term();
            else
                break;
        }
        return acc;
    }

  private:
    SymbolExpr parse_term() {
        SymbolExpr acc = parse_factor();
        while (cur_.accept('*')) acc = acc * parse_factor();
        return acc;
    }

    SymbolExpr parse_factor() {
        SymbolExpr base = parse_primary();
        while (cur_.accept('^')) base = base.pow(cur_.parse_uint());
        return base;
    }

    SymbolExpr parse_primary() {
        if (cur_.accept_word("conj")) {
            cur_.expect('(');
            SymbolExpr inner = parse_expr();
            cur_.expect(')');
            return inner.conj();
        }
        if (cur_.accept_word("radial")) return parse_radial();
        if (cur_.accept_word("i")) return SymbolExpr::constant(n_, RationalComplex(Rational(0), Rational(1)));
        if (cur_.accept('(')) {
            SymbolExpr inner = parse_expr();
            cur_.expect(')');
            return inner;
        }
        if (cur_.peek() == 'z') return coord_symbol();
        if (cur_.at_digit()) return SymbolExpr::constant(n_, RationalComplex(cur_.parse_number()));
        cur_.fail("expected number, coordinate, 'conj', 'radial', 'i' or '('");
    }

    SymbolExpr coord_symbol() { return SymbolExpr::coordinate(n_, cur_.parse_coord(n_)); }

    SymbolExpr parse_radial() {
        cur_.expect('(');
        int j = cur_.parse_coord(n_);
        cur_.expect(';');
        std::vector<PiecewisePoly::Piece> pieces;
        do {
            cur_.expect('[');
            Rational lo = parse_signed_rat();
            cur_.expect(',');
            Rational hi = parse_signed_rat();
            cur_.expect(']');
            cur_.expect(':');
            pieces.push_back({lo, hi, parse_rpoly()});
        } while (cur_.accept(','));
        cur_.expect(')');
        size_t off = cur_.offset();
        try {
            return SymbolExpr::radial_profile(n_, j, PiecewisePoly(std::move(pieces)));
        } catch (const std::invalid_argument& e) {
            throw parse_error(e.what(), off);
        }
    }

    Rational parse_signed_rat() {
        bool neg = cur_.accept('-');
        Rational q = cur_.parse_number();
        return neg ? -q : q;
    }

    RPoly parse_rpoly() {
        RPoly acc;
        bool neg = cur_.accept('-');
        acc += parse_rterm(neg);
        while (true) {
            if (cur_.accept('+'))
                acc += parse_rterm(false);
            else if (cur_.accept('-'))
                acc += parse_rterm(true);
            else
                break;
        }
        return acc;
    }

    RPoly parse_rterm(bool neg) {
        Rational coef(1);
        bool have_coef = false;
        if (cur_.at_digit()) {
            coef = cur_.parse_number();
            have_coef = true;
            cur_.accept('*');  // optional explicit product before r
        }
        unsigned deg = 0;
        if (cur_.accept_word("r")) {
            deg = 1;
            if (cur_.accept('^')) deg = cur_.parse_uint();
        } else if (!have_coef) {
            cur_.fail("expected coefficient or 'r' in radial polynomial");
        }
        if (neg) coef = -coef;
        return RPoly::monomial(deg, RationalComplex(coef));
    }

    Cursor& cur_;
    int n_;
};

}  // namespace

SymbolExpr parse_symbol(const std::string& text, int n) {
    Cursor cur(text);
    SymbolParser parser(cur, n);
    SymbolExpr s = parser.parse_expr();
    if (!cur.eof()) cur.fail("trailing input after expression");
    return s;
}

OperatorExpr parse_operator(const std::string& text, int n) {
    Cursor cur(text);
    OperatorExpr expr;
    expr.n = n;
    expr.text = text;
    auto parse_factor = [&]() {
        if (!cur.accept_word("T")) cur.fail("expected 'T('");
        cur.expect('(');
        SymbolParser parser(cur, n);
        SymbolExpr s = parser.parse_expr();
        cur.expect(')');
        return s;
    };
    auto parse_product = [&](bool negate) {
        std::vector<SymbolExpr> factors;
        factors.push_back(parse_factor());
        while (cur.accept('*')) factors.push_back(parse_factor());
        if (negate) factors[0] = factors[0].scaled(RationalComplex(-1));
        return factors;
    };
    expr.products.push_back(parse_product(false));
    while (true) {
        if (cur.accept('+'))
            expr.products.push_back(parse_product(false));
        else if (cur.accept('-'))
            expr.products.push_back(parse_product(true));
        else
            break;
    }
    if (!cur.eof()) cur.fail("trailing input after operator expression");
    return expr;
}

namespace {

std::string rpoly_to_text(const RPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    const auto& c = p.coeffs();
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i].is_zero()) continue;
        Rational v = c[i].re;  // radial profiles parse with real coefficients
        bool neg = v < 0;
        if (first) {
            if (neg) os << '-';
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        Rational a = neg ? -v : v;
        if (i == 0) {
            os << rational_str(a);
        } else {
            if (a != 1) os << rational_str(a) << '*';
            os << 'r';
            if (i > 1) os << '^' << i;
        }
    }
    return os.str();
}

std::string radial_to_text(const PiecewisePoly& rho, int j) {
    std::ostringstream os;
    os << "radial(z" << j << "; ";
    bool first = true;
    for (auto& piece : rho.pieces()) {
        if (!first) os << ", ";
        first = false;
        os << '[' << rational_str(piece.lo) << ',' << rational_str(piece.hi) << "]: "
           << rpoly_to_text(piece.poly);
    }
    os << ')';
    return os.str();
}

std::string scale_to_text(const RationalComplex& s) {
    if (s.im == 0) return rational_str(s.re);
    std::ostringstream os;
    os << '(' << rational_str(s.re) << (s.im > 0 ? "+" : "-");
    Rational a = s.im > 0 ? s.im : -s.im;
    if (a != 1) os << rational_str(a) << '*';
    os << "i)";
    return os.str();
}

// A pure term: total scale plus one uniterm shape per slot.
struct PureText {
    RationalComplex scale;
    std::vector<std::string> parts;

    std::string body() const {
        std::ostringstream os;
        bool first = true;
        for (auto& p : parts) {
            if (p.empty()) continue;
            if (!first) os << '*';
            os << p;
            first = false;
        }
        if (first) return "1";
        return os.str();
    }
};

void emit_uniterm(const UniTerm& u, int j, PureText& out) {
    out.scale *= u.scale;
    RationalComplex c;
    if (u.radial.is_constant(&c)) {
        out.scale *= c;
    } else {
        out.parts.push_back(radial_to_text(u.radial, j));
    }
    if (u.a > 0) {
        std::ostringstream os;
        os << 'z' << j;
        if (u.a > 1) os << '^' << u.a;
        out.parts.push_back(os.str());
    }
    if (u.b > 0) {
        std::ostringstream os;
        os << "conj(z" << j << ')';
        if (u.b > 1) os << '^' << u.b;
        out.parts.push_back(os.str());
    }
}

}  // namespace

std::string symbol_to_text(const SymbolExpr& s) {
    // Emit in fully distributed form: one text term per combination of
    // uniterms across the slots of each tensor term.
    std::vector<PureText> pure;
    for (auto& t : s.terms()) {
        std::vector<PureText> acc{PureText{RationalComplex(1), {}}};
        for (int j = 0; j < s.dim(); ++j) {
            std::vector<PureText> next;
            for (auto& base : acc)
                for (auto& u : t[j]) {
                    PureText pt = base;
                    emit_uniterm(u, j + 1, pt);
                    next.push_back(std::move(pt));
                }
            acc = std::move(next);
        }
        for (auto& pt : acc) pure.push_back(std::move(pt));
    }
    if (pure.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& pt : pure) {
        RationalComplex sc = pt.scale;
        bool neg = sc.im == 0 && sc.re < 0;
        if (neg) sc = -sc;
        if (first) {
            if (neg) os << '-';
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        std::string body = pt.body();
        if (sc == RationalComplex(1)) {
            os << body;
        } else if (body == "1") {
            os << scale_to_text(sc);
        } else {
            os << scale_to_text(sc) << '*' << body;
        }
    }
    return os.str();
}

std::string operator_to_text(const OperatorExpr& expr) {
    std::ostringstream os;
    bool first_p = true;
    for (auto& prod : expr.products) {
        if (!first_p) os << " + ";
        first_p = false;
        bool first_f = true;
        for (auto& f : prod) {
            if (!first_f) os << '*';
            first_f = false;
            os << "T(" << symbol_to_text(f) << ')';
        }
    }
    return os.str();
}

namespace {

nlohmann::ordered_json rc_to_json(const RationalComplex& v) {
    nlohmann::ordered_json j;
    j["re"] = rational_str(v.re);
    j["im"] = rational_str(v.im);
    return j;
}

RationalComplex rc_from_json(const nlohmann::ordered_json& j) {
    return {parse_rational(j.at("re").get<std::string>()), parse_rational(j.at("im").get<std::string>())};
}

}  // namespace

nlohmann::ordered_json symbol_to_json(const SymbolExpr& s) {
    nlohmann::ordered_json j;
    j["n"] = s.dim();
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (auto& t : s.terms()) {
        nlohmann::ordered_json slots = nlohmann::ordered_json::array();
        for (int v = 0; v < s.dim(); ++v) {
            nlohmann::ordered_json uniterms = nlohmann::ordered_json::array();
            for (auto& u : t[v]) {
                nlohmann::ordered_json uj;
                uj["scale"] = rc_to_json(u.scale);
                uj["a"] = u.a;
                uj["b"] = u.b;
                nlohmann::ordered_json pieces = nlohmann::ordered_json::array();
                for (auto& piece : u.radial.pieces()) {
                    nlohmann::ordered_json pj;
                    pj["lo"] = rational_str(piece.lo);
                    pj["hi"] = rational_str(piece.hi);
                    nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
                    for (auto& c : piece.poly.coeffs()) coeffs.push_back(rc_to_json(c));
                    pj["coeffs"] = std::move(coeffs);
                    pieces.push_back(std::move(pj));
                }
                uj["radial"] = {{"pieces", std::move(pieces)}, {"continuous", u.radial.continuous()}};
                uniterms.push_back(std::move(uj));
            }
            slots.push_back(std::move(uniterms));
        }
        terms.push_back(std::move(slots));
    }
    j["terms"] = std::move(terms);
    return j;
}

SymbolExpr symbol_from_json(const nlohmann::ordered_json& j) {
    const int n = j.at("n").get<int>();
    std::vector<SymbolExpr::TensorTerm> terms;
    for (auto& tj : j.at("terms")) {
        SymbolExpr::TensorTerm t;
        for (auto& slot : tj) {
            UniSymbol u;
            for (auto& uj : slot) {
                std::vector<PiecewisePoly::Piece> pieces;
                for (auto& pj : uj.at("radial").at("pieces")) {
                    std::vector<RationalComplex> coeffs;
                    for (auto& cj : pj.at("coeffs")) coeffs.push_back(rc_from_json(cj));
                    pieces.push_back({parse_rational(pj.at("lo").get<std::string>()),
                                      parse_rational(pj.at("hi").get<std::string>()),
                                      RPoly(std::move(coeffs))});
                }
                u.push_back({rc_from_json(uj.at("scale")), uj.at("a").get<unsigned>(),
                             uj.at("b").get<unsigned>(), PiecewisePoly(std::move(pieces))});
            }
            t.push_back(std::move(u));
        }
        terms.push_back(std::move(t));
    }
    return SymbolExpr(n, std::move(terms));
}

}  // namespace bergman
