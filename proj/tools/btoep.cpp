// Command-line front end: truncated Toeplitz operators on Bergman spaces of
// the disc and polydisc, Berezin transforms, and compactness diagnostics.

#include "bergman/diagnostics.hpp"
#include "bergman/parser.hpp"

#include "CLI11.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace {

using namespace bergman;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRefusal = 2;
constexpr int kExitClaimFailed = 3;

std::string fmt_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << content;
}

// Points: ';'-separated, coordinates ','-separated, each "re" or "re:im".
std::vector<Point> parse_points(const std::string& text, int n) {
    std::vector<Point> points;
    std::stringstream ss(text);
    std::string chunk;
    while (std::getline(ss, chunk, ';')) {
        if (chunk.empty()) continue;
        Point p;
        std::stringstream cs(chunk);
        std::string coord;
        while (std::getline(cs, coord, ',')) {
            double re = 0, im = 0;
            size_t colon = coord.find(':');
            re = std::stod(coord.substr(0, colon));
            if (colon != std::string::npos) im = std::stod(coord.substr(colon + 1));
            p.coords.emplace_back(re, im);
        }
        if (p.dim() != n)
            throw std::invalid_argument("point '" + chunk + "' has " + std::to_string(p.dim()) +
                                        " coordinates, expected " + std::to_string(n));
        points.push_back(std::move(p));
    }
    return points;
}

struct CommonOpts {
    int n = 1;
    RunConfig config;
    std::string out;

    void attach(CLI::App* cmd, bool with_tols = true) {
        cmd->add_option("--n", n, "number of variables")->check(CLI::Range(1, 8));
        cmd->add_option("--caps", config.caps, "basis caps per variable");
        cmd->add_option("--pad", config.pad, "composition padding (negative = automatic)");
        cmd->add_option("--xi-count", config.xi_count, "unimodular samples per face");
        cmd->add_option("--qr", config.q_r, "radial Gauss-Legendre order per panel");
        if (with_tols) {
            cmd->add_option("--tol-slice", config.tol_slice, "slice-norm tolerance");
            cmd->add_option("--tol-decay", config.tol_decay, "decay-tail tolerance");
        }
        cmd->add_option("--schedule", config.schedule, "approach path parameters in (0,1)");
        cmd->add_option("--seed", config.seed, "seed for randomized probes");
        cmd->add_option("--out", out, "output file (default stdout)");
        auto* exact = cmd->add_flag("--exact", "exact moment assembly (default)");
        cmd->add_flag("--float", "quadrature assembly")->excludes(exact);
    }

    void finalize(CLI::App* cmd) { config.exact = cmd->count("--float") == 0; }
};

int cmd_spectrum(const std::string& symbol_text, CommonOpts& opts) {
    SymbolExpr s = parse_symbol(symbol_text, 1);
    UniSymbol uni;
    for (auto& t : s.terms())
        for (auto& u : t[0]) uni.push_back(u);
    const int cap = opts.config.truncation(1).caps()[0];
    std::vector<Rational> diag = exact_radial_spectrum(uni, cap);  // throws if not radial
    std::ostringstream os;
    os << "m,num,den,value\n";
    for (int m = 0; m < cap; ++m)
        os << m << ',' << numerator(diag[m]).str() << ',' << denominator(diag[m]).str() << ','
           << fmt_double(to_double(diag[m])) << '\n';
    write_output(opts.out, os.str());
    return kExitOk;
}

int cmd_berezin(const std::string& symbol_text, const std::string& op_text, const std::string& points_text,
                const std::vector<double>& grid_radii, int grid_angles, CommonOpts& opts) {
    const int n = opts.n;
    std::vector<Point> points;
    if (!points_text.empty()) {
        points = parse_points(points_text, n);
    } else {
        if (n != 1)
            throw std::invalid_argument("the default radial grid needs --n 1; pass --points for n > 1");
        for (double r : grid_radii)
            for (int a = 0; a < grid_angles; ++a) {
                points.push_back(Point({std::polar(r, 2.0 * std::numbers::pi * a / grid_angles)}));
                if (r == 0.0) break;
            }
    }
    for (auto& p : points)
        if (!p.interior()) throw std::invalid_argument("berezin: grid points must satisfy |p_j| < 1");
    std::ostringstream os;
    os << "p_coords";
    for (int j = 1; j <= n; ++j) os << ",p" << j << "_re,p" << j << "_im";
    os << ",bt_re,bt_im,kernel_mass_defect\n";
    std::optional<OperatorMatrix> op_matrix;
    std::optional<SymbolExpr> symbol;
    if (!op_text.empty()) {
        OperatorExpr expr = parse_operator(op_text, n);
        int pad = opts.config.pad >= 0 ? opts.config.pad : default_pad(expr);
        op_matrix = compose(expr, opts.config.truncation(n), pad,
                            opts.config.exact ? AssembleMode::Exact : AssembleMode::Quadrature);
    } else {
        symbol = parse_symbol(symbol_text, n);
    }
    int row = 0;
    for (auto& p : points) {
        Complex bt;
        double defect = 0.0;
        if (op_matrix) {
            bt = berezin_operator(*op_matrix, p);
            defect = std::max(0.0, 1.0 - kernel_coeffs(p, op_matrix->trunc).norm2());
        } else {
            bt = berezin_symbol(*symbol, p, opts.config.q_r);
        }
        os << row++;
        for (auto& c : p.coords) os << ',' << fmt_double(c.real()) << ',' << fmt_double(c.imag());
        os << ',' << fmt_double(bt.real()) << ',' << fmt_double(bt.imag()) << ',' << fmt_double(defect)
           << '\n';
    }
    write_output(opts.out, os.str());
    return kExitOk;
}

int cmd_compactness(const std::string& op_text, CommonOpts& opts) {
    OperatorExpr expr = parse_operator(op_text, opts.n);
    CompactnessReport report = run_compactness(expr, opts.config);
    write_output(opts.out, report.to_json().dump(2) + "\n");
    return kExitOk;
}

int cmd_divide(const std::string& symbol_text, CommonOpts& opts) {
    SymbolExpr s = parse_symbol(symbol_text, 1);
    auto poly = symbol_to_poly(s);
    if (!poly) throw std::invalid_argument("divide: the symbol is not a polynomial in z, conj(z)");
    Json j;
    auto quotient = divide_by_one_minus_mod2(*poly);
    j["divisible"] = quotient.has_value();
    if (quotient) j["quotient"] = symbol_to_text(quotient->to_symbol());
    write_output(opts.out, j.dump(2) + "\n");
    return kExitOk;
}

int cmd_examples(CommonOpts& opts, const std::string& phi_break_text) {
    Rational brk = parse_rational(phi_break_text);
    ExamplesResult result = reproduce_examples(opts.config, brk);
    write_output(opts.out, result.bundle.dump(2) + "\n");
    if (!result.failed_claims.empty()) {
        for (auto& claim : result.failed_claims) std::cerr << "failed claim: " << claim << '\n';
        return kExitClaimFailed;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "btoep - truncated Toeplitz operators on Bergman spaces of the polydisc:\n"
        "exact radial spectra, Berezin transforms, compactness diagnostics"};
    app.require_subcommand(1);

    CommonOpts spectrum_opts, berezin_opts, compact_opts, divide_opts, examples_opts;
    std::string symbol_text, op_text, points_text, phi_break_text = "1/2";
    std::vector<double> grid_radii{0.0, 0.25, 0.5, 0.75, 0.9};
    int grid_angles = 8;

    auto* spectrum = app.add_subcommand("spectrum", "exact eigenvalues of a radial one-variable symbol");
    spectrum->add_option("symbol", symbol_text, "symbol expression")->required();
    spectrum_opts.attach(spectrum, false);

    auto* berezin = app.add_subcommand("berezin", "Berezin transform of a symbol or truncated operator");
    berezin->add_option("symbol", symbol_text, "symbol expression");
    berezin->add_option("--op", op_text, "operator expression T(...)*T(...)+...");
    berezin->add_option("--points", points_text, "evaluation points 're:im,re:im;...'");
    berezin->add_option("--grid-radii", grid_radii, "radial grid for n=1 (default 0..0.9)");
    berezin->add_option("--grid-angles", grid_angles, "angles per radius for n=1");
    berezin_opts.attach(berezin, false);

    auto* compactness = app.add_subcommand("compactness", "full compactness diagnostics for an operator");
    compactness->add_option("--op", op_text, "operator expression T(...)*T(...)+...")->required();
    compact_opts.n = 2;
    compact_opts.attach(compactness);

    auto* divide = app.add_subcommand("divide", "constructive division of a polynomial by 1-|z|^2");
    divide->add_option("symbol", symbol_text, "one-variable polynomial symbol")->required();
    divide_opts.attach(divide, false);

    auto* examples = app.add_subcommand("examples", "reproduce the built-in example catalog");
    examples->add_option("--phi-break", phi_break_text, "breakpoint of the example profiles (rational)");
    examples_opts.attach(examples);

    CLI11_PARSE(app, argc, argv);

    try {
        if (spectrum->parsed()) {
            spectrum_opts.finalize(spectrum);
            return cmd_spectrum(symbol_text, spectrum_opts);
        }
        if (berezin->parsed()) {
            berezin_opts.finalize(berezin);
            if (symbol_text.empty() == op_text.empty())
                throw std::invalid_argument("berezin: pass exactly one of a symbol or --op");
            return cmd_berezin(symbol_text, op_text, points_text, grid_radii, grid_angles, berezin_opts);
        }
        if (compactness->parsed()) {
            compact_opts.finalize(compactness);
            return cmd_compactness(op_text, compact_opts);
        }
        if (divide->parsed()) {
            divide_opts.finalize(divide);
            return cmd_divide(symbol_text, divide_opts);
        }
        if (examples->parsed()) {
            examples_opts.finalize(examples);
            return cmd_examples(examples_opts, phi_break_text);
        }
    } catch (const bergman::refusal_error& e) {
        std::cerr << "refusal: " << e.what() << '\n';
        return kExitRefusal;
    } catch (const bergman::parse_error& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
