#ifndef BERGMAN_DIAGNOSTICS_HPP
#define BERGMAN_DIAGNOSTICS_HPP

#include "bergman/berezin.hpp"
#include "bergman/polyzzbar.hpp"
#include "bergman/toeplitz.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bergman {

using Json = nlohmann::ordered_json;

/// A diagnostic declined to run because a hypothesis of the underlying
/// statement is violated (distinct from a negative verdict).
struct refusal_error : std::runtime_error {
    explicit refusal_error(const std::string& what) : std::runtime_error(what) {}
};

/// Three-valued outcome. Finite sections can certify non-compactness (a
/// nonzero slice persists) but only accumulate evidence for compactness
/// unless exact structural zeros are found.
enum class Verdict { Compact, CompactConsistent, NotCompact, Inconclusive };

std::string verdict_name(Verdict v);

struct SliceVerdict {
    int k = 1;            // restricted coordinate
    Complex xi;           // unimodular sample
    double norm = 0;      // operator norm of the assembled slice expression
    bool exact_zero = false;  // structurally zero in exact arithmetic
};

struct RunConfig {
    std::vector<int> caps{32, 32};
    int pad = -1;  // negative = automatic (degree-shift heuristic)
    int xi_count = 64;
    int q_r = 64;
    double tol_slice = 1e-8;
    double tol_decay = 1e-6;
    std::vector<double> schedule{0.5, 0.75, 0.9, 0.95, 0.975, 0.99};
    unsigned long seed = 12345;
    bool exact = true;

    Truncation truncation(int n) const;
    Json to_json() const;
};

/// Theorem-style slice test: for each coordinate k and each of xi_count
/// equispaced unimodular xi, restrict every symbol, assemble the
/// (n-1)-variable operator expression with padding, and measure its norm.
/// Structural zeros short-circuit the assembly (each product containing a
/// factor whose restriction vanishes identically).
std::vector<SliceVerdict> restriction_slice_test(const OperatorExpr& expr, int xi_count,
                                                 const Truncation& trunc, int pad, double tol,
                                                 AssembleMode mode = AssembleMode::Exact);

struct DecayTestResult {
    std::vector<DecayProfile> profiles;
    Verdict verdict = Verdict::Inconclusive;  // NotCompact or Inconclusive ("no obstruction")
    std::vector<std::string> evidence;
};

/// Berezin boundary-decay falsifier. A profile is an obstruction when its
/// reliable segment shows no substantial decay (tail stays within 10% of the
/// segment peak) and that tail exceeds tol. A decreasing profile is only
/// evidence, never proof, of compactness; finitely many approach paths are
/// sampled and every report says so.
DecayTestResult decay_test(const OperatorExpr& expr, const std::vector<Point>& targets,
                           const Truncation& trunc, int pad, double tol,
                           const std::vector<double>& schedule_ts);

/// Proposition for symbols with harmonic boundary slices: T_f T_g is compact
/// iff f g vanishes on the boundary. Requires f and g n-harmonic (the
/// structural sufficient condition for the slice hypothesis); refuses
/// otherwise naming the offending Laplacian.
Verdict harmonic_slice_criterion(const PolyZZbar& f, const PolyZZbar& g);

struct DecoupledResult {
    Verdict verdict = Verdict::Inconclusive;
    std::string detail;
    std::optional<Point> witness;  // interior point with all factors nonzero
};

/// Proposition for products of tensor-product symbols f_k = prod_j f_{j,k}(z_j):
/// F = prod f_k vanishing on the boundary with F not identically zero gives
/// compactness; F nonvanishing on the boundary rules compactness out for a
/// nonzero operator; F identically zero is inconclusive (zero-product
/// territory).
DecoupledResult decoupled_criterion(const std::vector<SymbolExpr>& factors, unsigned long seed = 12345);

/// Dimension-two proposition for T_{f_1}..T_{f_M} T_h T_{g_1}..T_{g_N} with
/// polynomial f's and g's: compact iff the pointwise product of all symbols
/// vanishes on both faces. Face vanishing of the polynomial part is decided
/// exactly; h is grid-tested at threshold 1e-12.
Verdict polynomial_criterion(const std::vector<PolyZZbar>& fs, const SymbolExpr& h,
                             const std::vector<PolyZZbar>& gs);

struct ProbePoint {
    double t = 0;
    double value = 0;       // ||(psi - psi_zeta) k_{p1(t)} h||
    double tail_bound = 0;  // series remainder bound
    bool reliable = false;
};

/// Boundary-limit probe: quadrature-free moment series for
/// ||(psi - psi_zeta) k^D_{p1(t)} h|| along p1(t) = t zeta. The one-variable
/// series is truncated adaptively with an explicit remainder bound, so every
/// sampled point carries its own adequacy certificate.
std::vector<ProbePoint> lemma_limit_probe(const SymbolExpr& psi, Complex zeta, const CoefVector& h,
                                          const std::vector<double>& ts);

struct CompactnessReport {
    std::string expr_text;
    RunConfig config;
    int pad_used = 0;
    std::vector<SliceVerdict> slices;
    std::vector<DecayProfile> profiles;
    std::vector<std::pair<int, double>> face_maxima;  // (face k, max |total symbol|)
    Verdict verdict = Verdict::Inconclusive;
    std::vector<std::string> evidence;
    std::vector<std::string> warnings;

    Json to_json() const;
};

/// Full diagnostics pipeline: slice test, boundary-face maxima of the total
/// symbol, decay falsifier, aggregated verdict.
CompactnessReport run_compactness(const OperatorExpr& expr, const RunConfig& config);

/// Default decay targets: the fourth roots of unity placed on each face, the
/// remaining coordinates at the anchor.
std::vector<Point> default_decay_targets(int n);

struct ExamplesResult {
    Json bundle;
    std::vector<std::string> failed_claims;
};

/// Runs the full pipeline on the built-in example catalog (the two
/// sum/product symbol pairs built from the piecewise profiles and the
/// separable compact case), asserting their qualitative claims. `phi_break`
/// moves the inner profile breakpoint (default 1/2); a discontinuous profile
/// is accepted but flagged, and the dependent claims then fail.
ExamplesResult reproduce_examples(const RunConfig& config, const Rational& phi_break = Rational(1, 2));

/// The piecewise-radial example profiles.
PiecewisePoly phi_profile(const Rational& brk = Rational(1, 2));
PiecewisePoly psi_profile(const Rational& brk = Rational(1, 2));

}  // namespace bergman

#endif
