#ifndef KGD_CLASSIFIER_HPP
#define KGD_CLASSIFIER_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kgd/nonlinearity.hpp"

namespace kgd {

/// Thrown when the root structure of P_F cannot be resolved at the given
/// tolerance; the caller should tighten it rather than accept a guess.
struct AmbiguousClassification : std::runtime_error {
    explicit AmbiguousClassification(const std::string& what) : std::runtime_error(what) {}
};

struct IdenticallyZero : std::runtime_error {
    IdenticallyZero() : std::runtime_error("polynomial identically zero within tolerance") {}
};

enum class DissipationTag { A0, B0, B1, B2, B3, C, NotDissipative };

std::string to_string(DissipationTag tag);

/// Outcome of the six-case analysis of P_F on [-1, 1].
struct DissipationClass {
    DissipationTag tag;
    /// Sharp constants C_j = (1/8) inf_{(-1,1)} P_F(y) / (1-y^2)^j for each j
    /// where the infimum is positive.
    std::map<int, double> constants;
    double y0 = 0;  // degenerate velocity, tag == C only
    double z0 = 0;  // atanh(y0), tag == C only
    double min_point = 0, min_value = 0;  // witness, tag == NotDissipative only
};

struct PolyRoot {
    double y;
    int multiplicity;  // 1, 2 or 3
};

/// Exact minimum of a cubic over [a, b] from endpoint values and the real
/// roots of p' (quadratic formula, no iteration).
struct MinResult {
    double argmin, min;
};
MinResult min_on_interval(const CubicPoly& poly, double a, double b);

/// All real roots of poly in [-1, 1] with multiplicities. tol is relative to
/// max |p_i|. Throws IdenticallyZero if every coefficient is below tolerance.
std::vector<PolyRoot> roots_in_interval(const CubicPoly& poly, double tol = 1e-9);

/// Infimum over (-1, 1) of poly(y) / (1-y^2)^j for poly >= 0 on the interval.
/// Empty when the infimum is 0 (condition B_j fails).
std::optional<double> ratio_inf(const CubicPoly& poly, int j);

/// Lemma-style case analysis of P_F: decides A0 / B0..B3 / C / NotDissipative
/// and computes the sharp constants. Throws AmbiguousClassification when the
/// root structure straddles the tolerance.
DissipationClass classify(const CubicPoly& poly, double tol = 1e-9);

inline DissipationClass classify(const CubicNonlinearity& nl, double tol = 1e-9) {
    return classify(P_F_coeffs(nl), tol);
}

enum class NormTarget { u, du };

/// Predicted decay rates: ||target||_{L^p} = O( t^{-a} (log t)^{-q} (loglog t)^{r} )
/// with the free rate a = 1/2 - 1/p. Use p = infinity for the sup norm.
struct DecayLaw {
    DissipationTag tag;

    static double algebraic_exponent(double p);  // 1/2 - 1/p
    double log_exponent(NormTarget target, double p) const;     // q >= 0
    double loglog_exponent(NormTarget target, double p) const;  // r >= 0
};

/// Throws std::domain_error for NotDissipative (no theorem applies).
DecayLaw predicted_decay(const DissipationClass& cls);

}  // namespace kgd

#endif
