#include "kgd/classifier.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace kgd {

std::string to_string(DissipationTag tag) {
    switch (tag) {
        case DissipationTag::A0: return "A0";
        case DissipationTag::B0: return "B0";
        case DissipationTag::B1: return "B1";
        case DissipationTag::B2: return "B2";
        case DissipationTag::B3: return "B3";
        case DissipationTag::C: return "C";
        case DissipationTag::NotDissipative: return "NotDissipative";
    }
    return "?";
}

namespace {

double coeff_scale(const CubicPoly& p) {
    return std::max({std::abs(p.p0), std::abs(p.p1), std::abs(p.p2), std::abs(p.p3)});
}

// Real roots of c0 + c1 y + c2 y^2, unrestricted.
std::vector<double> quadratic_roots(double c0, double c1, double c2, double tol_scale) {
    std::vector<double> out;
    if (std::abs(c2) <= tol_scale) {
        if (std::abs(c1) > tol_scale) out.push_back(-c0 / c1);
        return out;
    }
    const double disc = c1 * c1 - 4 * c2 * c0;
    if (disc < 0) return out;
    const double sq = std::sqrt(disc);
    // numerically stable pair
    const double q = -0.5 * (c1 + (c1 >= 0 ? sq : -sq));
    out.push_back(q / c2);
    if (std::abs(q) > 0) out.push_back(c0 / q);
    else out.push_back(0.0);
    return out;
}

// Bisection polish of a sign-changing root of f on [lo, hi].
template <class F>
double bisect(F&& f, double lo, double hi) {
    double flo = f(lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0 || hi - lo < 1e-16 * (1 + std::abs(mid))) return mid;
        if ((flo < 0) != (fm < 0)) hi = mid;
        else { lo = mid; flo = fm; }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

MinResult min_on_interval(const CubicPoly& poly, double a, double b) {
    if (!(a < b)) throw std::invalid_argument("min_on_interval: need a < b");
    double best_y = a, best = poly(a);
    auto consider = [&](double y) {
        const double v = poly(y);
        if (v < best) { best = v; best_y = y; }
    };
    consider(b);
    // p' = p1 + 2 p2 y + 3 p3 y^2
    const double scale = coeff_scale(poly);
    for (double r : quadratic_roots(poly.p1, 2 * poly.p2, 3 * poly.p3, 1e-300 * (1 + scale)))
        if (r > a && r < b) consider(r);
    return {best_y, best};
}

std::vector<PolyRoot> roots_in_interval(const CubicPoly& poly, double tol) {
    const double scale = coeff_scale(poly);
    if (scale == 0 || (std::abs(poly.p0) <= tol * scale && std::abs(poly.p1) <= tol * scale &&
                       std::abs(poly.p2) <= tol * scale && std::abs(poly.p3) <= tol * scale))
        throw IdenticallyZero{};

    std::vector<double> raw;
    if (std::abs(poly.p3) > tol * scale) {
        // depressed cubic t^3 + P t + Q, y = t - p2/(3 p3)
        const double a = poly.p2 / poly.p3, b = poly.p1 / poly.p3, c = poly.p0 / poly.p3;
        const double shift = a / 3.0;
        const double P = b - a * a / 3.0;
        const double Q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
        const double disc = -4 * P * P * P - 27 * Q * Q;
        const double dtol = 1e4 * tol * (1 + P * P * P * P);  // discriminant noise floor
        if (std::abs(P) <= std::cbrt(tol) * (1 + std::abs(a) * std::abs(a)) && std::abs(Q) <= tol * (1 + std::abs(c))) {
            raw.push_back(-shift);  // triple root
        } else if (std::abs(disc) <= dtol) {
            const double td = -3.0 * Q / (2.0 * P);  // double root
            raw.push_back(td - shift);
            raw.push_back(-2.0 * td - shift);
        } else if (disc > 0) {
            // three distinct real roots, trigonometric form
            const double m = 2.0 * std::sqrt(-P / 3.0);
            const double arg = std::clamp(3.0 * Q / (P * m), -1.0, 1.0);
            const double phi = std::acos(arg) / 3.0;
            for (int k = 0; k < 3; ++k)
                raw.push_back(m * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) - shift);
        } else {
            // one real root, Cardano
            const double u = std::cbrt(-Q / 2.0 + std::sqrt(Q * Q / 4.0 + P * P * P / 27.0));
            const double t = (u == 0.0) ? 0.0 : u - P / (3.0 * u);
            raw.push_back(t - shift);
        }
    } else if (std::abs(poly.p2) > tol * scale) {
        raw = quadratic_roots(poly.p0, poly.p1, poly.p2, 0.0);
        if (raw.size() == 2 && std::abs(raw[0] - raw[1]) <
                                   std::sqrt(tol) * (1 + std::abs(raw[0])))
            raw = {0.5 * (raw[0] + raw[1])};
    } else if (std::abs(poly.p1) > tol * scale) {
        raw.push_back(-poly.p0 / poly.p1);
    }  // nonzero constant: no roots

    // keep roots in [-1-eps, 1+eps], merge duplicates, polish, assign multiplicity
    std::sort(raw.begin(), raw.end());
    const double edge = 64 * std::sqrt(tol);
    std::vector<PolyRoot> out;
    for (double r : raw) {
        if (std::abs(r) > 1 + edge) continue;
        if (!out.empty() && std::abs(r - out.back().y) < std::sqrt(tol) * (1 + std::abs(r))) continue;
        // multiplicity from derivative magnitudes at the root
        const double d1 = std::abs(poly.deriv(r)), d2 = std::abs(poly.deriv2(r));
        int mult = 1;
        if (d1 <= std::sqrt(tol) * scale * 10) mult = (d2 <= std::cbrt(tol) * scale * 10) ? 3 : 2;
        double y = r;
        if (mult == 1) {
            // polish on p by bisection around a sign change
            double h = 1e-6 * (1 + std::abs(r));
            double lo = r - h, hi = r + h;
            for (int it = 0; it < 60 && (poly(lo) < 0) == (poly(hi) < 0); ++it) { lo -= h; hi += h; h *= 2; }
            if ((poly(lo) < 0) != (poly(hi) < 0)) y = bisect(poly, lo, hi);
        } else if (mult == 2) {
            // double root is a simple root of p'
            auto dp = [&](double t) { return poly.deriv(t); };
            double h = 1e-6 * (1 + std::abs(r));
            double lo = r - h, hi = r + h;
            for (int it = 0; it < 60 && (dp(lo) < 0) == (dp(hi) < 0); ++it) { lo -= h; hi += h; h *= 2; }
            if ((dp(lo) < 0) != (dp(hi) < 0)) y = bisect(dp, lo, hi);
        }
        y = std::clamp(y, -1.0, 1.0);
        if (std::abs(y) <= 1 + edge) out.push_back({y, mult});
    }
    // drop polished duplicates that collapsed onto each other
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.y < b.y; });
    out.erase(std::unique(out.begin(), out.end(),
                          [&](auto& a, auto& b) { return std::abs(a.y - b.y) < std::sqrt(tol); }),
              out.end());
    return out;
}

namespace {

// multiplicity of the root of p at y = s (s = +1 or -1); 0 if p(s) != 0
int endpoint_multiplicity(const CubicPoly& p, double s, double tol, double scale) {
    if (std::abs(p(s)) > tol * scale) return 0;
    if (std::abs(p.deriv(s)) > std::sqrt(tol) * scale) return 1;
    if (std::abs(p.deriv2(s)) > std::cbrt(tol) * scale) return 2;
    return 3;
}

// Leading coefficient c with p(y) = (1-y)^m (c + o(1)) as y->1 (s=+1), or
// p(y) = (1+y)^m (c + o(1)) as y->-1 (s=-1): c = (-s)^m p^(m)(s) / m!.
double endpoint_leading(const CubicPoly& p, double s, int m) {
    double d;
    switch (m) {
        case 0: d = p(s); break;
        case 1: d = p.deriv(s); break;
        case 2: d = p.deriv2(s) / 2.0; break;
        default: d = p.p3; break;  // p'''(s)/3! = p3
    }
    return (s > 0 && m % 2 == 1) ? -d : d;
}

// real roots in (lo, hi) of the quartic given by coefficients c[0..4], via
// companion-matrix eigenvalues
std::vector<double> quartic_roots_in(const std::array<double, 5>& c, double lo, double hi) {
    int deg = 4;
    double top = std::max({std::abs(c[0]), std::abs(c[1]), std::abs(c[2]), std::abs(c[3]), std::abs(c[4])});
    while (deg > 0 && std::abs(c[deg]) <= 1e-14 * (1 + top)) --deg;
    std::vector<double> out;
    if (deg == 0) return out;
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[i] / c[deg];
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    for (int i = 0; i < deg; ++i) {
        const auto ev = es.eigenvalues()[i];
        if (std::abs(ev.imag()) < 1e-8 * (1 + std::abs(ev.real()))) {
            const double r = ev.real();
            if (r > lo && r < hi) out.push_back(r);
        }
    }
    return out;
}

}  // namespace

std::optional<double> ratio_inf(const CubicPoly& poly, int j) {
    if (j < 0 || j > 3) throw std::invalid_argument("ratio_inf: j must be 0..3");
    const double scale = coeff_scale(poly);
    if (scale == 0) return std::nullopt;
    const double tol = 1e-9;

    auto ratio = [&](double y) {
        const double w = 1 - y * y;
        return poly(y) / std::pow(w, j);
    };

    double inf = std::numeric_limits<double>::infinity();
    // endpoint limits, decided by root multiplicity at +-1 versus j
    for (double s : {-1.0, 1.0}) {
        const int m = endpoint_multiplicity(poly, s, tol, scale);
        if (m > j) { inf = 0.0; }
        else if (m == j) {
            const double c = endpoint_leading(poly, s, m);
            inf = std::min(inf, c / std::pow(2.0, j));
        }
        // m < j: limit +inf, no constraint
    }
    // interior critical points: (1-y^2) P'(y) + 2 j y P(y) = 0, degree <= 4
    const double q0 = poly.p1, q1 = 2 * poly.p2, q2 = 3 * poly.p3;
    std::array<double, 5> c{};
    // (1-y^2)(q0 + q1 y + q2 y^2)
    c[0] += q0; c[1] += q1; c[2] += q2 - q0; c[3] += -q1; c[4] += -q2;
    // + 2 j y (p0 + p1 y + p2 y^2 + p3 y^3)
    c[1] += 2.0 * j * poly.p0; c[2] += 2.0 * j * poly.p1;
    c[3] += 2.0 * j * poly.p2; c[4] += 2.0 * j * poly.p3;
    bool degenerate = true;
    for (double ci : c) degenerate = degenerate && std::abs(ci) <= 1e-12 * (1 + scale);
    if (degenerate) {
        inf = std::min(inf, ratio(0.0));  // ratio constant on (-1,1)
    } else {
        for (double r : quartic_roots_in(c, -1 + 1e-12, 1 - 1e-12))
            inf = std::min(inf, ratio(r));
        inf = std::min(inf, ratio(0.0));
    }
    if (!(inf > tol * scale)) return std::nullopt;
    return inf;
}

DissipationClass classify(const CubicPoly& poly, double tol) {
    if (!(tol > 0 && tol <= 1e-3)) throw std::invalid_argument("classify: tol must be in (0, 1e-3]");
    const double scale = coeff_scale(poly);
    DissipationClass cls{};

    if (scale == 0 || (std::abs(poly.p0) <= tol * scale && std::abs(poly.p1) <= tol * scale &&
                       std::abs(poly.p2) <= tol * scale && std::abs(poly.p3) <= tol * scale)) {
        cls.tag = DissipationTag::A0;
        return cls;
    }

    const auto mn = min_on_interval(poly, -1.0, 1.0);
    if (mn.min < -tol * scale) {
        cls.tag = DissipationTag::NotDissipative;
        cls.min_point = mn.argmin;
        cls.min_value = mn.min;
        return cls;
    }

    auto fill_constants = [&] {
        for (int j = 0; j <= 3; ++j)
            if (auto r = ratio_inf(poly, j)) cls.constants[j] = *r / 8.0;
    };

    if (mn.min > tol * scale) {
        cls.tag = DissipationTag::B0;
        fill_constants();
        return cls;
    }

    // zero set touches the axis: decide C vs B_m from root structure
    const auto roots = roots_in_interval(poly, tol);
    const double edge = 64 * std::sqrt(tol);
    int endpoint_max_mult = 0;
    std::optional<PolyRoot> interior;
    for (const auto& r : roots) {
        if (std::abs(std::abs(r.y) - 1.0) <= edge) {
            endpoint_max_mult = std::max(endpoint_max_mult, r.multiplicity);
        } else {
            if (interior)
                throw AmbiguousClassification("two interior zeros with min ~ 0 at this tolerance");
            interior = r;
        }
    }
    if (interior) {
        if (interior->multiplicity == 2) {
            cls.tag = DissipationTag::C;
            cls.y0 = interior->y;
            cls.z0 = std::atanh(interior->y);
            fill_constants();
            return cls;
        }
        throw AmbiguousClassification(
            "interior zero of odd multiplicity with nonnegative minimum: tighten tolerance");
    }
    if (endpoint_max_mult == 0)
        throw AmbiguousClassification("minimum ~ 0 but no zero resolved: tighten tolerance");
    cls.tag = endpoint_max_mult == 1   ? DissipationTag::B1
              : endpoint_max_mult == 2 ? DissipationTag::B2
                                       : DissipationTag::B3;
    fill_constants();
    return cls;
}

double DecayLaw::algebraic_exponent(double p) {
    return 0.5 - (std::isinf(p) ? 0.0 : 1.0 / p);
}

double DecayLaw::log_exponent(NormTarget target, double p) const {
    const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
    switch (tag) {
        case DissipationTag::A0: return 0.0;
        case DissipationTag::B0: return 0.5;
        case DissipationTag::B1:
            if (target == NormTarget::u) return 0.5;
            return (p == 2.0) ? 0.5 : inv_p;
        case DissipationTag::B2:
            if (target == NormTarget::u) return (p == 2.0) ? 0.5 : inv_p;
            return inv_p / 2.0;
        case DissipationTag::B3:
            return target == NormTarget::u ? inv_p / 2.0 : inv_p / 3.0;
        case DissipationTag::C: return inv_p / 2.0;
        default: break;
    }
    throw std::domain_error("no decay law for NotDissipative");
}

double DecayLaw::loglog_exponent(NormTarget target, double p) const {
    if (p != 2.0) return 0.0;
    if (tag == DissipationTag::B1 && target == NormTarget::du) return 0.5;
    if (tag == DissipationTag::B2 && target == NormTarget::u) return 0.5;
    return 0.0;
}

DecayLaw predicted_decay(const DissipationClass& cls) {
    if (cls.tag == DissipationTag::NotDissipative)
        throw std::domain_error("predicted_decay: not dissipative, no theorem applies");
    return DecayLaw{cls.tag};
}

}  // namespace kgd
