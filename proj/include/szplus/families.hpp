// Closed-form one-parameter curve families, each engineered to cross exactly
// one kind of homotopy event at a known parameter value:
//   collision loop (I0):       projection of a squared off-center circle
//   zero-velocity cusp (IInf): limacon sprouting an exterior loop
//   inverse tangency (II+):    dented ellipse pushing one arc through another
//   triple point (III):        three-lobed hypotrochoid through its center
//   direct tangency:           two-lap spiral dented onto its parallel lap
#pragma once

#include <cmath>
#include <complex>

#include "szplus/curve.hpp"

namespace szplus {

namespace families {

constexpr std::size_t kSamples = 384;

// Squared circle of radius 1 centered (s, 0): passes the origin at s = 1.
// For s < 1 the projection winds twice around the origin; a collision loop is
// absorbed as s increases through 1.
inline PolyCurve collision_family(double s, bool vertical = false) {
    PolyCurve k;
    k.allow_origin = true;
    for (std::size_t i = 0; i < kSamples; ++i) {
        const double t = 2.0 * M_PI * (static_cast<double>(i) + 0.31) /
                         static_cast<double>(kSamples);
        std::complex<double> v = vertical
                                     ? std::complex<double>(std::cos(t),
                                                            s + std::sin(t))
                                     : std::complex<double>(s + std::cos(t),
                                                            std::sin(t));
        const std::complex<double> q = v * v;
        k.vertices.push_back({q.real(), q.imag()});
    }
    return k;
}

// Limacon e^{it} + s e^{2it} carried through the Mobius map 1/(z - p) with p
// inside the main lobe: the loop born at s = 1/2 through a cusp then attaches
// on the unbounded-face side, i.e. it is an exterior loop and the rotation
// number changes by one while the double-point count changes by one.
inline PolyCurve zero_velocity_family(double s, bool mirrored = false) {
    PolyCurve k;
    const std::complex<double> p{0.85, 0.12};
    for (std::size_t i = 0; i < kSamples; ++i) {
        double t = 2.0 * M_PI * (static_cast<double>(i) + 0.17) /
                   static_cast<double>(kSamples);
        if (mirrored) t = -t + 0.5;
        const std::complex<double> e1{std::cos(t), std::sin(t)};
        const std::complex<double> e2{std::cos(2.0 * t), std::sin(2.0 * t)};
        const std::complex<double> z = 2.0 / (e1 + s * e2 - p);
        k.vertices.push_back({z.real(), z.imag()});
    }
    return k;
}

// Ellipse with a localized dent: the top arc is pushed through the bottom arc
// (anti-parallel strands), creating a crossing pair at s ~ 1.2.
inline PolyCurve inverse_tangency_family(double s, bool from_below = false) {
    PolyCurve k;
    for (std::size_t i = 0; i < kSamples; ++i) {
        const double t = 2.0 * M_PI * (static_cast<double>(i) + 0.23) /
                         static_cast<double>(kSamples);
        const double x = std::cos(t);
        double y = 0.6 * std::sin(t);
        if (!from_below) {
            const double b = std::exp(-std::pow((t - M_PI / 2.0) / 0.35, 2));
            y -= s * b;
        } else {
            const double b = std::exp(-std::pow((t - 3.0 * M_PI / 2.0) / 0.35, 2));
            y += s * b;
        }
        k.vertices.push_back({x + 4.0, y + 0.2});
    }
    return k;
}

// Three-lobed hypotrochoid e^{it} + s e^{-2it}: its three crossings merge into
// one triple point at s = 1 and the face windings reorganize.
inline PolyCurve triple_point_family(double s, bool mirrored = false) {
    PolyCurve k;
    for (std::size_t i = 0; i < kSamples; ++i) {
        double t = 2.0 * M_PI * (static_cast<double>(i) + 0.29) /
                   static_cast<double>(kSamples);
        if (mirrored) t = -t + 0.4;
        const std::complex<double> e1{std::cos(t), std::sin(t)};
        const std::complex<double> e2{std::cos(2.0 * t), -std::sin(2.0 * t)};
        const std::complex<double> z = e1 + s * e2;
        k.vertices.push_back({z.real() + 4.0, z.imag() + 0.15});
    }
    return k;
}

// Two concentric laps (both counter-clockwise) with the outer lap dented
// inward; the dent reaches the inner lap near s = 3 where the strands run
// parallel, so the new crossing pair is a direct tangency.
inline PolyCurve direct_tangency_family(double s) {
    PolyCurve k;
    k.allow_origin = false;
    for (std::size_t i = 0; i < 2 * kSamples; ++i) {
        const double t = 4.0 * M_PI * (static_cast<double>(i) + 0.41) /
                         static_cast<double>(2 * kSamples);
        double rho = 3.5 + 1.5 * std::cos(0.5 * t);
        rho -= s * std::exp(-std::pow((t - 0.9) / 0.22, 2));
        k.vertices.push_back({rho * std::cos(t), rho * std::sin(t)});
    }
    return k;
}

} // namespace families

} // namespace szplus
