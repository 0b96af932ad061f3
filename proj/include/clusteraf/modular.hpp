#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "clusteraf/quadratic.hpp"
#include "clusteraf/surface.hpp"

namespace clusteraf {

/// Flow time t, optionally with an exact positive scale standing for e^t.
struct FlowParam {
    double t = 0.0;
    std::optional<QuadNum> scale;

    /// t = log(s); throws ValidationError unless s > 0.
    static FlowParam exact(const QuadNum& s);
    /// Adds times and multiplies exact scales (dropped when either side has none).
    FlowParam then(const FlowParam& o) const;
    double factor() const;
};

/// Multiplies every coordinate by the exact scale. Throws ValidationError when
/// the scale is missing or irrational.
std::vector<mpq_class> sigma_scale(const std::vector<mpq_class>& x, const FlowParam& f);
/// Scales every registry entry, so recorded Ptolemy relations keep holding.
LambdaLengths sigma_scale(const LambdaLengths& l, const FlowParam& f);
/// Multiplies by the exact scale when present, otherwise by e^t.
std::vector<double> sigma_scale(const std::vector<double>& x, const FlowParam& f);

using SL2Z = std::array<std::array<std::int64_t, 2>, 2>;

/// "a,b;c,d"; throws ParseError on malformed text.
SL2Z parse_sl2(const std::string& text);
std::string to_string(const SL2Z& m);
/// Throws ValidationError on 64-bit overflow.
SL2Z multiply(const SL2Z& a, const SL2Z& b);
SL2Z power(const SL2Z& m, unsigned k);
/// Inverse of a determinant-one matrix.
SL2Z inverse(const SL2Z& m);

enum class MappingClass { Elliptic, Parabolic, Hyperbolic };
std::string to_string(MappingClass c);

struct MappingClassSample {
    SL2Z matrix{};
    std::int64_t trace = 0;
    MappingClass classification = MappingClass::Elliptic;
    std::optional<QuadNum> dilatation;  ///< (|tr| + sqrt(tr^2 - 4)) / 2
    std::optional<double> log_dilatation;
};

/// Throws ValidationError unless det(m) == 1.
MappingClassSample dilatation(const SL2Z& m);

/// Sorted log-dilatations of the hyperbolic inputs, duplicates removed.
std::vector<double> connes_sample(const std::vector<SL2Z>& ms);

/// The subgroup scale * (Z + Z theta) of the reals.
struct K0Descriptor {
    QuadNum theta;
    double t = 0.0;
    std::optional<QuadNum> scale;

    /// Same theta and same flow parameter (exact scales compared exactly).
    friend bool operator==(const K0Descriptor& a, const K0Descriptor& b);
};

K0Descriptor k0_scale(const QuadNum& theta, const FlowParam& f);

/// Whether the two descriptors generate the same subgroup of R. Throws
/// ValidationError when a scale is not exact or the fields differ.
bool subgroup_equal(const K0Descriptor& a, const K0Descriptor& b);

}  // namespace clusteraf
