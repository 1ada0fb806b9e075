#pragma once

#include <string>
#include <variant>
#include <vector>

namespace timo {

/// Scalar coefficient profile over the beam domain [0, length].
///
/// Three representations are supported: constant, sinusoid
/// base + amplitude*sin(frequency*xi + phase), and a table of samples on a
/// uniform grid (evaluated by piecewise-linear interpolation). Construction
/// is permissive; positivity of physical parameters is checked separately by
/// validate() so that invalid inputs can be reported instead of rejected.
class ParameterField {
public:
    struct Constant {
        double value;
    };
    struct Sinusoid {
        double base;
        double amplitude;
        double frequency;
        double phase;
    };
    struct Tabulated {
        std::vector<double> samples;  // uniform grid including both endpoints
    };
    using Repr = std::variant<Constant, Sinusoid, Tabulated>;

    static ParameterField constant(double value, double length);
    static ParameterField sinusoid(double base, double amplitude, double frequency,
                                   double phase, double length);
    static ParameterField tabulated(std::vector<double> samples, double length);

    double length() const { return length_; }

    /// Evaluate at xi; throws std::domain_error outside [0, length].
    double operator()(double xi) const;

    /// Spatial derivative as a new field. Sinusoids differentiate exactly,
    /// tables use second-order central differences (one-sided at the ends),
    /// constants become zero. The result may change sign.
    ParameterField derivative() const;

    /// Essential supremum / infimum over [0, length]. Exact for constants and
    /// sinusoids (critical-point enumeration, base +- |amplitude| once a full
    /// period fits); tables attain their extrema at the samples.
    double ess_sup() const;
    double ess_inf() const;

    bool is_constant() const;
    const Repr& repr() const { return repr_; }

private:
    ParameterField(Repr repr, double length);

    Repr repr_;
    double length_;
};

/// The seven physical quantities of a viscously damped shear beam:
/// mass density, rotary inertia, shear stiffness, bending stiffness, the two
/// viscous damping profiles, and the domain length they all share.
struct BeamParameters {
    ParameterField rho;
    ParameterField i_rho;
    ParameterField k_shear;
    ParameterField ei;
    ParameterField gamma;
    ParameterField delta;
    double length;
};

struct FieldCheck {
    std::string name;
    double ess_inf;
    double ess_sup;
    double length;
    bool positive;
};

struct ValidationIssue {
    std::string field;
    std::string message;
};

struct ValidationReport {
    bool valid = false;
    double min_margin = 0.0;  // smallest positivity margin (ess_inf) over all fields
    std::vector<FieldCheck> fields;
    std::vector<ValidationIssue> issues;
};

/// Check positivity margins and length consistency of all seven entries.
/// Never throws; problems are returned as structured issues.
ValidationReport validate(const BeamParameters& params);

/// Min/max of f over a dense uniform scan of [0, length] with n nodes
/// (endpoints included). Used for essential extrema of composed profiles;
/// n >= 4096 is the project-wide default resolution.
struct ScanExtrema {
    double min;
    double max;
};
template <typename F>
ScanExtrema scan_extrema(const F& f, double length, std::size_t n) {
    ScanExtrema ext{f(0.0), f(0.0)};
    const double h = length / static_cast<double>(n - 1);
    for (std::size_t k = 1; k < n; ++k) {
        const double v = f(static_cast<double>(k) * h);
        if (v < ext.min) ext.min = v;
        if (v > ext.max) ext.max = v;
    }
    return ext;
}

}  // namespace timo
