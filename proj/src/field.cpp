#include "timo/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace timo {

namespace {

constexpr double kDomainSlack = 1e-9;

double clamp_to_domain(double xi, double length) {
    const double slack = kDomainSlack * std::max(length, 1.0);
    if (xi < -slack || xi > length + slack) {
        throw std::domain_error("field evaluation outside [0, L]: xi=" + std::to_string(xi));
    }
    return std::clamp(xi, 0.0, length);
}

}  // namespace

ParameterField::ParameterField(Repr repr, double length)
    : repr_(std::move(repr)), length_(length) {
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw std::invalid_argument("field length must be positive and finite");
    }
}

ParameterField ParameterField::constant(double value, double length) {
    return ParameterField(Constant{value}, length);
}

ParameterField ParameterField::sinusoid(double base, double amplitude, double frequency,
                                        double phase, double length) {
    return ParameterField(Sinusoid{base, amplitude, frequency, phase}, length);
}

ParameterField ParameterField::tabulated(std::vector<double> samples, double length) {
    if (samples.size() < 2) {
        throw std::invalid_argument("tabulated field needs at least 2 samples");
    }
    return ParameterField(Tabulated{std::move(samples)}, length);
}

double ParameterField::operator()(double xi) const {
    xi = clamp_to_domain(xi, length_);
    if (const auto* c = std::get_if<Constant>(&repr_)) {
        return c->value;
    }
    if (const auto* s = std::get_if<Sinusoid>(&repr_)) {
        return s->base + s->amplitude * std::sin(s->frequency * xi + s->phase);
    }
    const auto& t = std::get<Tabulated>(repr_);
    const std::size_t n = t.samples.size();
    const double h = length_ / static_cast<double>(n - 1);
    const double pos = xi / h;
    const auto lo = static_cast<std::size_t>(std::min(pos, static_cast<double>(n - 2)));
    const double w = pos - static_cast<double>(lo);
    return (1.0 - w) * t.samples[lo] + w * t.samples[lo + 1];
}

ParameterField ParameterField::derivative() const {
    if (std::holds_alternative<Constant>(repr_)) {
        return constant(0.0, length_);
    }
    if (const auto* s = std::get_if<Sinusoid>(&repr_)) {
        // d/dxi [b + a sin(w xi + p)] = a w cos(w xi + p) = a w sin(w xi + p + pi/2)
        return sinusoid(0.0, s->amplitude * s->frequency, s->frequency,
                        s->phase + std::numbers::pi / 2.0, length_);
    }
    const auto& t = std::get<Tabulated>(repr_);
    const std::size_t n = t.samples.size();
    const double h = length_ / static_cast<double>(n - 1);
    std::vector<double> d(n);
    if (n == 2) {
        d[0] = d[1] = (t.samples[1] - t.samples[0]) / h;
    } else {
        d[0] = (-3.0 * t.samples[0] + 4.0 * t.samples[1] - t.samples[2]) / (2.0 * h);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            d[i] = (t.samples[i + 1] - t.samples[i - 1]) / (2.0 * h);
        }
        d[n - 1] =
            (3.0 * t.samples[n - 1] - 4.0 * t.samples[n - 2] + t.samples[n - 3]) / (2.0 * h);
    }
    return tabulated(std::move(d), length_);
}

double ParameterField::ess_sup() const {
    if (const auto* c = std::get_if<Constant>(&repr_)) {
        return c->value;
    }
    if (const auto* s = std::get_if<Sinusoid>(&repr_)) {
        if (s->frequency == 0.0) {
            return s->base + s->amplitude * std::sin(s->phase);
        }
        if (std::abs(s->frequency) * length_ >= 2.0 * std::numbers::pi) {
            return s->base + std::abs(s->amplitude);
        }
        // Partial period: extrema sit at the endpoints or at stationary points
        // frequency*xi + phase = pi/2 + k*pi.
        double hi = std::max((*this)(0.0), (*this)(length_));
        const double w = s->frequency;
        const double lo_arg = std::min(s->phase, w * length_ + s->phase);
        const double hi_arg = std::max(s->phase, w * length_ + s->phase);
        const double pi = std::numbers::pi;
        const auto k0 = static_cast<long>(std::floor((lo_arg - pi / 2.0) / pi));
        const auto k1 = static_cast<long>(std::ceil((hi_arg - pi / 2.0) / pi));
        for (long k = k0; k <= k1; ++k) {
            const double xi = (pi / 2.0 + static_cast<double>(k) * pi - s->phase) / w;
            if (xi >= 0.0 && xi <= length_) {
                hi = std::max(hi, (*this)(xi));
            }
        }
        return hi;
    }
    const auto& t = std::get<Tabulated>(repr_);
    return *std::max_element(t.samples.begin(), t.samples.end());
}

double ParameterField::ess_inf() const {
    if (const auto* c = std::get_if<Constant>(&repr_)) {
        return c->value;
    }
    if (const auto* s = std::get_if<Sinusoid>(&repr_)) {
        if (s->frequency == 0.0) {
            return s->base + s->amplitude * std::sin(s->phase);
        }
        if (std::abs(s->frequency) * length_ >= 2.0 * std::numbers::pi) {
            return s->base - std::abs(s->amplitude);
        }
        double lo = std::min((*this)(0.0), (*this)(length_));
        const double w = s->frequency;
        const double lo_arg = std::min(s->phase, w * length_ + s->phase);
        const double hi_arg = std::max(s->phase, w * length_ + s->phase);
        const double pi = std::numbers::pi;
        const auto k0 = static_cast<long>(std::floor((lo_arg - pi / 2.0) / pi));
        const auto k1 = static_cast<long>(std::ceil((hi_arg - pi / 2.0) / pi));
        for (long k = k0; k <= k1; ++k) {
            const double xi = (pi / 2.0 + static_cast<double>(k) * pi - s->phase) / w;
            if (xi >= 0.0 && xi <= length_) {
                lo = std::min(lo, (*this)(xi));
            }
        }
        return lo;
    }
    const auto& t = std::get<Tabulated>(repr_);
    return *std::min_element(t.samples.begin(), t.samples.end());
}

bool ParameterField::is_constant() const {
    return std::holds_alternative<Constant>(repr_);
}

namespace {

void check_field(const ParameterField& f, const std::string& name, double beam_length,
                 ValidationReport& report) {
    FieldCheck check{name, f.ess_inf(), f.ess_sup(), f.length(), false};
    check.positive = check.ess_inf > 0.0;
    if (!check.positive) {
        report.issues.push_back(
            {name, "not positive definite: ess_inf = " + std::to_string(check.ess_inf)});
    }
    if (f.length() != beam_length) {
        report.issues.push_back({name, "length " + std::to_string(f.length()) +
                                           " differs from beam length " +
                                           std::to_string(beam_length)});
    }
    if (const auto* s = std::get_if<ParameterField::Sinusoid>(&f.repr())) {
        if (!(std::abs(s->amplitude) < s->base)) {
            report.issues.push_back({name, "sinusoid amplitude must be smaller than its base"});
        }
    }
    report.min_margin = std::min(report.min_margin, check.ess_inf);
    report.fields.push_back(std::move(check));
}

}  // namespace

ValidationReport validate(const BeamParameters& params) {
    ValidationReport report;
    report.min_margin = std::numeric_limits<double>::infinity();
    check_field(params.rho, "rho", params.length, report);
    check_field(params.i_rho, "i_rho", params.length, report);
    check_field(params.k_shear, "k_shear", params.length, report);
    check_field(params.ei, "ei", params.length, report);
    check_field(params.gamma, "gamma", params.length, report);
    check_field(params.delta, "delta", params.length, report);
    if (!(params.length > 0.0)) {
        report.issues.push_back({"length", "beam length must be positive"});
    }
    report.valid = report.issues.empty();
    return report;
}

}  // namespace timo
