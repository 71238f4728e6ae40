#include "opinion/bias.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "opinion/errors.hpp"

namespace opinion {

std::string region_name(Region r) {
    switch (r) {
    case Region::Malleable: return "M";
    case Region::Receptive: return "R";
    case Region::Backfire: return "B";
    case Region::Insular: return "I";
    }
    return "?";
}

bool RegionSet::contains(Region r) const {
    switch (r) {
    case Region::Malleable: return malleable;
    case Region::Receptive: return receptive;
    case Region::Backfire: return backfire;
    case Region::Insular: return insular;
    }
    return false;
}

RegionSet region_membership(double x, double y) {
    if (!(x >= -1.0 && x <= 1.0 && y >= -1.0 && y <= 1.0)) {
        throw std::domain_error("region_membership: point outside [-1,1]^2");
    }
    RegionSet s;
    s.malleable = (x < 0 && y <= x) || (x > 0 && y >= x) || x == 0;
    s.receptive = (x < 0 && x < y && y < 0) || (x > 0 && 0 < y && y < x) || (x == 0 && y == 0);
    s.backfire = (x < 0 && y > 0) || (x > 0 && y < 0) || (x == 0 && y == 0);
    s.insular = y == 0;
    return s;
}

std::string bias_kind_name(BiasKind kind) {
    switch (kind) {
    case BiasKind::Degroot: return "degroot";
    case BiasKind::Conf: return "conf";
    case BiasKind::Backf: return "backf";
    case BiasKind::Fan: return "fan";
    case BiasKind::Ins: return "ins";
    case BiasKind::ExpSlow: return "exp_slow";
    case BiasKind::StepDiscontinuous: return "step_discontinuous";
    case BiasKind::ArctanMalleable: return "arctan_malleable";
    case BiasKind::PiecewiseLinear: return "piecewise_linear";
    }
    return "?";
}

std::optional<BiasKind> bias_kind_from_name(const std::string& name) {
    for (BiasKind k : {BiasKind::Degroot, BiasKind::Conf, BiasKind::Backf, BiasKind::Fan,
                       BiasKind::Ins, BiasKind::ExpSlow, BiasKind::StepDiscontinuous,
                       BiasKind::ArctanMalleable, BiasKind::PiecewiseLinear}) {
        if (bias_kind_name(k) == name) return k;
    }
    return std::nullopt;
}

BiasSpec BiasSpec::degroot() { return {BiasKind::Degroot, 0.0, {}}; }

BiasSpec BiasSpec::conf(double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw ValidationError("conf: delta must be a positive finite real");
    }
    return {BiasKind::Conf, delta, {}};
}

BiasSpec BiasSpec::backf() { return {BiasKind::Backf, 0.0, {}}; }
BiasSpec BiasSpec::fan() { return {BiasKind::Fan, 0.0, {}}; }
BiasSpec BiasSpec::ins() { return {BiasKind::Ins, 0.0, {}}; }
BiasSpec BiasSpec::exp_slow() { return {BiasKind::ExpSlow, 0.0, {}}; }
BiasSpec BiasSpec::step_discontinuous() { return {BiasKind::StepDiscontinuous, 0.0, {}}; }
BiasSpec BiasSpec::arctan_malleable() { return {BiasKind::ArctanMalleable, 0.0, {}}; }

BiasSpec BiasSpec::piecewise_linear(std::vector<std::pair<double, double>> points) {
    if (points.size() < 2) {
        throw ValidationError("piecewise_linear: need at least two breakpoints");
    }
    if (points.front().first != -1.0 || points.back().first != 1.0) {
        throw ValidationError("piecewise_linear: breakpoints must span [-1,1] exactly");
    }
    for (size_t k = 0; k < points.size(); ++k) {
        const auto& [x, y] = points[k];
        if (!std::isfinite(x) || !std::isfinite(y)) {
            throw ValidationError("piecewise_linear: non-finite breakpoint");
        }
        if (y < -1.0 || y > 1.0) {
            throw ValidationError("piecewise_linear: value outside [-1,1] at breakpoint " +
                                  std::to_string(k));
        }
        if (k > 0 && !(points[k - 1].first < x)) {
            throw ValidationError("piecewise_linear: breakpoints must be strictly increasing");
        }
    }
    return {BiasKind::PiecewiseLinear, 0.0, std::move(points)};
}

namespace {

double eval_piecewise(const std::vector<std::pair<double, double>>& pts, double x) {
    auto it = std::lower_bound(pts.begin(), pts.end(), x,
                               [](const auto& p, double v) { return p.first < v; });
    if (it != pts.end() && it->first == x) return it->second;
    const auto& [x1, y1] = *it;
    const auto& [x0, y0] = *(it - 1);
    return y0 + (x - x0) * (y1 - y0) / (x1 - x0);
}

} // namespace

double BiasSpec::operator()(double x) const {
    if (!(x >= -1.0 && x <= 1.0)) {
        throw std::domain_error("bias: disagreement outside [-1,1]");
    }
    double y = 0.0;
    switch (kind_) {
    case BiasKind::Degroot:
        y = x;
        break;
    case BiasKind::Conf:
        y = x * (1.0 + delta_ - std::abs(x)) / (1.0 + delta_);
        break;
    case BiasKind::Backf:
        y = -x * x * x;
        break;
    case BiasKind::Fan:
        y = x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0);
        break;
    case BiasKind::Ins:
        y = 0.0;
        break;
    case BiasKind::ExpSlow:
        y = x == 0 ? 0.0 : std::copysign(std::exp(-1.0 / std::abs(x)), x);
        break;
    case BiasKind::StepDiscontinuous:
        if (x >= -0.5 && x <= 0.5) {
            y = x / 2.0;
        } else if (x > 0.5) {
            y = (x - 0.5) / 8.0;
        } else {
            y = (x + 0.5) / 8.0;
        }
        break;
    case BiasKind::ArctanMalleable:
        y = std::atan(x) / std::atan(1.0);
        break;
    case BiasKind::PiecewiseLinear:
        y = eval_piecewise(points_, x);
        break;
    }
    assert(y >= -1.0 && y <= 1.0);
    return y;
}

std::optional<Region> BiasSpec::certified_region() const {
    switch (kind_) {
    case BiasKind::Degroot:
    case BiasKind::Fan:
    case BiasKind::ArctanMalleable:
        return Region::Malleable;
    case BiasKind::Conf:
    case BiasKind::ExpSlow:
    case BiasKind::StepDiscontinuous:
        return Region::Receptive;
    case BiasKind::Backf:
        return Region::Backfire;
    case BiasKind::Ins:
        return Region::Insular;
    case BiasKind::PiecewiseLinear:
        break;
    }
    // A piecewise-linear function is in R iff its graph passes through the
    // origin and every breakpoint off the y-axis satisfies the strict R
    // inequalities: each segment is then a chord of a convex half-region
    // (or a ray through the origin), so the whole graph stays inside.
    if (eval_piecewise(points_, 0.0) != 0.0) return std::nullopt;
    for (const auto& [x, y] : points_) {
        if (x == 0.0) continue;
        bool ok = x < 0.0 ? (x < y && y < 0.0) : (0.0 < y && y < x);
        if (!ok) return std::nullopt;
    }
    return Region::Receptive;
}

bool BiasSpec::certified_receptive() const {
    return certified_region() == Region::Receptive;
}

bool BiasSpec::analytically_continuous() const {
    return kind_ != BiasKind::Fan && kind_ != BiasKind::StepDiscontinuous;
}

double eval_bias(const BiasSpec& b, double x) { return b(x); }

std::string coverage_name(Coverage c) {
    switch (c) {
    case Coverage::All: return "all";
    case Coverage::Some: return "some";
    case Coverage::None: return "none";
    }
    return "?";
}

RegionReport classify_bias(const BiasSpec& b, int grid, bool include_endpoints) {
    if (grid < 3) throw ValidationError("classify_bias: grid must be >= 3");
    RegionReport report;
    report.samples = grid;
    std::array<int, 4> hits{};
    for (int k = 0; k < grid; ++k) {
        double x = include_endpoints ? -1.0 + 2.0 * k / (grid - 1)
                                     : -1.0 + 2.0 * (k + 1) / (grid + 1);
        double y = b(x);
        RegionSet s = region_membership(x, y);
        for (Region r : kAllRegions) {
            int idx = static_cast<int>(r);
            if (s.contains(r)) {
                ++hits[idx];
                if (!report.witness[idx]) report.witness[idx] = {x, y};
            }
        }
    }
    for (Region r : kAllRegions) {
        int idx = static_cast<int>(r);
        report.coverage[idx] = hits[idx] == grid  ? Coverage::All
                               : hits[idx] > 0    ? Coverage::Some
                                                  : Coverage::None;
    }
    if (auto certified = b.certified_region()) {
        report.coverage[static_cast<int>(*certified)] = Coverage::All;
        report.certified = true;
    }
    return report;
}

ContinuityReport continuity_probe(const BiasSpec& b, int grid, double jump_threshold) {
    if (grid < 3) throw ValidationError("continuity_probe: grid must be >= 3");
    if (!(jump_threshold > 0.0)) throw ValidationError("continuity_probe: threshold must be > 0");
    ContinuityReport report;
    report.analytically_continuous = b.analytically_continuous();
    double prev_x = -1.0;
    double prev_y = b(prev_x);
    for (int k = 1; k < grid; ++k) {
        double x = -1.0 + 2.0 * k / (grid - 1);
        double y = b(x);
        if (std::abs(y - prev_y) > jump_threshold * std::abs(x - prev_x)) {
            report.suspect_intervals.emplace_back(prev_x, x);
        }
        prev_x = x;
        prev_y = y;
    }
    return report;
}

} // namespace opinion
