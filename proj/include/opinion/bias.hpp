#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace opinion {

// The four reaction regions of the square [-1,1]^2. A bias function whose
// whole graph lies inside one of these regions elicits the corresponding
// reaction for every possible disagreement.
enum class Region { Malleable, Receptive, Backfire, Insular };

constexpr std::array<Region, 4> kAllRegions = {
    Region::Malleable, Region::Receptive, Region::Backfire, Region::Insular};

std::string region_name(Region r);

// Membership of a single point (disagreement x, reaction y) in each region.
// The regions overlap (the origin lies in all four), so this is a set of
// independent predicates, not a partition.
struct RegionSet {
    bool malleable = false;
    bool receptive = false;
    bool backfire = false;
    bool insular = false;

    bool contains(Region r) const;
    bool operator==(const RegionSet&) const = default;
};

// Throws std::domain_error when (x,y) is outside [-1,1]^2.
RegionSet region_membership(double x, double y);

enum class BiasKind {
    Degroot,
    Conf,
    Backf,
    Fan,
    Ins,
    ExpSlow,
    StepDiscontinuous,
    ArctanMalleable,
    PiecewiseLinear,
};

std::string bias_kind_name(BiasKind kind);
std::optional<BiasKind> bias_kind_from_name(const std::string& name);

// A named, parameterized endo-function on [-1,1] mapping an opinion
// disagreement to the signed contribution an agent accepts from one
// influencer.
class BiasSpec {
public:
    static BiasSpec degroot();
    static BiasSpec conf(double delta = 1e-4);
    static BiasSpec backf();
    static BiasSpec fan();
    static BiasSpec ins();
    static BiasSpec exp_slow();
    static BiasSpec step_discontinuous();
    static BiasSpec arctan_malleable();
    // Breakpoints must be strictly increasing in x, span [-1,1] exactly,
    // and keep values inside [-1,1]. Throws ValidationError otherwise.
    static BiasSpec piecewise_linear(std::vector<std::pair<double, double>> points);

    BiasKind kind() const { return kind_; }
    double delta() const { return delta_; }
    const std::vector<std::pair<double, double>>& points() const { return points_; }

    // Evaluate at a disagreement x in [-1,1]. Throws std::domain_error
    // outside that interval. Every built-in maps into [-1,1] analytically.
    double operator()(double x) const;

    // Analytic certificates for the built-in catalogue. Sampling cannot
    // prove region containment over uncountably many points; these can.
    std::optional<Region> certified_region() const;
    bool certified_receptive() const;
    bool analytically_continuous() const;

    std::string name() const { return bias_kind_name(kind_); }

    bool operator==(const BiasSpec&) const = default;

private:
    BiasSpec(BiasKind kind, double delta, std::vector<std::pair<double, double>> points)
        : kind_(kind), delta_(delta), points_(std::move(points)) {}

    BiasKind kind_;
    double delta_ = 1e-4;
    std::vector<std::pair<double, double>> points_;
};

double eval_bias(const BiasSpec& b, double x);

enum class Coverage { All, Some, None };

std::string coverage_name(Coverage c);

// Sampled (and, for built-ins, certified) placement of a bias function
// against the four regions.
struct RegionReport {
    int samples = 0;
    std::array<Coverage, 4> coverage{};
    std::array<std::optional<std::pair<double, double>>, 4> witness{};
    bool certified = false;

    Coverage coverage_of(Region r) const { return coverage[static_cast<int>(r)]; }
};

// grid >= 3 evenly spaced samples of [-1,1]. Analytic certificates override
// the sampled verdict for the certified region.
RegionReport classify_bias(const BiasSpec& b, int grid = 2001, bool include_endpoints = true);

// Advisory scan for jumps: flags adjacent samples whose slope magnitude
// exceeds jump_threshold, alongside the analytic continuity flag.
struct ContinuityReport {
    bool analytically_continuous = false;
    std::vector<std::pair<double, double>> suspect_intervals;
};

ContinuityReport continuity_probe(const BiasSpec& b, int grid = 4001, double jump_threshold = 50.0);

} // namespace opinion
