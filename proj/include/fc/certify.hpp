#pragma once

#include <string>
#include <vector>

#include "fc/functional.hpp"
#include "fc/manifest.hpp"
#include "fc/report.hpp"

namespace fc {

struct GammaBoundsInput {
    std::string gamma_lo = ".24841951";
    std::string alpha_lo = "-0.445183267";
    std::string gamma_hi = ".24841959";
    std::string alpha_hi = "-0.44518333";
};

ClaimReport certify_gamma_bounds(const GammaBoundsInput& in = {}, Mode mode = Mode::certified);

// beta in [0, .001]: sup F2 = 2 sup F1
ClaimReport certify_initial_interval(const std::string& gamma, Mode mode = Mode::certified);

struct SegmentOutcome {
    SegmentPlan seg;
    double bound = 0;       // upper bound on sup F2 over the segment's case region
    double target = 0;      // certified lower end of the target literal
    Verdict verdict = Verdict::not_reached;
    int corrections = 0;
    int pieces = 1;         // leaves after refinement
    std::optional<Witness> witness;
    std::string error;
};

// Local-box witness requirements.
inline constexpr double witness_G2_max = 1e-5;
inline constexpr double witness_grad_max = 1e-6;

// Evaluates one segment, bisecting up to refine_depth times when it does not pass.
SegmentOutcome evaluate_segment(const SegmentPlan& seg, const Interval& gamma, int refine_depth,
                                Mode mode = Mode::certified);

// Serial reference and OpenMP kernel; identical outputs in plan order.
std::vector<SegmentOutcome> sweep_serial(const std::vector<SegmentPlan>& plan, const Interval& gamma,
                                         int refine_depth = 0, Mode mode = Mode::certified);
std::vector<SegmentOutcome> sweep_parallel(const std::vector<SegmentPlan>& plan, const Interval& gamma,
                                           int threads, int refine_depth = 0,
                                           Mode mode = Mode::certified);

struct SweepOptions {
    int parallelism = 1;
    int refine_depth = 0;  // --refine bisects up to 4 times
    Mode mode = Mode::certified;
};

ClaimReport certify_sweep(const std::string& claim_id, const std::vector<SegmentPlan>& plan,
                          const std::string& gamma, const SweepOptions& opt = {});

// Entry enclosures of the Hessian of F2 over sub-boxes.
struct HessianBox {
    Interval beta, alpha1, alpha2;
    F2Hessian entries;
};

struct HessianOptions {
    Interval beta = Interval(0.495, 0.505);
    Interval alpha = Interval(-0.449, -0.441);
    int min_depth = 6;  // uniform refinement first, for a sharper delta
    int max_depth = 12;
};

// Smallest eigenvalue bound: largest delta with -H - delta I positive definite on every box.
double sylvester_margin(const std::vector<HessianBox>& boxes);
bool sylvester_holds(const F2Hessian& h, double delta);

ClaimReport certify_hessian(const std::string& gamma_lo, const std::string& gamma_hi,
                            const HessianOptions& opt = {}, std::vector<HessianBox>* boxes_out = nullptr);

// f, df/dbeta and beta f_bb + 2 f_b over beta in [.495,.505], alpha in [-.45,-.44]
ClaimReport certify_box_enclosures(const std::string& gamma, int splits = 4);

struct AssumptionVerdict {
    Verdict verdict;
    ClaimReport report;
};

inline const std::vector<std::string> assumption_inputs = {"claim-b1", "claim-b2", "claim-b3", "claim-b4"};

AssumptionVerdict assemble_assumption_report(const std::vector<ClaimReport>& reports);

// Canonical default gamma literals.
inline constexpr const char* sweep_gamma = ".2484195";
inline constexpr const char* hessian_gamma_lo = ".24841941";
inline constexpr const char* hessian_gamma_hi = ".24841969";

}  // namespace fc
