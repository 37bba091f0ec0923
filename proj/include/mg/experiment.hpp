#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mg/divisor.hpp"
#include "mg/graph.hpp"
#include "mg/measure.hpp"
#include "mg/weierstrass.hpp"

namespace mg {

// Minimal slopes of the tropical surrogate: for every model vertex x the
// witness f_{n,x} of the x-reduced divisor of nD provides s^nu_{n,0} =
// slope of f_{n,x} at x along nu, recorded per outgoing arc.
SlopeData surrogate_slopes(const MetricGraph& g, const Divisor& d, long n);

// mu_n = W_n / (g (r_n+1)^2). Full mode uses the exact reduction formula
// and requires the degree identity exactly; surrogate mode uses the
// midpoint formula, requires the degree to be within 2g(r_n+1) of the
// target, and normalizes by the actual degree so the mass is exactly 1.
// Outputs the relative degree error and deg(W_n) when requested.
Measure mu_n(const MetricGraph& g, const SlopeData& data, long genus, bool full_mode,
             Rat* mass_err = nullptr, Rat* deg_wn = nullptr);

struct Pr5Row {
    long n = 0;
    std::string edge;
    Rat lhs;        // 1 + (s^{nu_x}_{n,0} + s^{nu_y}_{n,0}) / (nd)
    bool bridge = false;
    Rat target;     // l_e / (l_e + rho_e); 0 for bridges
    long s_x = 0;   // minimal slope at v along the edge toward u
    long s_y = 0;   // minimal slope at u along the edge toward v
    bool claim_ok = false;    // slope window of f_n at the endpoints
    bool miracle_ok = false;  // slope window of f_n inside the edge
    bool ineq1_ok = false;
    bool ineq2_ok = false;
    bool ineq3_ok = false;
    bool ineq4_ok = false;
    bool consistency_ok = false;  // nd - g <= reduced coefficients <= nd
};

// The per-edge resistance-law data and the proof-ledger predicates for
// every n in [n_min, n_max].
std::vector<Pr5Row> pr5_table(const MetricGraph& g, const Divisor& d, long n_min, long n_max);

// Exact weak-convergence statistics for two mass-one measures:
// (oscillation of the potential phi solving Delta phi = mu - nu,
//  sum over segments of length <= h of |mu - nu| plus vertex-atom
//  mismatches). Symmetric in mu and nu.
std::pair<Rat, Rat> compare_measures(const MetricGraph& g, const Measure& mu,
                                     const Measure& nu, const Rat& h);

struct ExperimentConfig {
    std::string graph_file;
    std::string divisor_file;
    long n_min = 1;
    long n_max = 50;
    std::string mode = "tropical-surrogate";  // or "explicit"
    std::map<long, std::string> slope_files;  // explicit mode, per n
    Rat h = Rat(1, 4);                        // comparison bin width
    long grid_factor = 8;                     // surrogate grid is h/grid_factor fine
    std::string out_csv;
    std::string out_json;
    // Verdict thresholds; defaults pinned from oracle runs.
    Rat l1_threshold = Rat(1, 10);
    Rat osc_factor = Rat(5);
    Rat pr5_slack = Rat(0);                  // extra slack on the 3g/n bound
    std::vector<long> snapshots;             // measure-comparison n values; empty = auto
};

struct ExperimentResult {
    std::string csv;
    std::string report_json;
    std::vector<std::string> verdicts;  // "PASS <name>: ..." / "FAIL <name>: ..."
    bool all_pass = false;
};

// Deterministic end-to-end run: pr5 rows for every n, measure snapshots,
// Okounkov statistics of the per-direction minimal slopes, verdict lines.
// Writes out_csv / out_json when set.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace mg
