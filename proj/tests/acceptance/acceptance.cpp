// End-to-end acceptance run: the full benchmark matrix, the q = 1 runs, the
// comparative statics and the kernel/world oracle checks. Prints one
// PASS/FAIL line per criterion; exits non-zero when a gating one fails.

#include "narrevo/belief.hpp"
#include "narrevo/engine.hpp"
#include "narrevo/experiment.hpp"
#include "narrevo/output.hpp"
#include "narrevo/world.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace narrevo;

namespace {

// Tolerances and thresholds.
constexpr double kReferenceShareTol = 0.06;
constexpr double kSelfFulfillingAntiMax = 0.05;
constexpr double kConformistLow = 0.40;
constexpr double kConformistHigh = 0.80;
constexpr double kKernelTol = 1e-12;
constexpr double kStationarityTol = 0.01;
constexpr int kStationarityPeriods = 100000;
constexpr double kShareSumTol = 1e-9;
constexpr double kBenchmarkBudgetSeconds = 600.0;
constexpr int kReps = 100;

int gating_failures = 0;

void report(bool gating, bool pass, const std::string& name, const std::string& detail) {
    const char* tag = pass ? "PASS" : (gating ? "FAIL" : "SOFT-FAIL");
    std::cout << "[" << tag << "] " << name << (gating ? "" : " (non-gating)") << "\n        " << detail << "\n"
              << std::flush;
    if (gating && !pass) ++gating_failures;
}

std::string fmt(double v, int digits = 4) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

using Shares = std::array<double, kKindCount>;

Shares shares_of(const CellAggregate& cell) {
    Shares s{};
    for (std::size_t k = 0; k < kKindCount; ++k) s[k] = cell.kinds[k].mean_share;
    return s;
}

std::string describe(const Shares& s) {
    std::ostringstream out;
    for (auto kind : kAllKinds) out << to_string(kind) << "=" << fmt(s[kind_code(kind)]) << " ";
    return out.str();
}

std::size_t argmax(const Shares& s) { return std::max_element(s.begin(), s.end()) - s.begin(); }
std::size_t argmin(const Shares& s) { return std::min_element(s.begin(), s.end()) - s.begin(); }

constexpr std::size_t kNaive = 0, kAuto = 1, kSkeptical = 2, kConformist = 3, kAnti = 4;

std::map<std::pair<LawOfMotion, double>, Shares> index_cells(const AggregateResult& agg) {
    std::map<std::pair<LawOfMotion, double>, Shares> out;
    for (const auto& cell : agg.cells) out[{cell.cell.law, cell.cell.q}] = shares_of(cell);
    return out;
}

// ---------------------------------------------------------------------------

void table_a1() {
    ExperimentConfig c;
    c.q_grid = {1.0};
    c.laws = {LawOfMotion::Independent, LawOfMotion::SelfFulfilling};
    c.reps = kReps;
    const auto start = std::chrono::steady_clock::now();
    const auto run = run_experiment(c, resolve_workers(std::nullopt));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto cells = index_cells(run.aggregate);

    // Reported averages, in kind-code order (naive, auto, skeptical, conformist, anti).
    const Shares independent_ref{0.237034, 0.213813, 0.156436, 0.365112, 0.027877};
    const Shares selffulfilling_ref{0.2279, 0.2325, 0.2135, 0.3235, 0.0};

    const Shares& ind = cells.at({LawOfMotion::Independent, 1.0});
    bool ok_ind = true;
    for (std::size_t k = 0; k < kKindCount; ++k) ok_ind = ok_ind && std::abs(ind[k] - independent_ref[k]) <= kReferenceShareTol;
    report(true, ok_ind, "reference shares, independent law, q = 1 (+/-" + fmt(kReferenceShareTol, 2) + ")",
           "simulated " + describe(ind) + "| reference " + describe(independent_ref));

    const Shares& sf = cells.at({LawOfMotion::SelfFulfilling, 1.0});
    bool ok_sf = sf[kAnti] <= kSelfFulfillingAntiMax;
    for (std::size_t k = 0; k < kAnti; ++k) ok_sf = ok_sf && std::abs(sf[k] - selffulfilling_ref[k]) <= kReferenceShareTol;
    report(true, ok_sf, "reference shares, self-fulfilling law (delta = 0.5), q = 1",
           "simulated " + describe(sf) + "| reference naive=0.2279 auto=0.2325 skeptical=0.2135 conformist=0.3235 "
           "anti<=" + fmt(kSelfFulfillingAntiMax, 2) + " | " + fmt(secs, 1) + " s for both laws");

    int modal = 0;
    for (const auto& rep : run.replications[0]) modal += argmax(rep.final_shares) == kConformist;
    report(false, modal >= 60, "Conformists modal at q = 1 in >= 60 of 100 replications (independent)",
           "modal in " + std::to_string(modal) + " of " + std::to_string(kReps));
}

struct Benchmark {
    ExperimentRun run;
    std::string csv;
    double seconds = 0.0;
};

Benchmark run_benchmark() {
    ExperimentConfig c;
    c.reps = kReps;
    c.emit_timeseries = true;
    Benchmark b;
    const auto start = std::chrono::steady_clock::now();
    b.run = run_experiment(c, resolve_workers(std::nullopt));
    b.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    b.csv = aggregate_csv(b.run.aggregate);
    return b;
}

void conformist_dominance(const AggregateResult& agg) {
    const auto cells = index_cells(agg);
    bool ok = true;
    std::ostringstream detail;
    for (double q : {0.5, 0.6, 0.7, 0.8, 0.9}) {
        const Shares& s = cells.at({LawOfMotion::Independent, q});
        const bool cell_ok =
            argmax(s) == kConformist && s[kConformist] >= kConformistLow && s[kConformist] <= kConformistHigh;
        ok = ok && cell_ok;
        detail << "q=" << fmt(q, 1) << ": conformist=" << fmt(s[kConformist]) << (cell_ok ? "" : " (!)") << "  ";
    }
    report(true, ok, "Conformist dominance, independent law, share in [0.40, 0.80] and maximal", detail.str());
}

void anticonformist_inferiority(const AggregateResult& agg) {
    bool ok = true;
    std::ostringstream detail;
    int violations = 0;
    for (const auto& cell : agg.cells) {
        const Shares s = shares_of(cell);
        if (argmin(s) == kAnti) continue;
        ok = false;
        ++violations;
        detail << to_string(cell.cell.law) << " q=" << fmt(cell.cell.q, 1) << ": anti=" << fmt(s[kAnti])
               << " min is " << to_string(kind_from_code(static_cast<int>(argmin(s)))) << "=" << fmt(s[argmin(s)])
               << "\n        ";
    }
    report(true, ok, "Anti-conformists have the minimum share in every (law, q) benchmark cell",
           violations == 0 ? std::string("all 20 cells") : std::to_string(violations) + " of 20 cells violate:\n        " +
                                                                 detail.str());
}

void uncertainty_crossover(const AggregateResult& agg) {
    const auto cells = index_cells(agg);
    const Shares& lo = cells.at({LawOfMotion::Independent, 0.5});
    const Shares& hi = cells.at({LawOfMotion::Independent, 0.9});
    const bool skeptical_ok = lo[kSkeptical] > hi[kSkeptical];
    const double extreme_lo = lo[kNaive] + lo[kAuto];
    const double extreme_hi = hi[kNaive] + hi[kAuto];
    report(true, skeptical_ok && extreme_hi > extreme_lo, "Uncertainty crossover, independent law",
           "skeptical q=0.5 " + fmt(lo[kSkeptical]) + " vs q=0.9 " + fmt(hi[kSkeptical]) + "; naive+auto q=0.5 " +
               fmt(extreme_lo) + " vs q=0.9 " + fmt(extreme_hi));
}

void determinism_and_conservation(const Benchmark& first) {
    const Benchmark second = run_benchmark();
    const bool identical = first.csv == second.csv && first.run.replications == second.run.replications;

    bool sizes_ok = true;
    for (std::size_t c = 0; c < first.run.replications.size(); ++c) {
        const int n = first.run.aggregate.cells[c].cell.params.n;
        for (const auto& rep : first.run.replications[c])
            for (const auto& epoch : rep.epoch_series) sizes_ok = sizes_ok && epoch.stats.total() == n;
    }

    // Re-read the CSV text and sum shares per (law, q) group.
    std::map<std::string, double> sums;
    std::istringstream in(first.csv);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::vector<std::string> f;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) f.push_back(field);
        sums[f[0] + "," + f[1]] += std::stod(f[10]);
    }
    double worst = 0.0;
    for (const auto& [group, total] : sums) worst = std::max(worst, std::abs(total - 1.0));
    const bool within_budget = first.seconds < kBenchmarkBudgetSeconds;

    report(true, identical && sizes_ok && worst <= kShareSumTol && within_budget,
           "Determinism and conservation on the full benchmark (4 laws x 5 q x 100 reps)",
           std::string("byte-identical aggregate.csv: ") + (identical ? "yes" : "NO") +
               "; population constant at every epoch: " + (sizes_ok ? "yes" : "NO") +
               "; worst |sum shares - 1| = " + std::to_string(worst) + "; runtime " + fmt(first.seconds, 1) +
               " s (budget " + fmt(kBenchmarkBudgetSeconds, 0) + " s)");
}

void delta_zero_reduction() {
    bool ok = true;
    long periods = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SimParams ind = benchmark_params();
        ind.q = 0.5 + 0.1 * static_cast<double>(seed % 5);
        SimParams sf = ind;
        sf.law = LawOfMotion::SelfFulfilling;
        sf.delta = 0.0;
        std::vector<std::pair<StateLabel, std::vector<Agent>>> a, b;
        RunOptions oa{false, [&](int, const WorldState& w, std::span<const Agent> ag, const StepRecord&) {
                          a.emplace_back(w.current, std::vector<Agent>(ag.begin(), ag.end()));
                      }};
        RunOptions ob{false, [&](int, const WorldState& w, std::span<const Agent> ag, const StepRecord&) {
                          b.emplace_back(w.current, std::vector<Agent>(ag.begin(), ag.end()));
                      }};
        const auto ra = run_replication(ind, derive_seed(7, 0, seed), oa);
        const auto rb = run_replication(sf, derive_seed(7, 0, seed), ob);
        ok = ok && a == b && ra == rb;
        periods += static_cast<long>(a.size());
    }
    report(true, ok, "delta = 0 self-fulfilling equals independent, per period",
           std::to_string(periods) + " periods compared (state and every agent's kind and belief), 10 seeds");
}

void kernel_oracles() {
    long checked = 0;
    long mismatches = 0;
    for (const PrecisionMenu& menu : {PrecisionMenu{0.6, 0.9, 0.7}, PrecisionMenu{0.6, 0.7, 0.7}}) {
        for (int i = 1; i < 1000; ++i) {
            const Belief mu(i / 1000.0);
            for (auto s : {SignalLabel::a, SignalLabel::b}) {
                // Brute-force argmax/argmin of the fit over both menu entries.
                const double f1 = mu * likelihood(s, StateLabel::A, menu.rho1) +
                                  (1 - mu) * likelihood(s, StateLabel::B, menu.rho1);
                const double f2 = mu * likelihood(s, StateLabel::A, menu.rho2) +
                                  (1 - mu) * likelihood(s, StateLabel::B, menu.rho2);
                const Narrative arg_max = f2 > f1 ? Narrative::Rho2 : Narrative::Rho1;
                const Narrative arg_min = f2 < f1 ? Narrative::Rho2 : Narrative::Rho1;
                // Closed-form table: pro-attitudinal evidence gets rho2.
                Narrative table = Narrative::Rho1;
                if ((mu.value() >= 0.5 && s == SignalLabel::a) || (mu.value() <= 0.5 && s == SignalLabel::b))
                    table = Narrative::Rho2;
                if (i == 500) table = Narrative::Rho1;  // both table rows apply; documented tie rule
                const Narrative table_skeptical =
                    i == 500 ? Narrative::Rho1 : (table == Narrative::Rho2 ? Narrative::Rho1 : Narrative::Rho2);
                const auto a = choose_precision_auto(mu, s, menu).narrative;
                const auto k = choose_precision_skeptical(mu, s, menu).narrative;
                mismatches += (a != arg_max) + (k != arg_min) + (a != table) + (k != table_skeptical);
                for (int j = 0; j <= 100; ++j) {
                    const Belief avg(j / 100.0);
                    const double d1 = std::pow(bayes_update(mu, s, menu.rho1).value() - avg.value(), 2);
                    const double d2 = std::pow(bayes_update(mu, s, menu.rho2).value() - avg.value(), 2);
                    if (d1 == d2) continue;
                    mismatches += choose_precision_conformist(mu, s, menu, avg).narrative ==
                                  choose_precision_anticonformist(mu, s, menu, avg).narrative;
                    ++checked;
                }
                checked += 4;
            }
        }
    }

    struct Example {
        double got;
        double want;
    };
    const Example examples[] = {
        {bayes_update(Belief(0.5), SignalLabel::a, 0.7).value(), 0.7},
        {bayes_update(Belief(0.7), SignalLabel::a, 0.9).value(), 0.63 / 0.66},
        {bayes_update(Belief(0.7), SignalLabel::b, 0.9).value(), 0.07 / 0.34},
        {model_fit(Belief(0.8), SignalLabel::a, 0.9), 0.74},
        {model_fit(Belief(0.8), SignalLabel::a, 0.6), 0.56},
        {model_fit(Belief(0.5), SignalLabel::b, 0.9), 0.5},
        {bayes_update(Belief(0.6), SignalLabel::a, 0.6).value(), 0.36 / 0.52},
        {bayes_update(Belief(0.6), SignalLabel::a, 0.9).value(), 0.54 / 0.58},
        {bayes_update(Belief(0.7), SignalLabel::a, 0.7).value(), 0.49 / 0.58},
    };
    int bad_examples = 0;
    for (const auto& e : examples) bad_examples += std::abs(e.got - e.want) > kKernelTol;

    report(true, mismatches == 0 && bad_examples == 0, "Kernel oracle suite (1e-3 prior grid, menus {0.6,0.9} and {0.6,0.7})",
           std::to_string(checked) + " choice comparisons, " + std::to_string(mismatches) + " mismatches; " +
               std::to_string(std::size(examples) - bad_examples) + "/" + std::to_string(std::size(examples)) +
               " hand-derived values within 1e-12");
}

void stationarity() {
    bool ok = true;
    std::ostringstream detail;
    for (double q : {0.5, 0.7, 0.9}) {
        SimParams p = benchmark_params();
        p.law = LawOfMotion::AutoCorrelated;
        p.q = q;
        RandomStream stream(derive_seed(11, 0, static_cast<std::size_t>(q * 10)));
        WorldState w = initial_state(p, stream);
        long hits = w.current == StateLabel::A;
        for (int t = 2; t <= kStationarityPeriods; ++t) {
            w = advance_state(p, w, t, Belief(0.5), stream);
            hits += w.current == StateLabel::A;
        }
        const double freq = static_cast<double>(hits) / kStationarityPeriods;
        ok = ok && std::abs(freq - q) <= kStationarityTol;
        detail << "q=" << fmt(q, 1) << ": " << fmt(freq) << "  ";
    }
    report(true, ok, "Autocorrelated stationarity over 1e5 periods (+/-0.01)", detail.str());
}

void comparative_statics(const AggregateResult& benchmark) {
    const auto base = index_cells(benchmark);

    ExperimentConfig high_p;
    high_p.q_grid = {0.5};
    high_p.reps = kReps;
    high_p.overrides = {Overrides{0.9, std::nullopt, std::nullopt, std::nullopt, std::nullopt}};
    const auto hp = index_cells(run_experiment(high_p, resolve_workers(std::nullopt)).aggregate);
    bool ok = true;
    std::ostringstream detail;
    for (auto law : kAllLaws) {
        const double with = hp.at({law, 0.5})[kSkeptical];
        const double without = base.at({law, 0.5})[kSkeptical];
        ok = ok && with > without;
        detail << to_string(law) << ": " << fmt(with) << " vs " << fmt(without) << "  ";
    }
    report(false, ok, "p = 0.9 raises skeptical shares at q = 0.5", detail.str());

    ExperimentConfig small;
    small.reps = kReps;
    small.laws = {LawOfMotion::Independent};
    small.overrides = {Overrides{std::nullopt, std::nullopt, std::nullopt, 50, std::nullopt},
                       Overrides{std::nullopt, std::nullopt, std::nullopt, 10, std::nullopt}};
    const auto run = run_experiment(small, resolve_workers(std::nullopt));
    bool modal = true;
    std::ostringstream d2;
    for (const auto& cell : run.aggregate.cells) {
        const Shares s = shares_of(cell);
        modal = modal && argmax(s) == kConformist;
        d2 << "n=" << cell.cell.params.n << " q=" << fmt(cell.cell.q, 1) << ": " << fmt(s[kConformist])
           << (argmax(s) == kConformist ? "" : " (not modal)") << "  ";
    }
    report(false, modal, "Conformists remain modal with n in {10, 50} (independent law)", d2.str());
}

} // namespace

int main() {
    std::cout << "narrevo acceptance suite (" << kReps << " replications per cell)\n";
    kernel_oracles();
    stationarity();
    delta_zero_reduction();
    table_a1();

    const Benchmark bench = run_benchmark();
    std::cout << "benchmark mean final shares:\n";
    for (const auto& cell : bench.run.aggregate.cells)
        std::cout << "    " << to_string(cell.cell.law) << " q=" << fmt(cell.cell.q, 1) << "  "
                  << describe(shares_of(cell)) << "\n";
    conformist_dominance(bench.run.aggregate);
    anticonformist_inferiority(bench.run.aggregate);
    uncertainty_crossover(bench.run.aggregate);
    determinism_and_conservation(bench);
    comparative_statics(bench.run.aggregate);

    std::cout << (gating_failures == 0 ? "ALL GATING CRITERIA PASSED" : "GATING FAILURES: " + std::to_string(gating_failures))
              << "\n";
    return gating_failures == 0 ? 0 : 1;
}
