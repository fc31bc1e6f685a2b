// Acceptance suite: one pass/fail line per criterion, exit code is the
// number of failures.

#include "grainflow/errors.hpp"
#include "grainflow/matching.hpp"
#include "grainflow/protocol.hpp"
#include "grainflow/scenario.hpp"
#include "grainflow/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace grainflow;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Center quick_center(const CenterId& id, Quantity stock, Quantity reserve, Quantity capacity) {
    Center c;
    c.id = id;
    c.hierarchy = {"North", "Punjab", id + "-district"};
    c.stock["wheat"] = stock;
    c.reserve["wheat"] = reserve;
    c.capacity["wheat"] = capacity;
    return c;
}

// 1. force-law suite ---------------------------------------------------------

bool force_law_suite(std::string& detail) {
    const auto start = Clock::now();
    std::mt19937_64 gen(1001);
    std::uniform_real_distribution<double> mass(-1000.0, 1000.0);
    std::uniform_real_distribution<double> urgency(1e-3, 2.0);
    std::uniform_real_distribution<double> cost(1e-3, 1e3);

    double worst_rel = 0.0;
    for (int i = 0; i < 10000; ++i) {
        double mc = mass(gen), ms = mass(gen);
        while (mc == 0.0) mc = mass(gen);
        while (ms == 0.0) ms = mass(gen);
        const double g = urgency(gen), r = cost(gen);
        const double f = pair_force(mc, ms, g, r);
        const long double ref =
            -(static_cast<long double>(g) * static_cast<long double>(mc) *
              static_cast<long double>(ms)) /
            static_cast<long double>(r);
        const double rel = std::abs(static_cast<double>((f - ref) / ref));
        worst_rel = std::max(worst_rel, rel);
        if (rel > 1e-12) {
            detail = "relative error " + format_double(rel);
            return false;
        }
        if ((f > 0.0) != ((mc < 0.0) != (ms < 0.0))) {
            detail = "sign law violated";
            return false;
        }
    }

    // strict monotone decrease along ascending cost grids, never zero
    for (int trial = 0; trial < 50; ++trial) {
        const double mc = -std::abs(mass(gen)) - 1.0;
        const double ms = std::abs(mass(gen)) + 1.0;
        const double g = urgency(gen);
        double r = cost(gen);
        double previous = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 100; ++k, r *= 1.17) {
            const double f = pair_force(mc, ms, g, r);
            if (!(f > 0.0) || !(f < previous)) {
                detail = "monotonicity violated at r=" + format_double(r);
                return false;
            }
            previous = f;
        }
    }

    const double elapsed = seconds_since(start);
    detail = "10000 tuples, worst rel err " + format_double(worst_rel) + ", " +
             format_double(elapsed) + "s";
    return elapsed < 1.0;
}

// 2. conservation ------------------------------------------------------------

Scenario random_closed_scenario(std::mt19937_64& gen, int n_centers) {
    Scenario s;
    s.commodities = {{"wheat", "Wheat"}, {"rice", "Rice"}};
    s.costs.base_price["wheat"] = 10.0;
    s.costs.base_price["rice"] = 12.0;
    s.costs.handling_fee = 0.5;
    s.costs.transport_rate = 0.02;
    s.urgency = {0.05, 1.0, 0.2, 0.9};
    s.sim.max_ticks = 200;
    s.sim.messaging = gen() % 2 == 0 ? MessagingMode::Instantaneous : MessagingMode::HopDelay;
    s.graph.kind = GraphSpecKind::Explicit;
    for (int i = 0; i < n_centers; ++i) {
        Center c;
        c.id = "N" + std::to_string(100 + i);
        c.hierarchy = {gen() % 2 == 0 ? "North" : "South",
                       "State" + std::to_string(gen() % 5), c.id + "-district"};
        c.geo_position = {static_cast<double>(gen() % 200), static_cast<double>(gen() % 200)};
        for (const auto& commodity : {"wheat", "rice"}) {
            const Quantity reserve = 100 + static_cast<Quantity>(gen() % 200);
            const Quantity swing = static_cast<Quantity>(gen() % 250) - 120;
            const Quantity stock = std::max<Quantity>(0, reserve + swing);
            c.stock[commodity] = stock;
            c.reserve[commodity] = reserve;
            c.capacity[commodity] = std::max(stock, reserve) + 150;
        }
        s.centers.push_back(std::move(c));
    }
    for (int i = 1; i < n_centers; ++i) {
        const int j = static_cast<int>(gen() % i);
        s.graph.edges.emplace_back("N" + std::to_string(100 + i), "N" + std::to_string(100 + j));
    }
    return s;
}

bool conservation(std::string& detail) {
    std::mt19937_64 gen(2002);
    for (int trial = 0; trial < 10; ++trial) {
        const auto s = random_closed_scenario(gen, 30);
        RngStream rng(gen());
        World world = make_world(s, rng);
        std::map<CommodityId, Quantity> initial;
        for (const auto& c : s.commodities) initial[c.id] = world.total_stock(c.id);
        for (int t = 0; t < 200; ++t) {
            step(world, rng, s);
            for (const auto& c : s.commodities) {
                if (world.total_stock(c.id) != initial[c.id]) {
                    detail = "trial " + std::to_string(trial) + ", tick " + std::to_string(t) +
                             ", commodity " + c.id;
                    return false;
                }
            }
        }
    }
    detail = "10 runs x 200 ticks x 2 commodities, bit-exact";
    return true;
}

// 3. argmax oracle -----------------------------------------------------------

bool argmax_oracle(std::string& detail) {
    std::mt19937_64 gen(3003);
    for (int trial = 0; trial < 500; ++trial) {
        const int n_consumers = 1 + static_cast<int>(gen() % 10);
        const int n_suppliers = 1 + static_cast<int>(gen() % 10);
        std::vector<ForceEvaluation> evals;
        for (int c = 0; c < n_consumers; ++c)
            for (int s = 0; s < n_suppliers; ++s) {
                if (gen() % 4 == 0) continue;
                const double f = 1.0 + static_cast<double>(gen() % 6); // coarse, to force ties
                evals.push_back({"C" + std::to_string(c), "S" + std::to_string(s), "wheat", f,
                                 10.0});
            }

        std::map<CenterId, CenterId> fast;
        for (const auto& cluster : build_clusters(evals))
            for (const auto& member : cluster.members) fast[member] = cluster.supplier_id;

        for (int c = 0; c < n_consumers; ++c) {
            const CenterId consumer = "C" + std::to_string(c);
            const ForceEvaluation* best = nullptr;
            for (const auto& e : evals) {
                if (e.consumer_id != consumer) continue;
                if (best == nullptr || e.force > best->force ||
                    (e.force == best->force && e.supplier_id < best->supplier_id))
                    best = &e;
            }
            const bool assigned = fast.contains(consumer);
            if (best == nullptr) {
                if (assigned) {
                    detail = "spurious assignment in trial " + std::to_string(trial);
                    return false;
                }
            } else if (!assigned || fast.at(consumer) != best->supplier_id) {
                detail = "mismatch in trial " + std::to_string(trial) + " for " + consumer;
                return false;
            }
        }
    }
    detail = "500 instances, zero mismatches";
    return true;
}

// 4. priority soundness ------------------------------------------------------

bool priority_soundness(std::string& detail) {
    std::mt19937_64 gen(4004);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<QueueEntry> entries;
        const int n = 1 + static_cast<int>(gen() % 12);
        for (int i = 0; i < n; ++i) {
            QueueEntry e;
            e.consumer_id = "C" + std::to_string(i);
            e.deficit = static_cast<Quantity>(gen() % 60); // zero deficits exercise skipping
            e.tier = static_cast<Relation>(gen() % 3);
            e.urgency = 0.1 * static_cast<double>(gen() % 10); // coarse, to force ties
            e.unit_cost = 10.0;
            entries.push_back(std::move(e));
        }
        const auto queue = build_priority_queue(entries);
        const Quantity surplus = 1 + static_cast<Quantity>(gen() % 200);
        const auto grants = allocate(surplus, queue);

        std::map<CenterId, const QueueEntry*> by_id;
        for (const auto& e : entries) by_id[e.consumer_id] = &e;
        std::map<CenterId, Quantity> granted;
        for (const auto& g : grants) {
            const QueueEntry* current = by_id.at(g.consumer_id);
            for (const auto& e : entries) {
                if (e.consumer_id == g.consumer_id || e.deficit <= 0) continue;
                if (granted.contains(e.consumer_id)) continue; // already served earlier
                const bool higher_tier = e.tier < current->tier;
                const bool same_tier_higher_urgency =
                    e.tier == current->tier && e.urgency > current->urgency;
                if (higher_tier || same_tier_higher_urgency) {
                    detail = "trial " + std::to_string(trial) + ": " + g.consumer_id +
                             " served before " + e.consumer_id;
                    return false;
                }
            }
            granted[g.consumer_id] = g.quantity;
        }
    }
    detail = "500 random queues, zero violations";
    return true;
}

// 5. message complexity ------------------------------------------------------

bool message_complexity(std::string& detail) {
    const std::size_t n = 54;
    const std::size_t target_edges = (n * 6) / 2; // average degree 6
    for (std::uint64_t seed = 9000; seed < 9050; ++seed) {
        std::mt19937_64 gen(seed);
        std::uniform_real_distribution<double> coord(0.0, 100.0);
        std::vector<Center> centers;
        for (std::size_t i = 0; i < n; ++i) {
            Center c;
            c.id = "N" + std::to_string(100 + i);
            c.geo_position = {coord(gen), coord(gen)};
            centers.push_back(std::move(c));
        }
        std::vector<double> dists;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                dists.push_back(distance(centers[i].geo_position, centers[j].geo_position));
        std::sort(dists.begin(), dists.end());
        const double radius = dists[target_edges - 1];
        const auto graph = make_geometric_graph(centers, radius);
        if (!graph.is_connected()) continue;
        const std::size_t edges = graph.edge_count();
        if (edges > target_edges) continue; // tie on the threshold distance

        std::size_t total_tx = 0;
        for (const auto& c : centers) {
            const auto plan = plan_flood(graph, c.id);
            if (plan.transmissions > 2 * edges) {
                detail = "flood exceeded 2|E|";
                return false;
            }
            total_tx += plan.transmissions;
        }
        const double mean = static_cast<double>(total_tx) / static_cast<double>(n);
        const double naive = static_cast<double>(n * (n - 1));
        detail = "seed " + std::to_string(seed) + ", |E|=" + std::to_string(edges) + ", mean " +
                 format_double(mean) + " vs naive " + format_double(naive) + " (" +
                 format_double(naive / mean) + "x)";
        return mean * 5.0 <= naive;
    }
    detail = "no connected geometric graph found at average degree 6";
    return false;
}

// 6. progress / termination --------------------------------------------------

bool north_zone_progress(std::string& detail) {
    const auto s = generate_north_zone(7);
    if (s.centers.size() != 54) {
        detail = "wrong center count";
        return false;
    }
    Quantity surplus = 0, ph_surplus = 0, deficit = 0;
    for (const auto& c : s.centers) {
        const auto role = classify_role(c, "wheat");
        if (role.kind == RoleKind::Supplier) {
            surplus += role.magnitude;
            if (c.hierarchy.state == "Punjab" || c.hierarchy.state == "Haryana")
                ph_surplus += role.magnitude;
        } else if (role.kind == RoleKind::Consumer) {
            deficit += role.magnitude;
        }
    }
    if (static_cast<double>(ph_surplus) < 0.90 * static_cast<double>(surplus)) {
        detail = "surplus concentration below 90%";
        return false;
    }
    if (surplus < deficit) {
        detail = "infeasible scenario";
        return false;
    }
    if (!build_graph(s).is_connected()) {
        detail = "graph not connected";
        return false;
    }
    const auto start = Clock::now();
    const auto result = run(s, 7);
    const double elapsed = seconds_since(start);
    detail = "unmet " + std::to_string(result.final_unmet) + " after " +
             std::to_string(result.ticks_run) + " ticks in " + format_double(elapsed) + "s";
    return result.final_unmet == 0 && result.ticks_run <= 500 && elapsed < 5.0;
}

// 7. determinism replay ------------------------------------------------------

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool determinism_replay(std::string& detail) {
    const auto s = generate_north_zone(11);
    const fs::path work = "acceptance_work";
    fs::remove_all(work);
    const auto write_outputs = [&](const fs::path& dir, const RunResult& r) {
        fs::create_directories(dir);
        std::ofstream(dir / "metrics.csv", std::ios::binary) << write_metrics(r.metrics.rows);
        std::ofstream(dir / "trace.log", std::ios::binary) << write_trace(r.trace);
    };
    write_outputs(work / "a", run(s, 11));
    write_outputs(work / "b", run(s, 11));
    const bool metrics_equal = slurp(work / "a" / "metrics.csv") == slurp(work / "b" / "metrics.csv");
    const bool trace_equal = slurp(work / "a" / "trace.log") == slurp(work / "b" / "trace.log");
    detail = std::string("metrics ") + (metrics_equal ? "identical" : "differ") + ", trace " +
             (trace_equal ? "identical" : "differ");
    return metrics_equal && trace_equal && !slurp(work / "a" / "trace.log").empty();
}

// 8. poisson sanity ----------------------------------------------------------

bool poisson_sanity(std::string& detail) {
    RngStream rng(123);
    const int n = 10000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = static_cast<double>(rng.poisson(3.0));
        sum += x;
        sumsq += x * x;
    }
    const double mean = sum / n;
    const double variance = (sumsq - sum * mean) / (n - 1);
    detail = "mean " + format_double(mean) + ", variance " + format_double(variance);
    return std::abs(mean - 3.0) <= 0.1 && std::abs(variance - 3.0) <= 0.3;
}

// 9. urgency dynamics --------------------------------------------------------

bool urgency_dynamics(std::string& detail) {
    // closed form inside a run: a consumer nobody answers
    Scenario s;
    s.commodities = {{"wheat", "Wheat"}};
    s.costs.base_price["wheat"] = 10.0;
    s.urgency = {0.03, 1.0, 0.2, 0.9};
    s.graph.kind = GraphSpecKind::Explicit;
    s.sim.max_ticks = 100;
    s.centers = {quick_center("C", 70, 100, 200)};
    RngStream rng(17);
    World world = make_world(s, rng);
    const PairKey pair{"C", "wheat"};
    const double g0 = world.urgencies.at(pair).g0;
    for (Tick k = 0; k < 80; ++k) {
        step(world, rng, s);
        const double expected = std::min(s.urgency.g_max, g0 + s.urgency.alpha * static_cast<double>(k));
        if (world.urgencies.at(pair).current != expected) {
            detail = "mismatch at k=" + std::to_string(k);
            return false;
        }
    }

    // granularity independence, bit-exact
    std::mt19937_64 gen(9009);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const UrgencyParams params{unit(gen) * 0.2, 1.0 + unit(gen), 0.0, 1.0};
        const UrgencyState start{unit(gen), 0.0, 0};
        const Tick a = static_cast<Tick>(gen() % 100);
        const Tick b = static_cast<Tick>(gen() % 100);
        const auto split = urgency_update(urgency_update(start, params, a), params, b);
        const auto whole = urgency_update(start, params, a + b);
        if (split.current != whole.current || split.waiting_time != whole.waiting_time) {
            detail = "granularity split differs";
            return false;
        }
    }
    detail = "closed form exact over 80 ticks; 1000 bit-exact splits";
    return true;
}

// 10. kinematics -------------------------------------------------------------

bool kinematics(std::string& detail) {
    std::mt19937_64 gen(1010);
    std::uniform_real_distribution<double> coord(-100.0, 100.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int max_steps_seen = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const Vec2 target{coord(gen), coord(gen)};
        Vec2 pos{coord(gen), coord(gen)};
        const double standoff = 0.05 + unit(gen) * 3.0;
        const double beta = 0.1 + unit(gen) * 0.9;
        if (distance(pos, target) <= standoff) {
            --trial;
            continue;
        }
        int steps = 0;
        bool converged = false;
        for (; steps < 200; ++steps) {
            const double before = distance(pos, target);
            pos = virtual_step(pos, target, standoff, beta);
            const double after = distance(pos, target);
            if (after > before + 1e-12) {
                detail = "a step moved the consumer away from its target";
                return false;
            }
            if (std::abs(after - standoff) <= 1e-9) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            detail = "no convergence within 200 steps (beta " + format_double(beta) + ")";
            return false;
        }
        max_steps_seen = std::max(max_steps_seen, steps + 1);
    }
    detail = "500 cases, worst case " + std::to_string(max_steps_seen) + " steps";
    return true;
}

} // namespace

int main() {
    struct Criterion {
        int number;
        const char* name;
        bool (*check)(std::string&);
    };
    const Criterion criteria[] = {
        {1, "force-law suite (value, sign, monotonicity, <1s)", force_law_suite},
        {2, "conservation under transfers (bit-exact)", conservation},
        {3, "cluster argmax equals brute force", argmax_oracle},
        {4, "priority queue soundness", priority_soundness},
        {5, "flood cost beats naive broadcast 5x", message_complexity},
        {6, "north-zone progress to zero deficit (<5s)", north_zone_progress},
        {7, "determinism replay (byte-identical outputs)", determinism_replay},
        {8, "poisson sampler sanity", poisson_sanity},
        {9, "urgency closed form and granularity", urgency_dynamics},
        {10, "kinematics convergence to the stand-off", kinematics},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = criterion.check(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("[%s] criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion.number,
                    criterion.name, detail.empty() ? "" : " :: ", detail.c_str());
        if (!ok) ++failures;
    }
    if (failures == 0)
        std::printf("all %zu criteria passed\n", std::size(criteria));
    else
        std::printf("%d criteria FAILED\n", failures);
    return failures;
}
