#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "umw/physical_net.hpp"
#include "umw/policy.hpp"
#include "umw/testbed.hpp"
#include "umw/traffic.hpp"
#include "umw/virtual_net.hpp"

namespace umw {

struct MetricsOptions {
    std::int64_t sample_every = 1000;
    double warmup_fraction = 0.1;
    bool diagnostics = false;
    double stable_epsilon = 0.05;   // stable when total queue at T, divided by T, is below this
    double divergence_ratio = 3.0;  // last-decile mean vs first-half mean

    bool operator==(const MetricsOptions&) const = default;
};

struct SimulationConfig {
    Testbed testbed;
    PolicyKind policy = PolicyKind::umw;
    ArrivalProcess arrivals;
    std::int64_t horizon = 10000;
    std::uint64_t seed = 1;
    double load_factor = 1.0;
    RoutingOptions routing;
    MetricsOptions metrics;
    // Exact per-slot, per-class arrival counts; replaces the random process.
    std::optional<std::vector<std::vector<std::int64_t>>> arrival_script;
};

/// Parses a run configuration. Relative topology file paths resolve
/// against `base_dir`. Throws ParseError / ValidationError.
SimulationConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = ".");
SimulationConfig load_config(const std::filesystem::path& path);
nlohmann::json config_to_json(const SimulationConfig& config);

enum class Verdict { stable, diverging, undetermined };
const char* to_string(Verdict v) noexcept;

struct SampleRow {
    std::int64_t slot = 0;  // slots elapsed
    std::int64_t total_q = 0;
    std::int64_t total_vq = 0;
    std::int64_t max_vq = 0;
    std::vector<std::int64_t> delivered;  // R^(c)(slot)
    std::vector<double> throughput;       // R^(c)(slot) / slot
    double mean_sojourn = 0.0;
};

struct InvariantCounts {
    std::int64_t skorokhod = 0;
    std::int64_t sandwich = 0;
    std::int64_t loading_slack = 0;
    std::int64_t duplicate_delivery = 0;
    std::int64_t delivery_bounds = 0;  // R <= A and R >= A - sum Q
    std::int64_t route_validity = 0;
    std::int64_t link_capacity = 0;
    std::int64_t ento_order = 0;
    std::int64_t conservation = 0;

    std::int64_t total() const noexcept;
    nlohmann::json to_json() const;
};

struct ClassMetrics {
    std::int64_t arrivals = 0;
    std::int64_t delivered = 0;
    double throughput = 0.0;
    double mean_sojourn = 0.0;
};

struct MetricsReport {
    PolicyKind policy = PolicyKind::umw;
    std::int64_t horizon = 0;
    std::uint64_t seed = 0;
    double load_factor = 1.0;

    std::vector<SampleRow> samples;
    std::vector<std::int64_t> total_queue_series;  // sum_e Q_e after each slot

    double avg_total_queue = 0.0;  // time average after warm-up
    double avg_total_vq = 0.0;
    double final_queue_over_t = 0.0;
    double first_half_mean = 0.0;
    double last_decile_mean = 0.0;
    bool stable = false;
    bool diverging = false;
    Verdict verdict = Verdict::undetermined;

    std::vector<ClassMetrics> classes;
    double mean_sojourn = 0.0;
    std::vector<std::int64_t> final_layers;
    std::int64_t max_slot_arrivals = 0;

    InvariantCounts violations;
    std::int64_t checked_slots = 0;
};

/// Read-only view of one completed slot, for instrumentation and tests.
struct SlotView {
    std::int64_t slot = 0;
    std::span<const std::int64_t> arrivals;          // per class
    std::uint64_t first_uid = 0;  // this slot's packets take consecutive uids in class order
    const PolicyDecision* decision = nullptr;        // UMW variants only
    std::span<const std::int64_t> virtual_arrivals;  // per edge
    const VirtualQueues* virtual_queues = nullptr;
    const PhysicalNetwork* network = nullptr;  // UMW variants only
    const BPState* backpressure = nullptr;     // BP only
    std::span<const DeliveryEvent> deliveries;
    std::span<const CompletionEvent> completions;
    std::span<const std::int64_t> cumulative_arrivals;  // per class
    std::span<const std::int64_t> cumulative_delivered;  // per class
    std::int64_t total_queue = 0;
};

using SlotObserver = std::function<void(const SlotView&)>;

/// One simulation run. Per slot: arrivals, weights, routes for arriving
/// classes, activation, ENTO forwarding (slot-t arrivals are eligible),
/// then the Lindley update.
MetricsReport run(const SimulationConfig& config, const SlotObserver& observer = {});

enum class SweepParam { load, rate };

struct SweepRow {
    double value = 0.0;
    MetricsReport report;
};

/// Sub-seed for run `index` of a sweep; index 0 keeps the master seed.
std::uint64_t sweep_seed(std::uint64_t master, std::size_t index) noexcept;

/// One run per value. `load` scales every class rate; `rate` sets every
/// class rate to the value at load factor 1.
std::vector<SweepRow> sweep(const SimulationConfig& base, std::span<const double> values,
                            SweepParam param = SweepParam::load);

/// Runs each policy on the same arrival sample path.
std::vector<MetricsReport> compare(const SimulationConfig& config, std::span<const PolicyKind> policies);

void write_run_csv(std::ostream& out, const MetricsReport& report);
void write_table_csv(std::ostream& out, std::span<const double> loads, std::span<const MetricsReport> reports);
nlohmann::json report_summary(const MetricsReport& report);

}  // namespace umw
