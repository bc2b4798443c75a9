#include "umw/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "umw/error.hpp"

namespace umw {

namespace {

using json = nlohmann::json;

TrafficClass parse_class(const json& j, int index) {
    TrafficClass cls;
    cls.id = j.value("id", index);
    cls.kind = parse_flow_kind(j.at("kind").get<std::string>());
    cls.source = j.at("source").get<NodeId>();
    if (j.contains("destinations")) cls.destinations = j.at("destinations").get<std::vector<NodeId>>();
    cls.rate = j.at("rate").get<double>();
    return cls;
}

json class_to_json(const TrafficClass& cls) {
    json j = {{"id", cls.id}, {"kind", to_string(cls.kind)}, {"source", cls.source}, {"rate", cls.rate}};
    if (cls.kind != FlowKind::broadcast) j["destinations"] = cls.destinations;
    return j;
}

SteinerMode parse_steiner_mode(const std::string& s) {
    if (s == "exact") return SteinerMode::exact;
    if (s == "approx") return SteinerMode::approx;
    throw ParseError("unknown steiner mode '" + s + "'");
}

bool is_builtin(const Testbed& tb) {
    const auto names = builtin_names();
    if (std::find(names.begin(), names.end(), tb.name) == names.end()) return false;
    const Testbed ref = builtin_topology(tb.name);
    return ref.graph == tb.graph && ref.activation == tb.activation;
}

std::string fmt(double x) {
    if (!std::isfinite(x)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

double mean_of(const std::vector<std::int64_t>& v, std::size_t begin, std::size_t end) {
    if (end <= begin) return 0.0;
    long double s = 0;
    for (std::size_t i = begin; i < end; ++i) s += static_cast<long double>(v[i]);
    return static_cast<double>(s / static_cast<long double>(end - begin));
}

bool route_matches_class(const Graph& g, const RouteTree& tree, const TrafficClass& cls) {
    if (!is_valid_route(g, tree) || tree.root != cls.source) return false;
    if (cls.kind == FlowKind::anycast) {
        return tree.covered.size() == 1 &&
               std::binary_search(cls.destinations.begin(), cls.destinations.end(), tree.covered.front());
    }
    return tree.covered == cls.destinations;
}

}  // namespace

SimulationConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
    if (!doc.is_object()) throw ParseError("config must be a JSON object");
    SimulationConfig cfg;
    try {
        std::optional<Testbed> tb;
        if (!doc.contains("topology")) throw ParseError("config needs a 'topology' entry");
        const json& topo = doc.at("topology");
        if (topo.is_string()) {
            tb = builtin_topology(topo.get<std::string>());
        } else if (topo.is_object() && topo.contains("file")) {
            std::filesystem::path p = topo.at("file").get<std::string>();
            if (p.is_relative()) p = base_dir / p;
            Topology t = load_topology(p);
            tb = Testbed{p.stem().string(), std::move(t.graph), std::move(t.activation), {}};
        } else if (topo.is_object()) {
            Topology t = parse_topology(topo);
            tb = Testbed{doc.value("name", std::string("custom")), std::move(t.graph), std::move(t.activation), {}};
        } else {
            throw ParseError("'topology' must be a builtin name or an object");
        }
        if (doc.contains("classes")) {
            tb->classes.clear();
            int i = 0;
            for (const auto& c : doc.at("classes")) tb->classes.push_back(normalize_class(parse_class(c, i++), tb->graph));
        }
        if (tb->classes.empty()) throw ValidationError("config defines no traffic classes");
        cfg.testbed = std::move(*tb);

        if (doc.contains("policy")) cfg.policy = parse_policy(doc.at("policy").get<std::string>());
        if (doc.contains("arrivals")) {
            const json& a = doc.at("arrivals");
            if (a.is_string()) {
                cfg.arrivals.kind = parse_arrival_kind(a.get<std::string>());
            } else {
                cfg.arrivals.kind = parse_arrival_kind(a.value("kind", std::string("binomial")));
                cfg.arrivals.trials = a.value("trials", cfg.arrivals.trials);
            }
            if (cfg.arrivals.trials < 1) throw ValidationError("binomial trials must be positive");
        }
        cfg.horizon = doc.value("horizon", cfg.horizon);
        cfg.seed = doc.value("seed", cfg.seed);
        cfg.load_factor = doc.value("load_factor", cfg.load_factor);
        if (doc.contains("routing")) {
            const json& r = doc.at("routing");
            if (r.contains("steiner")) cfg.routing.steiner_mode = parse_steiner_mode(r.at("steiner").get<std::string>());
            cfg.routing.steiner_cap = r.value("steiner_cap", cfg.routing.steiner_cap);
        }
        if (doc.contains("metrics")) {
            const json& m = doc.at("metrics");
            cfg.metrics.sample_every = m.value("sample_every", cfg.metrics.sample_every);
            cfg.metrics.warmup_fraction = m.value("warmup_fraction", cfg.metrics.warmup_fraction);
            cfg.metrics.diagnostics = m.value("diagnostics", cfg.metrics.diagnostics);
            cfg.metrics.stable_epsilon = m.value("stable_epsilon", cfg.metrics.stable_epsilon);
            cfg.metrics.divergence_ratio = m.value("divergence_ratio", cfg.metrics.divergence_ratio);
        }
        if (doc.contains("arrival_script")) {
            cfg.arrival_script = doc.at("arrival_script").get<std::vector<std::vector<std::int64_t>>>();
        }
    } catch (const json::exception& ex) {
        throw ParseError(std::string("malformed config: ") + ex.what());
    }
    if (cfg.horizon <= 0) throw ValidationError("horizon must be positive");
    if (!(cfg.load_factor >= 0.0)) throw ValidationError("load_factor must be nonnegative");
    if (cfg.metrics.sample_every <= 0) throw ValidationError("sample_every must be positive");
    if (!(cfg.metrics.warmup_fraction >= 0.0 && cfg.metrics.warmup_fraction < 1.0)) {
        throw ValidationError("warmup_fraction must lie in [0, 1)");
    }
    if (cfg.arrival_script) {
        for (const auto& row : *cfg.arrival_script) {
            if (row.size() != cfg.testbed.classes.size()) throw ValidationError("arrival_script row has wrong width");
            for (auto k : row)
                if (k < 0) throw ValidationError("arrival_script counts must be nonnegative");
        }
    }
    return cfg;
}

SimulationConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& ex) {
        throw ParseError(path.string() + ": " + ex.what());
    }
    return parse_config(doc, path.parent_path());
}

json config_to_json(const SimulationConfig& c) {
    json j;
    if (is_builtin(c.testbed)) {
        j["topology"] = c.testbed.name;
    } else {
        j["name"] = c.testbed.name;
        j["topology"] = topology_to_json(Topology{c.testbed.graph, c.testbed.activation});
    }
    json classes = json::array();
    for (const auto& cls : c.testbed.classes) classes.push_back(class_to_json(cls));
    j["classes"] = classes;
    j["policy"] = to_string(c.policy);
    j["arrivals"] = {{"kind", to_string(c.arrivals.kind)}, {"trials", c.arrivals.trials}};
    j["horizon"] = c.horizon;
    j["seed"] = c.seed;
    j["load_factor"] = c.load_factor;
    j["routing"] = {{"steiner", c.routing.steiner_mode == SteinerMode::exact ? "exact" : "approx"},
                    {"steiner_cap", c.routing.steiner_cap}};
    j["metrics"] = {{"sample_every", c.metrics.sample_every},
                    {"warmup_fraction", c.metrics.warmup_fraction},
                    {"diagnostics", c.metrics.diagnostics},
                    {"stable_epsilon", c.metrics.stable_epsilon},
                    {"divergence_ratio", c.metrics.divergence_ratio}};
    if (c.arrival_script) j["arrival_script"] = *c.arrival_script;
    return j;
}

const char* to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::stable: return "stable";
        case Verdict::diverging: return "diverging";
        case Verdict::undetermined: return "undetermined";
    }
    return "?";
}

std::int64_t InvariantCounts::total() const noexcept {
    return skorokhod + sandwich + loading_slack + duplicate_delivery + delivery_bounds + route_validity +
           link_capacity + ento_order + conservation;
}

json InvariantCounts::to_json() const {
    return {{"skorokhod", skorokhod},
            {"sandwich", sandwich},
            {"loading_slack", loading_slack},
            {"duplicate_delivery", duplicate_delivery},
            {"delivery_bounds", delivery_bounds},
            {"route_validity", route_validity},
            {"link_capacity", link_capacity},
            {"ento_order", ento_order},
            {"conservation", conservation},
            {"total", total()}};
}

MetricsReport run(const SimulationConfig& config, const SlotObserver& observer) {
    const Testbed& tb = config.testbed;
    const Graph& g = tb.graph;
    const auto& classes = tb.classes;
    const int n = g.node_count();
    const int m = g.edge_count();
    const auto C = classes.size();
    const std::int64_t T = config.horizon;
    if (T <= 0) throw ValidationError("horizon must be positive");
    const bool is_bp = config.policy == PolicyKind::bp;
    const bool diag = config.metrics.diagnostics;
    const std::optional<std::int64_t> amax =
        config.arrival_script ? std::nullopt : effective_amax(classes, config.arrivals);

    MetricsReport rep;
    rep.policy = config.policy;
    rep.horizon = T;
    rep.seed = config.seed;
    rep.load_factor = config.load_factor;
    rep.total_queue_series.reserve(static_cast<std::size_t>(T));

    std::vector<std::int64_t> cum_arr(C, 0), cum_del(C, 0);
    std::vector<long double> sojourn_sum(C, 0);
    VirtualQueues vq(m);
    PhysicalNetwork net(n, m);
    BPState bp(n, static_cast<int>(C));
    SkorokhodMonitor monitor(diag ? m : 0);
    AssociatedQueues aq(diag ? m : 0);
    std::vector<std::int64_t> vq_running_max(static_cast<std::size_t>(m), 0);
    std::int64_t observed_amax = 0;
    std::uint64_t next_uid = 0;

    const auto warm = static_cast<std::int64_t>(std::floor(config.metrics.warmup_fraction * static_cast<double>(T)));
    long double sum_q = 0, sum_vq = 0;

    std::vector<std::int64_t> arrivals(C, 0);
    std::vector<std::int64_t> virtual_arrivals(static_cast<std::size_t>(m), 0);
    std::vector<DeliveryEvent> deliveries;
    std::vector<CompletionEvent> completions;

    for (std::int64_t t = 0; t < T; ++t) {
        if (config.arrival_script) {
            const auto& script = *config.arrival_script;
            if (t < static_cast<std::int64_t>(script.size())) {
                arrivals = script[static_cast<std::size_t>(t)];
            } else {
                std::fill(arrivals.begin(), arrivals.end(), 0);
            }
        } else {
            arrivals = generate_arrivals(classes, config.arrivals, config.load_factor, t, config.seed);
        }
        std::int64_t slot_total = 0;
        for (std::size_t c = 0; c < C; ++c) {
            slot_total += arrivals[c];
            cum_arr[c] += arrivals[c];
        }
        rep.max_slot_arrivals = std::max(rep.max_slot_arrivals, slot_total);
        observed_amax = std::max(observed_amax, slot_total);
        deliveries.clear();
        completions.clear();

        std::optional<PolicyDecision> decision;
        std::int64_t total_q = 0;
        const std::uint64_t first_uid = next_uid;

        if (is_bp) {
            std::vector<BPArrival> fresh;
            for (std::size_t c = 0; c < C; ++c) {
                for (std::int64_t k = 0; k < arrivals[c]; ++k) {
                    fresh.push_back(BPArrival{static_cast<int>(c), BPPacket{next_uid++, t}});
                }
            }
            std::vector<BPDelivery> done = bp_absorb(bp, classes, {}, fresh);
            const BPDecision d = bp_decide(bp, g, tb.activation, classes);
            const std::vector<BPMove> moves = bp_forward(bp, d);
            if (diag) {
                for (const auto& mv : moves) {
                    if (g.arc_from(mv.transfer.edge, mv.transfer.from).to != mv.transfer.to) ++rep.violations.link_capacity;
                }
            }
            auto more = bp_absorb(bp, classes, moves, {});
            done.insert(done.end(), more.begin(), more.end());
            for (const auto& dlv : done) {
                const auto c = static_cast<std::size_t>(dlv.class_index);
                ++cum_del[c];
                sojourn_sum[c] += static_cast<long double>(t - dlv.packet.arrival_slot);
                deliveries.push_back(DeliveryEvent{dlv.packet.uid, dlv.class_index, dlv.node, t});
                completions.push_back(CompletionEvent{dlv.packet.uid, dlv.class_index, dlv.packet.arrival_slot, t});
            }
            total_q = bp.total();
            std::fill(virtual_arrivals.begin(), virtual_arrivals.end(), 0);
        } else {
            if (config.policy == PolicyKind::umw) {
                decision = umw_decide(vq, arrivals, g, tb.activation, classes, config.routing);
            } else {
                const auto q = net.queue_lengths();
                decision = umw_heuristic_decide(q, arrivals, g, tb.activation, classes, config.routing);
            }
            std::vector<RouteLoad> loads;
            for (std::size_t c = 0; c < C; ++c) {
                if (arrivals[c] == 0) continue;
                const auto& route = decision->routes[c];
                if (!route) {
                    ++rep.violations.route_validity;
                    continue;
                }
                if (diag && !route_matches_class(g, *route, classes[c])) ++rep.violations.route_validity;
                loads.push_back(RouteLoad{&*route, arrivals[c]});
                const auto compiled = CompiledRoute::compile(*route);
                for (std::int64_t k = 0; k < arrivals[c]; ++k) {
                    Packet p;
                    p.uid = next_uid++;
                    p.class_index = static_cast<int>(c);
                    p.arrival_slot = t;
                    p.route = compiled;
                    ForwardResult r = net.admit(std::move(p), t);
                    deliveries.insert(deliveries.end(), r.deliveries.begin(), r.deliveries.end());
                    completions.insert(completions.end(), r.completions.begin(), r.completions.end());
                }
            }
            ForwardResult fwd = net.ento_forward(decision->activation, t);
            deliveries.insert(deliveries.end(), fwd.deliveries.begin(), fwd.deliveries.end());
            completions.insert(completions.end(), fwd.completions.begin(), fwd.completions.end());
            virtual_arrivals = virtual_arrival_vector(m, loads);
            vq.lindley_update(virtual_arrivals, decision->activation);
            for (const auto& done : completions) {
                const auto c = static_cast<std::size_t>(done.class_index);
                ++cum_del[c];
                sojourn_sum[c] += static_cast<long double>(done.full_delivery_slot - done.arrival_slot);
            }
            total_q = net.total_queue();

            if (diag) {
                monitor.observe(virtual_arrivals, decision->activation);
                aq.update(virtual_arrivals, decision->activation);
                const std::int64_t bound = amax ? *amax : observed_amax;
                const auto q = vq.lengths();
                const auto qa = aq.lengths();
                for (EdgeId e = 0; e < m; ++e) {
                    const auto i = static_cast<std::size_t>(e);
                    vq_running_max[i] = std::max(vq_running_max[i], q[i]);
                    if (monitor.value(e) != q[i]) ++rep.violations.skorokhod;
                    if (qa[i] < q[i] || qa[i] > q[i] + bound) ++rep.violations.sandwich;
                    if (monitor.max_window_slack(e) > vq_running_max[i]) ++rep.violations.loading_slack;
                }
                const auto& au = net.audit();
                if (au.copies_created - au.copies_destroyed != total_q) ++rep.violations.conservation;
            }
        }

        std::int64_t in_system = 0;
        for (std::size_t c = 0; c < C; ++c) {
            in_system += cum_arr[c] - cum_del[c];
            if (cum_del[c] > cum_arr[c] || cum_del[c] < cum_arr[c] - total_q) ++rep.violations.delivery_bounds;
        }
        if (is_bp && in_system != total_q) ++rep.violations.conservation;
        if (diag) ++rep.checked_slots;

        rep.total_queue_series.push_back(total_q);
        if (t >= warm) {
            sum_q += total_q;
            sum_vq += is_bp ? 0 : vq.total();
        }
        const std::int64_t elapsed = t + 1;
        if (elapsed % config.metrics.sample_every == 0 || elapsed == T) {
            SampleRow row;
            row.slot = elapsed;
            row.total_q = total_q;
            row.total_vq = is_bp ? 0 : vq.total();
            row.max_vq = is_bp ? 0 : vq.max();
            row.delivered = cum_del;
            long double soj = 0;
            std::int64_t del = 0;
            for (std::size_t c = 0; c < C; ++c) {
                row.throughput.push_back(static_cast<double>(cum_del[c]) / static_cast<double>(elapsed));
                soj += sojourn_sum[c];
                del += cum_del[c];
            }
            row.mean_sojourn = del > 0 ? static_cast<double>(soj / del) : 0.0;
            rep.samples.push_back(std::move(row));
        }

        if (observer) {
            SlotView view;
            view.slot = t;
            view.arrivals = arrivals;
            view.first_uid = first_uid;
            view.decision = decision ? &*decision : nullptr;
            view.virtual_arrivals = virtual_arrivals;
            view.virtual_queues = is_bp ? nullptr : &vq;
            view.network = is_bp ? nullptr : &net;
            view.backpressure = is_bp ? &bp : nullptr;
            view.deliveries = deliveries;
            view.completions = completions;
            view.cumulative_arrivals = cum_arr;
            view.cumulative_delivered = cum_del;
            view.total_queue = total_q;
            observer(view);
        }
    }

    if (!is_bp) {
        const auto& au = net.audit();
        rep.violations.duplicate_delivery += au.duplicate_deliveries;
        rep.violations.ento_order += au.ento_order_violations;
        rep.violations.link_capacity += au.capacity_violations;
        rep.final_layers = net.layer_counters();
    }

    const auto& series = rep.total_queue_series;
    const auto Tz = static_cast<std::size_t>(T);
    const auto counted = static_cast<long double>(T - warm);
    rep.avg_total_queue = static_cast<double>(sum_q / counted);
    rep.avg_total_vq = static_cast<double>(sum_vq / counted);
    rep.final_queue_over_t = static_cast<double>(series.back()) / static_cast<double>(T);
    rep.first_half_mean = mean_of(series, 0, Tz / 2);
    rep.last_decile_mean = mean_of(series, static_cast<std::size_t>(std::floor(0.9 * static_cast<double>(T))), Tz);
    rep.stable = rep.final_queue_over_t < config.metrics.stable_epsilon;
    rep.diverging = rep.last_decile_mean > 0.0 &&
                    rep.last_decile_mean >= config.metrics.divergence_ratio * rep.first_half_mean;
    rep.verdict = rep.diverging ? Verdict::diverging : (rep.stable ? Verdict::stable : Verdict::undetermined);

    long double soj = 0;
    std::int64_t del = 0;
    for (std::size_t c = 0; c < C; ++c) {
        ClassMetrics cm;
        cm.arrivals = cum_arr[c];
        cm.delivered = cum_del[c];
        cm.throughput = static_cast<double>(cum_del[c]) / static_cast<double>(T);
        cm.mean_sojourn = cum_del[c] > 0 ? static_cast<double>(sojourn_sum[c] / cum_del[c]) : 0.0;
        rep.classes.push_back(cm);
        soj += sojourn_sum[c];
        del += cum_del[c];
    }
    rep.mean_sojourn = del > 0 ? static_cast<double>(soj / del) : 0.0;
    return rep;
}

std::uint64_t sweep_seed(std::uint64_t master, std::size_t index) noexcept {
    return master + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(index);
}

std::vector<SweepRow> sweep(const SimulationConfig& base, std::span<const double> values, SweepParam param) {
    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        SimulationConfig cfg = base;
        cfg.seed = sweep_seed(base.seed, i);
        if (param == SweepParam::load) {
            cfg.load_factor = values[i];
        } else {
            cfg.load_factor = 1.0;
            for (auto& cls : cfg.testbed.classes) cls.rate = values[i];
        }
        rows.push_back(SweepRow{values[i], run(cfg)});
    }
    return rows;
}

std::vector<MetricsReport> compare(const SimulationConfig& config, std::span<const PolicyKind> policies) {
    std::vector<MetricsReport> out;
    out.reserve(policies.size());
    for (PolicyKind p : policies) {
        SimulationConfig cfg = config;
        cfg.policy = p;
        out.push_back(run(cfg));
    }
    return out;
}

namespace {

void write_header(std::ostream& out, const char* first, std::size_t classes) {
    out << first << ",policy,total_q,total_vq";
    for (std::size_t c = 0; c < classes; ++c) out << ",throughput_c" << c;
    out << ",mean_sojourn\n";
}

}  // namespace

void write_run_csv(std::ostream& out, const MetricsReport& report) {
    write_header(out, "slot", report.classes.size());
    for (const auto& row : report.samples) {
        out << row.slot << ',' << to_string(report.policy) << ',' << row.total_q << ',' << row.total_vq;
        for (double th : row.throughput) out << ',' << fmt(th);
        out << ',' << fmt(row.mean_sojourn) << '\n';
    }
}

void write_table_csv(std::ostream& out, std::span<const double> loads, std::span<const MetricsReport> reports) {
    if (loads.size() != reports.size()) throw ValidationError("one load value per report expected");
    write_header(out, "load", reports.empty() ? 0 : reports.front().classes.size());
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        out << fmt(loads[i]) << ',' << to_string(r.policy) << ',' << fmt(r.avg_total_queue) << ','
            << fmt(r.avg_total_vq);
        for (const auto& cm : r.classes) out << ',' << fmt(cm.throughput);
        out << ',' << fmt(r.mean_sojourn) << '\n';
    }
}

json report_summary(const MetricsReport& r) {
    json classes = json::array();
    for (std::size_t c = 0; c < r.classes.size(); ++c) {
        const auto& cm = r.classes[c];
        classes.push_back({{"index", c},
                           {"arrivals", cm.arrivals},
                           {"delivered", cm.delivered},
                           {"throughput", cm.throughput},
                           {"mean_sojourn", cm.mean_sojourn}});
    }
    return {{"policy", to_string(r.policy)},
            {"seed", r.seed},
            {"horizon", r.horizon},
            {"load_factor", r.load_factor},
            {"avg_total_queue", r.avg_total_queue},
            {"avg_total_vq", r.avg_total_vq},
            {"final_queue_over_t", r.final_queue_over_t},
            {"first_half_mean", r.first_half_mean},
            {"last_decile_mean", r.last_decile_mean},
            {"stable", r.stable},
            {"diverging", r.diverging},
            {"verdict", to_string(r.verdict)},
            {"classes", classes},
            {"mean_sojourn", r.mean_sojourn},
            {"max_slot_arrivals", r.max_slot_arrivals},
            {"final_layers", r.final_layers},
            {"checked_slots", r.checked_slots},
            {"violations", r.violations.to_json()}};
}

}  // namespace umw
