#include "seanet/bench.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <random>
#include <stdexcept>

#include "seanet/kg.hpp"
#include "seanet/mgmt.hpp"

namespace seanet::bench {

namespace {

volatile uint64_t g_sink = 0; // defeats dead-code elimination of timed work

using Clock = std::chrono::steady_clock;

uint64_t elapsed_ns(Clock::time_point t0, Clock::time_point t1) {
    return static_cast<uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
}

uint64_t median(std::vector<uint64_t> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

void require_reps(int reps) {
    if (reps < 5) throw std::invalid_argument("repetitions must be >= 5");
}

} // namespace

std::vector<rdf::Triple> ScanBaselineStore::match(const std::optional<rdf::Term>& s,
                                                  const std::optional<rdf::Term>& p,
                                                  const std::optional<rdf::Term>& o) const {
    std::vector<rdf::Triple> out;
    for (const rdf::Triple& t : triples_) {
        if (s && t.subject != *s) continue;
        if (p && t.predicate != *p) continue;
        if (o && t.object != *o) continue;
        out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<BenchRecord> bench_kg_generation(const std::vector<netsim::TopoSpec>& specs,
                                             int reps) {
    require_reps(reps);
    std::vector<BenchRecord> records;
    for (const auto& spec : specs) {
        netsim::Network net = netsim::build_topology(spec);
        std::vector<uint64_t> durations;
        std::size_t triples = 0;
        for (int r = 0; r < reps; ++r) {
            auto t0 = Clock::now();
            kg::Snapshot snap = kg::snapshot(net);
            std::string bytes = rdf::serialize_ntriples(snap.graph);
            auto t1 = Clock::now();
            g_sink = g_sink + bytes.size();
            triples = snap.triple_count;
            durations.push_back(elapsed_ns(t0, t1));
        }
        records.push_back(BenchRecord{"kg_generation", spec.describe(), net.node_ids().size(),
                                      triples, median(durations), reps});
    }
    return records;
}

std::vector<BenchRecord> bench_api(ApiOp op, const std::vector<netsim::TopoSpec>& specs,
                                   int reps) {
    require_reps(reps);
    std::vector<BenchRecord> records;
    for (const auto& spec : specs) {
        netsim::Network net = netsim::build_topology(spec);
        auto snap = std::make_shared<const kg::Snapshot>(kg::snapshot(net));
        std::vector<std::string> hosts = net.host_ids();
        std::vector<std::string> switches = net.switch_ids();

        std::vector<uint64_t> durations;
        for (int r = 0; r < reps; ++r) {
            netsim::Network scratch = net; // timing must not alter shared state
            mgmt::ManagementApi api(scratch);
            api.pin_snapshot(snap);
            auto t0 = Clock::now();
            if (op == ApiOp::ConnectAll) {
                std::vector<std::string> two(hosts.begin(),
                                             hosts.begin() + std::min<std::size_t>(2, hosts.size()));
                api.connect_all(two);
            } else {
                std::vector<std::string> allowed(
                    hosts.begin(), hosts.begin() + std::min<std::size_t>(2, hosts.size()));
                api.build_firewall(switches, allowed);
            }
            auto t1 = Clock::now();
            g_sink = g_sink + scratch.flow_table(switches.front()).size();
            durations.push_back(elapsed_ns(t0, t1));
        }
        const char* name = op == ApiOp::ConnectAll ? "api_connect_all" : "api_build_firewall";
        records.push_back(BenchRecord{name, spec.describe(), net.node_ids().size(),
                                      snap->triple_count, median(durations), reps});
    }
    return records;
}

namespace {

struct Probe {
    std::optional<rdf::Term> s, p, o;
};

struct LookupFixture {
    rdf::Graph graph;
    ScanBaselineStore scan;
    std::vector<Probe> probes;
};

LookupFixture build_lookup_fixture(std::size_t size, int probes) {
    LookupFixture fx;
    std::mt19937_64 rng(0x5ea0e7ULL ^ size);
    const std::size_t n_subjects = std::max<std::size_t>(4, size / 5);
    const std::size_t n_objects = std::max<std::size_t>(4, size / 4);
    const std::size_t n_predicates = 20;

    auto subject = [&] {
        return rdf::Term::iri("http://bench.example/s" + std::to_string(rng() % n_subjects));
    };
    auto predicate = [&] {
        return rdf::Term::iri("http://bench.example/p" + std::to_string(rng() % n_predicates));
    };
    auto object = [&]() -> rdf::Term {
        std::size_t k = rng() % n_objects;
        if (rng() % 2 == 0) return rdf::Term::iri("http://bench.example/o" + std::to_string(k));
        return rdf::Term::literal("v" + std::to_string(k));
    };

    std::vector<rdf::Triple> inserted;
    inserted.reserve(size);
    while (fx.graph.size() < size) {
        rdf::Triple t(subject(), predicate(), object());
        if (fx.graph.insert(t)) {
            fx.scan.add(t);
            inserted.push_back(std::move(t));
        }
    }

    fx.probes.reserve(static_cast<std::size_t>(probes));
    for (int i = 0; i < probes; ++i) {
        const rdf::Triple& t = inserted[rng() % inserted.size()];
        Probe probe;
        switch (rng() % 4) {
        case 0: probe.s = t.subject; break;
        case 1:
            probe.s = t.subject;
            probe.p = t.predicate;
            break;
        case 2:
            probe.p = t.predicate;
            probe.o = t.object;
            break;
        default:
            probe.s = t.subject;
            probe.p = t.predicate;
            probe.o = t.object;
        }
        fx.probes.push_back(std::move(probe));
    }
    return fx;
}

} // namespace

LookupRecords bench_lookup(const std::vector<std::size_t>& sizes, int probes, int reps) {
    require_reps(reps);
    if (probes < 1000) throw std::invalid_argument("probes must be >= 1000");
    if (sizes.size() < 2) throw std::invalid_argument("need at least two store sizes");
    auto [min_it, max_it] = std::minmax_element(sizes.begin(), sizes.end());
    if (*min_it == 0 || *max_it / *min_it < 100)
        throw std::invalid_argument("sizes must span at least two orders of magnitude");

    LookupRecords out;
    for (std::size_t size : sizes) {
        LookupFixture fx = build_lookup_fixture(size, probes);

        // correctness gate: both stores agree on every probe before timing
        for (const Probe& probe : fx.probes)
            if (fx.graph.match(probe.s, probe.p, probe.o) !=
                fx.scan.match(probe.s, probe.p, probe.o))
                throw std::logic_error("scan baseline diverged from indexed store");

        auto run = [&](auto&& store) {
            std::vector<uint64_t> per_probe;
            for (int r = 0; r < reps; ++r) {
                auto t0 = Clock::now();
                std::size_t hits = 0;
                for (const Probe& probe : fx.probes)
                    hits += store.match(probe.s, probe.p, probe.o).size();
                auto t1 = Clock::now();
                g_sink = g_sink + hits;
                per_probe.push_back(elapsed_ns(t0, t1) / static_cast<uint64_t>(probes));
            }
            return median(per_probe);
        };

        out.indexed.push_back(
            BenchRecord{"lookup_indexed", "synthetic", 0, size, run(fx.graph), reps});
        out.scan.push_back(
            BenchRecord{"lookup_scan", "synthetic", 0, size, run(fx.scan), reps});
    }
    return out;
}

void write_csv(std::ostream& out, std::vector<BenchRecord> records) {
    std::sort(records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
        if (a.experiment != b.experiment) return a.experiment < b.experiment;
        if (a.node_count != b.node_count) return a.node_count < b.node_count;
        return a.triple_count < b.triple_count;
    });
    out << "experiment,shape,node_count,triple_count,duration_ns,repetitions\n";
    for (const BenchRecord& r : records)
        out << r.experiment << ',' << r.shape << ',' << r.node_count << ',' << r.triple_count
            << ',' << r.duration_ns << ',' << r.repetitions << '\n';
}

} // namespace seanet::bench
