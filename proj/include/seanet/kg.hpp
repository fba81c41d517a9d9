#pragma once

#include <chrono>
#include <condition_variable>
#include <functional>
#include <memory>
#include <mutex>
#include <thread>

#include "seanet/netsim.hpp"
#include "seanet/rdf.hpp"

namespace seanet::kg {

/// One complete, immutable knowledge graph of the network at a point in time.
struct Snapshot {
    rdf::Graph graph;
    std::chrono::steady_clock::time_point taken_at;
    std::size_t triple_count = 0;
};

/// IRI minting under the ex: namespace.
rdf::Term element_iri(const std::string& id);
rdf::Term point_iri(const std::string& node_id);
rdf::Term flow_iri(const std::string& switch_id, std::size_t table_position);
rdf::Term action_iri(const std::string& switch_id, std::size_t table_position);
/// Inverse of element_iri; empty if the term is not in the ex: namespace.
std::string element_id(const rdf::Term& iri);

/// Abstracts the network into triples under the ontology schema.
Snapshot snapshot(const netsim::Network& net);

inline constexpr std::chrono::milliseconds kDefaultInterval{5000};

/// Re-snapshots the network every `interval`, publishing each complete
/// result atomically. The caller must serialize network mutation against
/// ticks. stop() halts after at most one in-flight snapshot.
class PeriodicSnapshotter {
public:
    using Sink = std::function<void(std::shared_ptr<const Snapshot>)>;

    PeriodicSnapshotter(const netsim::Network& net,
                        std::chrono::milliseconds interval = kDefaultInterval,
                        Sink sink = {});
    ~PeriodicSnapshotter();

    PeriodicSnapshotter(const PeriodicSnapshotter&) = delete;
    PeriodicSnapshotter& operator=(const PeriodicSnapshotter&) = delete;

    void stop();
    /// Most recently published snapshot; null before the first tick.
    std::shared_ptr<const Snapshot> latest() const;

private:
    void run(std::stop_token token);

    const netsim::Network& net_;
    std::chrono::milliseconds interval_;
    Sink sink_;
    mutable std::mutex mutex_;
    std::condition_variable_any cv_;
    std::shared_ptr<const Snapshot> latest_;
    std::jthread worker_;
};

} // namespace seanet::kg
