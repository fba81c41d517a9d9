#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "seanet/kg.hpp"
#include "seanet/netsim.hpp"

namespace seanet::mgmt {

/// Minimum-hop host-to-host path: hops alternate host, switch, ..., host;
/// ports[i] is the egress port number used at hops[i].
struct PathResult {
    std::vector<std::string> hops;
    std::vector<uint32_t> ports;

    std::size_t hop_count() const { return hops.empty() ? 0 : hops.size() - 1; }
};

struct AddFlowRequest {
    std::string switch_id;
    std::optional<std::string> dst;     // destination MAC
    std::optional<uint32_t> in_port;
    netsim::ActionKind action_type = netsim::ActionKind::Output;
    std::optional<uint32_t> to_port;    // required iff action_type == Output
};

/// `cookie=…, table=…, priority=…, match={…}, action=…` - the dump format.
std::string render_flow_entry(const netsim::FlowEntry& e);

/// The seven technology-independent management operations. Topology reads go
/// through the query engine over one snapshot per operation (a fresh one at
/// operation start unless a snapshot is pinned); only flow installation and
/// removal touch the network directly.
class ManagementApi {
public:
    explicit ManagementApi(netsim::Network& net) : net_(net) {}

    /// Make every operation read this snapshot instead of taking fresh ones.
    /// Benchmarks use this to keep snapshot generation out of timed regions.
    void pin_snapshot(std::shared_ptr<const kg::Snapshot> snap) { pinned_ = std::move(snap); }
    std::shared_ptr<const kg::Snapshot> current_snapshot() const;

    void add_flow(const AddFlowRequest& request);
    std::size_t delete_flow(const std::vector<std::string>& in_hosts,
                            const std::vector<std::string>& out_hosts);
    bool add_arp_flow(const std::string& switch_id);
    std::vector<std::string> dump_all_flows(const std::string& switch_id) const;
    void connect_all(const std::vector<std::string>& hosts);
    void build_firewall(const std::vector<std::string>& switches,
                        const std::vector<std::string>& allowed_hosts);
    PathResult find_path(const std::vector<std::string>& hosts) const;

private:
    netsim::Network& net_;
    std::shared_ptr<const kg::Snapshot> pinned_;
};

} // namespace seanet::mgmt
