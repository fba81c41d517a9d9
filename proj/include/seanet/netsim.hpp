#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace seanet::netsim {

enum class NodeKind { Switch, Host, AccessPoint, Station };

bool is_switch_like(NodeKind k);
bool is_host_like(NodeKind k);
std::string to_string(NodeKind k);
NodeKind node_kind_from_string(const std::string& s);

enum class EtherType { Arp, Ipv4 };
std::string to_string(EtherType e);
EtherType ether_type_from_string(const std::string& s);

struct Port {
    std::string id;
    std::string owner;
    uint32_t number = 0; // >= 1, unique per owner
};

struct Node {
    std::string id;
    NodeKind kind = NodeKind::Switch;
    std::string mac;       // hosts/stations only
    std::string dpid;      // switches/access points only
    std::string longitude; // decimal strings
    std::string latitude;
    std::vector<std::string> ports; // port ids, creation order

    bool operator==(const Node&) const = default;
};

struct Link {
    std::string id;
    std::string port_a;
    std::string port_b;

    bool operator==(const Link&) const = default;
};

struct FlowMatch {
    std::optional<uint32_t> in_port;
    std::optional<std::string> dst_mac;
    std::optional<EtherType> ethertype;

    bool operator==(const FlowMatch&) const = default;
};

enum class ActionKind { Output, Drop, Flood };
std::string to_string(ActionKind a);

struct FlowAction {
    ActionKind kind = ActionKind::Drop;
    uint32_t port = 0; // Output only

    bool operator==(const FlowAction&) const = default;
};

/// One match-action rule. Timeouts are stored but never expire.
struct FlowEntry {
    uint64_t cookie = 0;
    uint32_t table_id = 0;
    int32_t priority = 0;
    uint32_t flags = 0;
    uint32_t idle_timeout = 0;
    uint32_t hard_timeout = 0;
    FlowMatch match;
    FlowAction action;

    bool operator==(const FlowEntry&) const = default;
};

struct Packet {
    std::string src_mac;
    std::string dst_mac;
    EtherType ethertype = EtherType::Ipv4;
    int ttl = 64;
};

struct Outcome {
    enum class Kind { Delivered, Dropped, Flooded, Looped };
    Kind kind = Kind::Dropped;
    std::string host;               // Delivered
    std::string reason;             // Dropped
    std::vector<std::string> hosts; // Flooded, sorted

    bool delivered_to(const std::string& h) const {
        return kind == Kind::Delivered && host == h;
    }
};

struct TopoSpec {
    enum class Shape { Single, Linear, Tree };
    Shape shape = Shape::Single;
    uint32_t k = 1;      // single: hosts per switch
    uint32_t n = 1;      // linear: switch count
    uint32_t depth = 1;  // tree
    uint32_t fanout = 2; // tree
    bool wifi = false;

    std::string describe() const;
};

/// The simulated SDN. Single-writer; all mutation happens through the
/// methods below, which maintain referential integrity.
class Network {
public:
    // --- construction (used by the topology builder and the session loader)
    void add_node(NodeKind kind, const std::string& id, const std::string& mac,
                  const std::string& dpid, const std::string& longitude,
                  const std::string& latitude);
    /// Creates the next-numbered port on `node_id` and returns its id.
    std::string add_port(const std::string& node_id);
    void add_port_with_id(const std::string& node_id, const std::string& port_id,
                          uint32_t number);
    std::string add_link(const std::string& port_a, const std::string& port_b);
    void add_link_with_id(const std::string& id, const std::string& port_a,
                          const std::string& port_b);

    // --- lookup
    bool has_node(const std::string& id) const { return nodes_.count(id) > 0; }
    const Node& node(const std::string& id) const;
    const Port& port(const std::string& id) const;
    const std::vector<std::string>& node_ids() const { return node_order_; }
    const std::vector<std::string>& link_ids() const { return link_order_; }
    const Link& link(const std::string& id) const;
    /// Hosts and stations, in creation order.
    std::vector<std::string> host_ids() const;
    /// Switches and access points, in creation order.
    std::vector<std::string> switch_ids() const;
    /// Port of `node_id` with the given number; null if absent.
    const Port* find_port_by_number(const std::string& node_id, uint32_t number) const;

    // --- flow tables
    /// Appends an entry, keeping the table sorted by descending priority,
    /// ties broken by insertion order. Throws NoSuchSwitch / NoSuchPort.
    void install_flow(const std::string& switch_id, FlowEntry entry);
    std::size_t remove_flows(const std::string& switch_id,
                             const std::function<bool(const FlowEntry&)>& predicate);
    const std::vector<FlowEntry>& flow_table(const std::string& switch_id) const;
    void clear_flows();

    // --- forwarding oracle
    Outcome forward(const std::string& from_host_id, const Packet& packet) const;
    /// Bidirectional IPv4 delivery check, mirroring ping.
    bool reachable(const std::string& h1, const std::string& h2) const;

    bool operator==(const Network& other) const;

private:
    const Node& switch_or_throw(const std::string& id) const;
    /// Link attached to a port, if any.
    const Link* link_at(const std::string& port_id) const;
    const FlowEntry* lookup(const std::string& switch_id, uint32_t in_port,
                            const Packet& packet) const;

    std::vector<std::string> node_order_;
    std::unordered_map<std::string, Node> nodes_;
    std::unordered_map<std::string, Port> ports_;
    std::vector<std::string> link_order_;
    std::unordered_map<std::string, Link> links_;
    std::unordered_map<std::string, std::string> link_by_port_;
    std::unordered_map<std::string, std::vector<FlowEntry>> flow_tables_;
};

/// Deterministic generator: the same spec always yields the same network,
/// including ids, port numbers, MACs, dpids and grid locations.
Network build_topology(const TopoSpec& spec);

} // namespace seanet::netsim
