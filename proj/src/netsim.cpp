#include "seanet/netsim.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <set>
#include <stdexcept>

#include "seanet/errors.hpp"

namespace seanet::netsim {

bool is_switch_like(NodeKind k) {
    return k == NodeKind::Switch || k == NodeKind::AccessPoint;
}

bool is_host_like(NodeKind k) {
    return k == NodeKind::Host || k == NodeKind::Station;
}

std::string to_string(NodeKind k) {
    switch (k) {
    case NodeKind::Switch: return "switch";
    case NodeKind::Host: return "host";
    case NodeKind::AccessPoint: return "access_point";
    case NodeKind::Station: return "station";
    }
    return "?";
}

NodeKind node_kind_from_string(const std::string& s) {
    if (s == "switch") return NodeKind::Switch;
    if (s == "host") return NodeKind::Host;
    if (s == "access_point") return NodeKind::AccessPoint;
    if (s == "station") return NodeKind::Station;
    throw std::invalid_argument("unknown node kind: " + s);
}

std::string to_string(EtherType e) {
    return e == EtherType::Arp ? "arp" : "ipv4";
}

EtherType ether_type_from_string(const std::string& s) {
    if (s == "arp") return EtherType::Arp;
    if (s == "ipv4") return EtherType::Ipv4;
    throw std::invalid_argument("unknown ethertype: " + s);
}

std::string to_string(ActionKind a) {
    switch (a) {
    case ActionKind::Output: return "output";
    case ActionKind::Drop: return "drop";
    case ActionKind::Flood: return "flood";
    }
    return "?";
}

std::string TopoSpec::describe() const {
    std::string s;
    switch (shape) {
    case Shape::Single: s = "single(" + std::to_string(k) + ")"; break;
    case Shape::Linear: s = "linear(" + std::to_string(n) + ")"; break;
    case Shape::Tree:
        s = "tree(" + std::to_string(depth) + "," + std::to_string(fanout) + ")";
        break;
    }
    if (wifi) s += "+wifi";
    return s;
}

namespace {

bool valid_id(const std::string& id) {
    if (id.empty()) return false;
    for (char c : id) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                  c == '-' || c == '_' || c == '.';
        if (!ok) return false;
    }
    return true;
}

} // namespace

void Network::add_node(NodeKind kind, const std::string& id, const std::string& mac,
                       const std::string& dpid, const std::string& longitude,
                       const std::string& latitude) {
    if (!valid_id(id)) throw std::invalid_argument("bad node id: '" + id + "'");
    if (nodes_.count(id)) throw std::invalid_argument("duplicate node id: " + id);
    if (is_host_like(kind)) {
        if (mac.empty()) throw std::invalid_argument("host " + id + " needs a MAC");
        for (const auto& [nid, n] : nodes_)
            if (n.mac == mac)
                throw std::invalid_argument("duplicate MAC " + mac + " on " + id + " and " + nid);
    }
    Node n;
    n.id = id;
    n.kind = kind;
    n.mac = is_host_like(kind) ? mac : "";
    n.dpid = is_switch_like(kind) ? dpid : "";
    n.longitude = longitude;
    n.latitude = latitude;
    nodes_.emplace(id, std::move(n));
    node_order_.push_back(id);
}

std::string Network::add_port(const std::string& node_id) {
    auto it = nodes_.find(node_id);
    if (it == nodes_.end()) throw std::invalid_argument("no such node: " + node_id);
    uint32_t number = static_cast<uint32_t>(it->second.ports.size()) + 1;
    std::string port_id = node_id + "-eth" + std::to_string(number);
    add_port_with_id(node_id, port_id, number);
    return port_id;
}

void Network::add_port_with_id(const std::string& node_id, const std::string& port_id,
                               uint32_t number) {
    auto it = nodes_.find(node_id);
    if (it == nodes_.end()) throw std::invalid_argument("no such node: " + node_id);
    if (!valid_id(port_id)) throw std::invalid_argument("bad port id: '" + port_id + "'");
    if (ports_.count(port_id)) throw std::invalid_argument("duplicate port id: " + port_id);
    if (number < 1) throw std::invalid_argument("port number must be >= 1");
    if (is_host_like(it->second.kind) && !it->second.ports.empty())
        throw std::invalid_argument("host " + node_id + " may have only one port");
    for (const auto& pid : it->second.ports)
        if (ports_.at(pid).number == number)
            throw std::invalid_argument("duplicate port number on " + node_id);
    ports_.emplace(port_id, Port{port_id, node_id, number});
    it->second.ports.push_back(port_id);
}

std::string Network::add_link(const std::string& port_a, const std::string& port_b) {
    std::string id = "link" + std::to_string(link_order_.size() + 1);
    add_link_with_id(id, port_a, port_b);
    return id;
}

void Network::add_link_with_id(const std::string& id, const std::string& port_a,
                               const std::string& port_b) {
    if (!valid_id(id)) throw std::invalid_argument("bad link id: '" + id + "'");
    if (links_.count(id)) throw std::invalid_argument("duplicate link id: " + id);
    if (port_a == port_b) throw std::invalid_argument("link endpoints must differ");
    if (!ports_.count(port_a)) throw std::invalid_argument("no such port: " + port_a);
    if (!ports_.count(port_b)) throw std::invalid_argument("no such port: " + port_b);
    if (link_by_port_.count(port_a) || link_by_port_.count(port_b))
        throw std::invalid_argument("port already linked");
    links_.emplace(id, Link{id, port_a, port_b});
    link_order_.push_back(id);
    link_by_port_[port_a] = id;
    link_by_port_[port_b] = id;
}

const Node& Network::node(const std::string& id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw std::invalid_argument("no such node: " + id);
    return it->second;
}

const Port& Network::port(const std::string& id) const {
    auto it = ports_.find(id);
    if (it == ports_.end()) throw std::invalid_argument("no such port: " + id);
    return it->second;
}

const Link& Network::link(const std::string& id) const {
    auto it = links_.find(id);
    if (it == links_.end()) throw std::invalid_argument("no such link: " + id);
    return it->second;
}

std::vector<std::string> Network::host_ids() const {
    std::vector<std::string> out;
    for (const auto& id : node_order_)
        if (is_host_like(nodes_.at(id).kind)) out.push_back(id);
    return out;
}

std::vector<std::string> Network::switch_ids() const {
    std::vector<std::string> out;
    for (const auto& id : node_order_)
        if (is_switch_like(nodes_.at(id).kind)) out.push_back(id);
    return out;
}

const Port* Network::find_port_by_number(const std::string& node_id, uint32_t number) const {
    auto it = nodes_.find(node_id);
    if (it == nodes_.end()) return nullptr;
    for (const auto& pid : it->second.ports) {
        const Port& p = ports_.at(pid);
        if (p.number == number) return &p;
    }
    return nullptr;
}

const Node& Network::switch_or_throw(const std::string& id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end() || !is_switch_like(it->second.kind)) throw NoSuchSwitch(id);
    return it->second;
}

void Network::install_flow(const std::string& switch_id, FlowEntry entry) {
    const Node& sw = switch_or_throw(switch_id);
    if (entry.action.kind == ActionKind::Output &&
        find_port_by_number(sw.id, entry.action.port) == nullptr)
        throw NoSuchPort(switch_id + " has no port " + std::to_string(entry.action.port));
    auto& table = flow_tables_[switch_id];
    // descending priority, ties keep insertion order
    auto pos = std::find_if(table.begin(), table.end(), [&](const FlowEntry& e) {
        return e.priority < entry.priority;
    });
    table.insert(pos, std::move(entry));
}

std::size_t Network::remove_flows(const std::string& switch_id,
                                  const std::function<bool(const FlowEntry&)>& predicate) {
    switch_or_throw(switch_id);
    auto it = flow_tables_.find(switch_id);
    if (it == flow_tables_.end()) return 0;
    auto& table = it->second;
    std::size_t before = table.size();
    table.erase(std::remove_if(table.begin(), table.end(), predicate), table.end());
    return before - table.size();
}

const std::vector<FlowEntry>& Network::flow_table(const std::string& switch_id) const {
    switch_or_throw(switch_id);
    static const std::vector<FlowEntry> empty;
    auto it = flow_tables_.find(switch_id);
    return it == flow_tables_.end() ? empty : it->second;
}

void Network::clear_flows() { flow_tables_.clear(); }

const Link* Network::link_at(const std::string& port_id) const {
    auto it = link_by_port_.find(port_id);
    return it == link_by_port_.end() ? nullptr : &links_.at(it->second);
}

const FlowEntry* Network::lookup(const std::string& switch_id, uint32_t in_port,
                                 const Packet& packet) const {
    auto it = flow_tables_.find(switch_id);
    if (it == flow_tables_.end()) return nullptr;
    for (const FlowEntry& e : it->second) {
        if (e.match.in_port && *e.match.in_port != in_port) continue;
        if (e.match.dst_mac && *e.match.dst_mac != packet.dst_mac) continue;
        if (e.match.ethertype && *e.match.ethertype != packet.ethertype) continue;
        return &e;
    }
    return nullptr;
}

Outcome Network::forward(const std::string& from_host_id, const Packet& packet) const {
    auto it = nodes_.find(from_host_id);
    if (it == nodes_.end() || !is_host_like(it->second.kind)) throw NoSuchHost(from_host_id);
    const Node& src = it->second;

    struct Copy {
        std::string arrival_port; // port the copy arrives at
        int ttl;
        bool flooded;
    };

    bool any_flood = false;
    bool any_loop = false;
    std::string drop_reason;
    std::set<std::string> delivered;
    std::set<std::string> flood_visited; // switches that already flooded this packet
    std::deque<Copy> pending;

    auto note_drop = [&](const std::string& reason) {
        if (drop_reason.empty()) drop_reason = reason;
    };
    auto send_out = [&](const std::string& egress_port, int ttl, bool flooded) {
        const Link* l = link_at(egress_port);
        if (l == nullptr) {
            note_drop("no-link");
            return;
        }
        const std::string& peer = l->port_a == egress_port ? l->port_b : l->port_a;
        pending.push_back(Copy{peer, ttl, flooded});
    };

    if (src.ports.empty()) return Outcome{Outcome::Kind::Dropped, "", "no-link", {}};
    send_out(src.ports.front(), packet.ttl, false);

    while (!pending.empty()) {
        Copy copy = pending.front();
        pending.pop_front();
        const Port& at = ports_.at(copy.arrival_port);
        const Node& here = nodes_.at(at.owner);

        if (is_host_like(here.kind)) {
            if (copy.flooded || here.mac == packet.dst_mac)
                delivered.insert(here.id);
            else
                note_drop("wrong-host");
            continue;
        }

        if (copy.ttl <= 0) {
            any_loop = true;
            continue;
        }
        const FlowEntry* entry = lookup(here.id, at.number, packet);
        if (entry == nullptr) {
            note_drop("table-miss");
            continue;
        }
        switch (entry->action.kind) {
        case ActionKind::Drop:
            note_drop("drop");
            break;
        case ActionKind::Output: {
            const Port* out = find_port_by_number(here.id, entry->action.port);
            if (out == nullptr)
                note_drop("no-such-port");
            else
                send_out(out->id, copy.ttl - 1, copy.flooded);
            break;
        }
        case ActionKind::Flood: {
            any_flood = true;
            if (!flood_visited.insert(here.id).second) break;
            for (const auto& pid : here.ports)
                if (pid != at.id) send_out(pid, copy.ttl - 1, true);
            break;
        }
        }
    }

    if (any_flood) {
        Outcome out;
        out.kind = Outcome::Kind::Flooded;
        out.hosts.assign(delivered.begin(), delivered.end());
        return out;
    }
    if (!delivered.empty())
        return Outcome{Outcome::Kind::Delivered, *delivered.begin(), "", {}};
    if (any_loop) return Outcome{Outcome::Kind::Looped, "", "", {}};
    return Outcome{Outcome::Kind::Dropped, "", drop_reason.empty() ? "table-miss" : drop_reason,
                   {}};
}

bool Network::reachable(const std::string& h1, const std::string& h2) const {
    const Node& a = node(h1);
    const Node& b = node(h2);
    if (!is_host_like(a.kind)) throw NoSuchHost(h1);
    if (!is_host_like(b.kind)) throw NoSuchHost(h2);
    Packet there{a.mac, b.mac, EtherType::Ipv4, 64};
    Packet back{b.mac, a.mac, EtherType::Ipv4, 64};
    return forward(h1, there).delivered_to(h2) && forward(h2, back).delivered_to(h1);
}

bool Network::operator==(const Network& other) const {
    if (node_order_ != other.node_order_ || link_order_ != other.link_order_) return false;
    for (const auto& id : node_order_)
        if (!(nodes_.at(id) == other.nodes_.at(id))) return false;
    for (const auto& id : link_order_)
        if (!(links_.at(id) == other.links_.at(id))) return false;
    for (const auto& id : node_order_) {
        if (!is_switch_like(nodes_.at(id).kind)) continue;
        if (!(flow_table(id) == other.flow_table(id))) return false;
    }
    return true;
}

namespace {

/// Assigns ids, MACs, dpids and grid locations while nodes are created.
class Builder {
public:
    explicit Builder(bool wifi) : wifi_(wifi) {}

    std::string add_switch() {
        ++switch_count_;
        std::string id = (wifi_ ? "ap" : "s") + std::to_string(switch_count_);
        net_.add_node(wifi_ ? NodeKind::AccessPoint : NodeKind::Switch, id, "",
                      std::to_string(switch_count_), next_long(), next_lat());
        advance_grid();
        return id;
    }

    std::string add_host() {
        ++host_count_;
        std::string id = (wifi_ ? "sta" : "h") + std::to_string(host_count_);
        net_.add_node(wifi_ ? NodeKind::Station : NodeKind::Host, id, mac_for(host_count_), "",
                      next_long(), next_lat());
        advance_grid();
        return id;
    }

    void connect(const std::string& a, const std::string& b) {
        net_.add_link(net_.add_port(a), net_.add_port(b));
    }

    Network take() { return std::move(net_); }

private:
    static std::string mac_for(uint32_t index) {
        char buf[18];
        std::snprintf(buf, sizeof buf, "00:00:00:00:%02x:%02x", (index >> 8) & 0xff,
                      index & 0xff);
        return buf;
    }

    std::string next_long() const { return grid_coord(grid_index_ % 16); }
    std::string next_lat() const { return grid_coord(grid_index_ / 16); }
    void advance_grid() { ++grid_index_; }

    static std::string grid_coord(uint32_t cell) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", cell * 0.25);
        return buf;
    }

    Network net_;
    bool wifi_;
    uint32_t switch_count_ = 0;
    uint32_t host_count_ = 0;
    uint32_t grid_index_ = 0;
};

} // namespace

Network build_topology(const TopoSpec& spec) {
    Builder b(spec.wifi);
    switch (spec.shape) {
    case TopoSpec::Shape::Single: {
        if (spec.k < 1) throw InvalidSpec("single requires k >= 1");
        std::string sw = b.add_switch();
        for (uint32_t i = 0; i < spec.k; ++i) {
            std::string h = b.add_host();
            b.connect(sw, h);
        }
        break;
    }
    case TopoSpec::Shape::Linear: {
        if (spec.n < 1) throw InvalidSpec("linear requires n >= 1");
        std::vector<std::string> switches;
        for (uint32_t i = 0; i < spec.n; ++i) switches.push_back(b.add_switch());
        for (uint32_t i = 0; i < spec.n; ++i) {
            std::string h = b.add_host();
            b.connect(switches[i], h);
        }
        for (uint32_t i = 0; i + 1 < spec.n; ++i) b.connect(switches[i], switches[i + 1]);
        break;
    }
    case TopoSpec::Shape::Tree: {
        if (spec.depth < 1) throw InvalidSpec("tree requires depth >= 1");
        if (spec.fanout < 2) throw InvalidSpec("tree requires fanout >= 2");
        // complete fanout-ary switch tree, hosts at the leaves
        uint64_t switch_count = 0, level_size = 1;
        for (uint32_t d = 0; d < spec.depth; ++d, level_size *= spec.fanout)
            switch_count += level_size;
        uint64_t leaf_count = level_size / spec.fanout; // fanout^(depth-1)
        uint64_t host_count = level_size;               // fanout^depth

        std::vector<std::string> switches;
        for (uint64_t i = 0; i < switch_count; ++i) switches.push_back(b.add_switch());
        for (uint64_t j = 1; j < switch_count; ++j) {
            uint64_t parent = (j - 1) / spec.fanout;
            b.connect(switches[parent], switches[j]);
        }
        uint64_t first_leaf = switch_count - leaf_count;
        for (uint64_t i = 0; i < host_count; ++i) {
            std::string h = b.add_host();
            b.connect(switches[first_leaf + i / spec.fanout], h);
        }
        break;
    }
    }
    return b.take();
}

} // namespace seanet::netsim
