#include "seanet/kg.hpp"

#include "seanet/ontology.hpp"

namespace seanet::kg {

namespace {
constexpr const char* kExample = "http://example.org/";

rdf::Term lit(const std::string& s) { return rdf::Term::literal(s); }
rdf::Term lit(uint32_t v) { return rdf::Term::literal(std::to_string(v)); }
rdf::Term lit(uint64_t v) { return rdf::Term::literal(std::to_string(v)); }
rdf::Term lit(int32_t v) { return rdf::Term::literal(std::to_string(v)); }
} // namespace

rdf::Term element_iri(const std::string& id) {
    return rdf::Term::iri(std::string(kExample) + id);
}

rdf::Term point_iri(const std::string& node_id) {
    return rdf::Term::iri(std::string(kExample) + "point_" + node_id);
}

rdf::Term flow_iri(const std::string& switch_id, std::size_t table_position) {
    return rdf::Term::iri(std::string(kExample) + "flow-" + switch_id + "-" +
                          std::to_string(table_position));
}

rdf::Term action_iri(const std::string& switch_id, std::size_t table_position) {
    return rdf::Term::iri(std::string(kExample) + "flow-" + switch_id + "-" +
                          std::to_string(table_position) + "-action");
}

std::string element_id(const rdf::Term& iri) {
    if (!iri.is_iri()) return "";
    const std::string& s = iri.text();
    const std::string ns(kExample);
    if (s.rfind(ns, 0) != 0) return "";
    return s.substr(ns.size());
}

Snapshot snapshot(const netsim::Network& net) {
    const auto& v = ontology::vocab();
    rdf::Graph g;
    auto emit = [&g](const rdf::Term& s, const rdf::Term& p, const rdf::Term& o) {
        g.insert(rdf::Triple(s, p, o));
    };

    auto kind_class = [&](netsim::NodeKind k) {
        switch (k) {
        case netsim::NodeKind::Switch: return v.switch_class;
        case netsim::NodeKind::Host: return v.host_class;
        case netsim::NodeKind::AccessPoint: return v.access_point_class;
        case netsim::NodeKind::Station: return v.station_class;
        }
        return v.switch_class;
    };

    for (const auto& id : net.node_ids()) {
        const netsim::Node& n = net.node(id);
        rdf::Term node = element_iri(id);
        rdf::Term point = point_iri(id);
        emit(node, v.rdf_type, kind_class(n.kind));
        emit(node, v.geo_location, point);
        emit(point, v.geo_long, lit(n.longitude));
        emit(point, v.geo_lat, lit(n.latitude));
        if (netsim::is_host_like(n.kind))
            emit(node, v.has_mac, lit(n.mac));
        else
            emit(node, v.has_id, lit(n.dpid));

        for (const auto& pid : n.ports) {
            const netsim::Port& p = net.port(pid);
            rdf::Term port = element_iri(pid);
            emit(node, v.has_port, port);
            emit(port, v.rdf_type, v.interface_class);
            emit(port, v.port_number, lit(p.number));
        }
    }

    for (const auto& lid : net.link_ids()) {
        const netsim::Link& l = net.link(lid);
        rdf::Term link = element_iri(lid);
        emit(link, v.link_from, element_iri(l.port_a));
        emit(link, v.link_to, element_iri(l.port_b));
    }

    for (const auto& sw : net.switch_ids()) {
        const auto& table = net.flow_table(sw);
        rdf::Term sw_iri = element_iri(sw);
        for (std::size_t pos = 0; pos < table.size(); ++pos) {
            const netsim::FlowEntry& e = table[pos];
            rdf::Term flow = flow_iri(sw, pos);
            rdf::Term action = action_iri(sw, pos);
            emit(sw_iri, v.has_flow, flow);
            emit(flow, v.rdf_type, v.flow_class);
            emit(flow, v.priority, lit(e.priority));
            emit(flow, v.cookie, lit(e.cookie));
            emit(flow, v.table_id, lit(e.table_id));
            emit(flow, v.flags, lit(e.flags));
            emit(flow, v.idle_timeout, lit(e.idle_timeout));
            emit(flow, v.hard_timeout, lit(e.hard_timeout));
            if (e.match.in_port) emit(flow, v.in_port, lit(*e.match.in_port));
            if (e.match.dst_mac) emit(flow, v.match_dst, lit(*e.match.dst_mac));
            if (e.match.ethertype)
                emit(flow, v.match_ether_type, lit(netsim::to_string(*e.match.ethertype)));
            emit(flow, v.has_flow_action, action);
            switch (e.action.kind) {
            case netsim::ActionKind::Output: {
                emit(action, v.rdf_type, v.output_action_class);
                const netsim::Port* out = net.find_port_by_number(sw, e.action.port);
                // install_flow guarantees the port exists
                if (out != nullptr) emit(action, v.to_port, element_iri(out->id));
                break;
            }
            case netsim::ActionKind::Drop:
                emit(action, v.rdf_type, v.drop_action_class);
                break;
            case netsim::ActionKind::Flood:
                emit(action, v.rdf_type, v.flood_action_class);
                break;
            }
        }
    }

    Snapshot snap;
    snap.triple_count = g.size();
    snap.graph = std::move(g);
    snap.taken_at = std::chrono::steady_clock::now();
    return snap;
}

PeriodicSnapshotter::PeriodicSnapshotter(const netsim::Network& net,
                                         std::chrono::milliseconds interval, Sink sink)
    : net_(net), interval_(interval), sink_(std::move(sink)) {
    worker_ = std::jthread([this](std::stop_token token) { run(token); });
}

PeriodicSnapshotter::~PeriodicSnapshotter() { stop(); }

void PeriodicSnapshotter::stop() {
    if (worker_.joinable()) {
        worker_.request_stop();
        cv_.notify_all();
        worker_.join();
    }
}

std::shared_ptr<const Snapshot> PeriodicSnapshotter::latest() const {
    std::lock_guard lock(mutex_);
    return latest_;
}

void PeriodicSnapshotter::run(std::stop_token token) {
    std::unique_lock lock(mutex_);
    while (true) {
        cv_.wait_for(lock, token, interval_, [] { return false; });
        if (token.stop_requested()) break;
        lock.unlock();
        auto snap = std::make_shared<const Snapshot>(snapshot(net_));
        lock.lock();
        latest_ = snap;
        lock.unlock();
        if (sink_) sink_(snap);
        lock.lock();
    }
}

} // namespace seanet::kg
