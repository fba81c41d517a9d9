#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "seanet/rdf.hpp"

namespace seanet::ontology {

/// The fixed vocabulary the knowledge graph is written in: prefix table plus
/// the class and property constants. Immutable; share freely.
class Vocabulary {
public:
    Vocabulary();

    const std::map<std::string, std::string>& prefixes() const { return prefixes_; }

    /// Expand `prefix:local` to an IRI term. Throws UnknownPrefix.
    rdf::Term expand(std::string_view curie) const;

    // classes
    rdf::Term switch_class, host_class, access_point_class, station_class;
    rdf::Term interface_class, link_class, flow_class, action_class;
    rdf::Term output_action_class, drop_action_class, flood_action_class;

    // properties
    rdf::Term rdf_type;
    rdf::Term has_port, link_from, link_to;
    rdf::Term has_flow, has_flow_action, to_port;
    rdf::Term in_port, match_dst, match_ether_type;
    rdf::Term has_mac, has_id, port_number;
    rdf::Term flags, priority, cookie, table_id, idle_timeout, hard_timeout;
    rdf::Term geo_location, geo_long, geo_lat;

private:
    std::map<std::string, std::string> prefixes_;
};

const Vocabulary& vocab();

/// One structural rule broken by a snapshot graph.
struct Violation {
    enum class Rule {
        UntypedPortOwner,  // subject of net:hasPort lacks a node class
        MalformedLink,     // net:from/net:to arity or dangling port
        MalformedFlow,     // net:hasFlowAction arity or output without net:toPort
        MalformedLocation, // geo point without exactly one long/lat literal
    };
    Rule rule;
    rdf::Term node;
    std::string detail;
};

/// Checks the snapshot schema rules; empty result means valid.
std::vector<Violation> validate_snapshot(const rdf::Graph& g);

} // namespace seanet::ontology
