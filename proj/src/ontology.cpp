#include "seanet/ontology.hpp"

#include <set>

#include "seanet/errors.hpp"

namespace seanet::ontology {

namespace {
constexpr const char* kToco = "http://purl.org/toco/";
constexpr const char* kGeo = "http://www.w3.org/2003/01/geo/wgs84_pos#";
constexpr const char* kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
constexpr const char* kExample = "http://example.org/";

rdf::Term toco(const char* local) { return rdf::Term::iri(std::string(kToco) + local); }
rdf::Term geo(const char* local) { return rdf::Term::iri(std::string(kGeo) + local); }
} // namespace

Vocabulary::Vocabulary()
    : switch_class(toco("Switch")),
      host_class(toco("Host")),
      access_point_class(toco("AccessPoint")),
      station_class(toco("Station")),
      interface_class(toco("Interface")),
      link_class(toco("Link")),
      flow_class(toco("Flow")),
      action_class(toco("Action")),
      output_action_class(toco("OutputAction")),
      drop_action_class(toco("DropAction")),
      flood_action_class(toco("FloodAction")),
      rdf_type(rdf::Term::iri(std::string(kRdf) + "type")),
      has_port(toco("hasPort")),
      link_from(toco("from")),
      link_to(toco("to")),
      has_flow(toco("hasFlow")),
      has_flow_action(toco("hasFlowAction")),
      to_port(toco("toPort")),
      in_port(toco("inPort")),
      match_dst(toco("matchDst")),
      match_ether_type(toco("matchEtherType")),
      has_mac(toco("hasMAC")),
      has_id(toco("hasID")),
      port_number(toco("portNumber")),
      flags(toco("flags")),
      priority(toco("priority")),
      cookie(toco("cookie")),
      table_id(toco("tableId")),
      idle_timeout(toco("idleTimeout")),
      hard_timeout(toco("hardTimeout")),
      geo_location(geo("location")),
      geo_long(geo("long")),
      geo_lat(geo("lat")) {
    prefixes_ = {
        {"net", kToco},
        {"geo", kGeo},
        {"rdf", kRdf},
        {"ex", kExample},
    };
}

rdf::Term Vocabulary::expand(std::string_view curie) const {
    auto colon = curie.find(':');
    if (colon == std::string_view::npos)
        throw UnknownPrefix(std::string(curie));
    std::string prefix(curie.substr(0, colon));
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) throw UnknownPrefix(prefix);
    return rdf::Term::iri(it->second + std::string(curie.substr(colon + 1)));
}

const Vocabulary& vocab() {
    static const Vocabulary v;
    return v;
}

namespace {

std::vector<rdf::Term> objects_of(const rdf::Graph& g, const rdf::Term& s, const rdf::Term& p) {
    std::vector<rdf::Term> out;
    for (const auto& t : g.match(s, p, std::nullopt)) out.push_back(t.object);
    return out;
}

} // namespace

std::vector<Violation> validate_snapshot(const rdf::Graph& g) {
    const Vocabulary& v = vocab();
    std::vector<Violation> violations;
    auto flag = [&](Violation::Rule rule, const rdf::Term& node, std::string detail) {
        violations.push_back(Violation{rule, node, std::move(detail)});
    };

    const std::set<rdf::Term> node_classes = {v.switch_class, v.host_class,
                                              v.access_point_class, v.station_class};

    // (a) every port owner is a typed node
    std::set<rdf::Term> owners;
    for (const auto& t : g.match(std::nullopt, v.has_port, std::nullopt))
        owners.insert(t.subject);
    for (const auto& owner : owners) {
        bool typed = false;
        for (const auto& cls : objects_of(g, owner, v.rdf_type))
            if (node_classes.count(cls)) typed = true;
        if (!typed)
            flag(Violation::Rule::UntypedPortOwner, owner, "net:hasPort subject has no node class");
    }

    // (b) links: exactly one from/to, each attached to an owned port
    std::set<rdf::Term> links;
    for (const auto& t : g.match(std::nullopt, v.link_from, std::nullopt)) links.insert(t.subject);
    for (const auto& t : g.match(std::nullopt, v.link_to, std::nullopt)) links.insert(t.subject);
    for (const auto& link : links) {
        for (const auto& prop : {v.link_from, v.link_to}) {
            auto ends = objects_of(g, link, prop);
            if (ends.size() != 1) {
                flag(Violation::Rule::MalformedLink, link,
                     "expected exactly one endpoint, found " + std::to_string(ends.size()));
                continue;
            }
            if (g.match(std::nullopt, v.has_port, ends[0]).empty())
                flag(Violation::Rule::MalformedLink, link,
                     "endpoint port " + ends[0].ntriples() + " is not owned by any node");
        }
    }

    // (c) flows: one action; output actions name exactly one target port
    for (const auto& t : g.match(std::nullopt, v.rdf_type, v.flow_class)) {
        auto actions = objects_of(g, t.subject, v.has_flow_action);
        if (actions.size() != 1) {
            flag(Violation::Rule::MalformedFlow, t.subject,
                 "expected exactly one net:hasFlowAction, found " +
                     std::to_string(actions.size()));
            continue;
        }
        if (!g.match(actions[0], v.rdf_type, v.output_action_class).empty()) {
            auto targets = objects_of(g, actions[0], v.to_port);
            if (targets.size() != 1)
                flag(Violation::Rule::MalformedFlow, t.subject,
                     "output action needs exactly one net:toPort, found " +
                         std::to_string(targets.size()));
        }
    }

    // (d) geo points: exactly one long and one lat literal
    std::set<rdf::Term> points;
    for (const auto& t : g.match(std::nullopt, v.geo_location, std::nullopt))
        points.insert(t.object);
    for (const auto& point : points) {
        if (!point.is_iri()) {
            flag(Violation::Rule::MalformedLocation, point, "geo:location object is not an IRI");
            continue;
        }
        for (const auto& prop : {v.geo_long, v.geo_lat}) {
            std::size_t literal_count = 0;
            for (const auto& o : objects_of(g, point, prop))
                if (o.is_literal()) ++literal_count;
            if (literal_count != 1)
                flag(Violation::Rule::MalformedLocation, point,
                     "expected exactly one literal for " + prop.ntriples() + ", found " +
                         std::to_string(literal_count));
        }
    }

    return violations;
}

} // namespace seanet::ontology
