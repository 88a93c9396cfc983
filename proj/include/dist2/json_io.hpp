#pragma once

// Versioned JSON documents for graphs, colorings, discharge reports and
// reduction traces. Every document carries "schema" and "version".

#include "coloring.hpp"
#include "discharging.hpp"
#include "graph.hpp"
#include "reduction.hpp"

#include <nlohmann/json.hpp>

namespace dist2 {

using nlohmann::json;

inline constexpr int json_version = 1;
inline constexpr std::string_view graph_schema = "dist2/graph";
inline constexpr std::string_view coloring_schema = "dist2/coloring";
inline constexpr std::string_view discharge_schema = "dist2/discharge";
inline constexpr std::string_view trace_schema = "dist2/trace";

struct TraceDocument {
    int palette = default_palette;
    bool fallback = false;
    std::vector<TraceStep> steps;

    bool operator==(const TraceDocument&) const = default;
};

namespace detail {

// Read-side view that remembers its JSON pointer for error messages.
class JsonField {
public:
    JsonField(const json& j, std::string ptr = "")
        : j_(&j)
        , ptr_(std::move(ptr))
    {
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw Error(Errc::SchemaMismatch, (ptr_.empty() ? "/" : ptr_) + ": " + what);
    }

    JsonField operator[](std::string_view key) const
    {
        if (!j_->is_object())
            fail("expected object");
        auto it = j_->find(key);
        std::string p = ptr_ + "/";
        for (char c : key)
            p += c == '~' ? "~0" : c == '/' ? "~1" : std::string(1, c);
        if (it == j_->end())
            throw Error(Errc::SchemaMismatch, p + ": missing");
        return {*it, p};
    }

    bool has(std::string_view key) const { return j_->is_object() && j_->contains(key); }

    JsonField operator[](std::size_t i) const { return {array().at(i), ptr_ + "/" + std::to_string(i)}; }

    const json& array() const
    {
        if (!j_->is_array())
            fail("expected array");
        return *j_;
    }

    std::size_t size() const { return array().size(); }

    std::int64_t integer() const
    {
        if (!j_->is_number_integer())
            fail("expected integer");
        return j_->get<std::int64_t>();
    }

    Vertex vertex() const
    {
        auto v = integer();
        if (v < -1 || v > std::numeric_limits<Vertex>::max())
            fail("vertex id out of range");
        return static_cast<Vertex>(v);
    }

    bool boolean() const
    {
        if (!j_->is_boolean())
            fail("expected boolean");
        return j_->get<bool>();
    }

    std::string string() const
    {
        if (!j_->is_string())
            fail("expected string");
        return j_->get<std::string>();
    }

    Charge charge() const
    {
        auto c = parse_charge(string());
        if (!c)
            fail("expected \"num/den\"");
        return *c;
    }

    Element element() const
    {
        auto e = parse_element(string());
        if (!e)
            fail("expected element like \"v3\" or \"f0\"");
        return *e;
    }

    const std::string& pointer() const { return ptr_; }

private:
    const json* j_;
    std::string ptr_;
};

inline JsonField open_document(const json& j, std::string_view schema)
{
    JsonField root(j);
    if (!j.is_object())
        root.fail("expected object");
    auto s = root["schema"].string();
    if (s != schema)
        root["schema"].fail("expected \"" + std::string(schema) + "\", got \"" + s + "\"");
    auto v = root["version"].integer();
    if (v != json_version)
        root["version"].fail("unsupported version " + std::to_string(v));
    return root;
}

inline json header(std::string_view schema)
{
    return json{{"schema", schema}, {"version", json_version}};
}

inline json charges_json(const ChargeMap& m)
{
    json v = json::array(), f = json::array();
    for (const auto& c : m.vertex)
        v.push_back(to_string(c));
    for (const auto& c : m.face)
        f.push_back(to_string(c));
    return json{{"vertices", v}, {"faces", f}};
}

inline ChargeMap charges_from(const JsonField& j)
{
    ChargeMap m;
    auto v = j["vertices"], f = j["faces"];
    for (std::size_t i = 0; i < v.size(); ++i)
        m.vertex.push_back(v[i].charge());
    for (std::size_t i = 0; i < f.size(); ++i)
        m.face.push_back(f[i].charge());
    return m;
}

inline json step_json(const TraceStep& t)
{
    json bindings = json::array();
    for (const auto& [name, v] : t.bindings)
        bindings.push_back(json::array({name, v}));
    json added = json::array();
    for (const auto& [a, b] : t.added)
        added.push_back(json::array({a, b}));
    return json{{"config", config_name(t.config)},
                {"variant", t.variant},
                {"center", t.center},
                {"bindings", bindings},
                {"deleted", t.deleted},
                {"added", added},
                {"color", t.color},
                {"forbidden", t.forbidden},
                {"bound", t.bound}};
}

inline TraceStep step_from(const JsonField& j)
{
    TraceStep t;
    auto name = j["config"].string();
    t.config = parse_config_name(name);
    if (!t.config)
        j["config"].fail("unknown configuration " + name);
    t.variant = j["variant"].string();
    t.center = j["center"].vertex();
    auto b = j["bindings"];
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i].size() != 2)
            b[i].fail("expected [name, vertex]");
        t.bindings.emplace_back(b[i][0].string(), b[i][1].vertex());
    }
    t.deleted = j["deleted"].vertex();
    auto a = j["added"];
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != 2)
            a[i].fail("expected [u, w]");
        t.added.emplace_back(a[i][0].vertex(), a[i][1].vertex());
    }
    t.color = static_cast<Color>(j["color"].integer());
    t.forbidden = static_cast<int>(j["forbidden"].integer());
    t.bound = static_cast<int>(j["bound"].integer());
    return t;
}

} // namespace detail

inline json parse_json_text(std::string_view text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::SchemaMismatch, std::string("/: not JSON: ") + e.what());
    }
}

/// "schema" of a document, or empty when there is none.
inline std::string schema_of(const json& j)
{
    if (j.is_object() && j.contains("schema") && j["schema"].is_string())
        return j["schema"].get<std::string>();
    return {};
}

// graph

inline json to_json(const EmbeddedGraph& g)
{
    json j = detail::header(graph_schema);
    j["n"] = g.vertex_count();
    j["rotation"] = g.rotations();
    if (!g.labels().empty())
        j["labels"] = g.labels();
    return j;
}

inline EmbeddedGraph graph_from_json(const json& doc)
{
    auto root = detail::open_document(doc, graph_schema);
    auto n = root["n"].integer();
    if (n < 0)
        root["n"].fail("negative vertex count");
    auto rot = root["rotation"];
    if (rot.size() != static_cast<std::size_t>(n))
        rot.fail("expected " + std::to_string(n) + " rotations");
    std::vector<std::vector<Vertex>> rotations(static_cast<std::size_t>(n));
    for (std::size_t v = 0; v < rotations.size(); ++v) {
        auto r = rot[v];
        for (std::size_t i = 0; i < r.size(); ++i)
            rotations[v].push_back(r[i].vertex());
    }
    std::vector<std::string> labels;
    if (root.has("labels")) {
        auto l = root["labels"];
        for (std::size_t i = 0; i < l.size(); ++i)
            labels.push_back(l[i].string());
    }
    return build_embedded(static_cast<std::size_t>(n), std::move(rotations), std::move(labels));
}

// coloring

inline json to_json(const Coloring& phi)
{
    json j = detail::header(coloring_schema);
    j["palette"] = phi.palette;
    j["colors"] = phi.assignment;
    return j;
}

inline Coloring coloring_from_json(const json& doc)
{
    auto root = detail::open_document(doc, coloring_schema);
    Coloring phi;
    phi.palette = static_cast<int>(root["palette"].integer());
    auto c = root["colors"];
    for (std::size_t i = 0; i < c.size(); ++i)
        phi.assignment.push_back(static_cast<Color>(c[i].integer()));
    return phi;
}

// discharge report

inline json to_json(const DischargeReport& r)
{
    json j = detail::header(discharge_schema);
    j["initial"] = detail::charges_json(r.initial);
    j["final"] = detail::charges_json(r.final_charges);
    json ledger = json::array();
    for (const auto& t : r.ledger)
        ledger.push_back({{"rule", "R" + std::to_string(t.rule)},
                          {"from", to_string(t.from)},
                          {"to", to_string(t.to)},
                          {"amount", to_string(t.amount)}});
    j["ledger"] = ledger;
    json neg = json::array();
    for (const auto& [e, c] : r.negative_elements)
        neg.push_back({{"element", to_string(e)}, {"charge", to_string(c)}});
    j["negative_elements"] = neg;
    j["conservation_ok"] = r.conservation_ok;
    j["closure_ok"] = r.closure_ok;
    json comps = json::array();
    for (const auto& c : r.components)
        comps.push_back({{"component", c.component},
                         {"has_edges", c.has_edges},
                         {"initial", to_string(c.initial)},
                         {"final", to_string(c.final_total)}});
    j["components"] = comps;
    j["match_count"] = r.match_count;
    j["matched_configs"] = r.matched_configs;
    json unexplained = json::array();
    for (Element e : r.unexplained)
        unexplained.push_back(to_string(e));
    j["unexplained"] = unexplained;
    j["contradiction_ok"] = r.contradiction_ok;
    return j;
}

inline DischargeReport discharge_from_json(const json& doc)
{
    auto root = detail::open_document(doc, discharge_schema);
    DischargeReport r;
    r.initial = detail::charges_from(root["initial"]);
    r.final_charges = detail::charges_from(root["final"]);
    auto ledger = root["ledger"];
    for (std::size_t i = 0; i < ledger.size(); ++i) {
        auto e = ledger[i];
        Transfer t;
        auto rule = e["rule"].string();
        if (rule.size() != 2 || rule[0] != 'R' || rule[1] < '1' || rule[1] > '0' + rule_count)
            e["rule"].fail("expected R1..R9");
        t.rule = rule[1] - '0';
        t.from = e["from"].element();
        t.to = e["to"].element();
        t.amount = e["amount"].charge();
        r.ledger.push_back(t);
    }
    auto neg = root["negative_elements"];
    for (std::size_t i = 0; i < neg.size(); ++i)
        r.negative_elements.emplace_back(neg[i]["element"].element(), neg[i]["charge"].charge());
    r.conservation_ok = root["conservation_ok"].boolean();
    r.closure_ok = root["closure_ok"].boolean();
    auto comps = root["components"];
    for (std::size_t i = 0; i < comps.size(); ++i) {
        ComponentTotals c;
        c.component = static_cast<int>(comps[i]["component"].integer());
        c.has_edges = comps[i]["has_edges"].boolean();
        c.initial = comps[i]["initial"].charge();
        c.final_total = comps[i]["final"].charge();
        r.components.push_back(c);
    }
    auto mc = root["match_count"].integer();
    if (mc < 0)
        root["match_count"].fail("negative count");
    r.match_count = static_cast<std::size_t>(mc);
    auto configs = root["matched_configs"];
    for (std::size_t i = 0; i < configs.size(); ++i)
        r.matched_configs.push_back(configs[i].string());
    auto un = root["unexplained"];
    for (std::size_t i = 0; i < un.size(); ++i)
        r.unexplained.push_back(un[i].element());
    r.contradiction_ok = root["contradiction_ok"].boolean();
    return r;
}

// reduction trace

inline json to_json(const TraceDocument& t)
{
    json j = detail::header(trace_schema);
    j["palette"] = t.palette;
    j["fallback"] = t.fallback;
    json steps = json::array();
    for (const auto& s : t.steps)
        steps.push_back(detail::step_json(s));
    j["steps"] = steps;
    return j;
}

inline TraceDocument trace_from_json(const json& doc)
{
    auto root = detail::open_document(doc, trace_schema);
    TraceDocument t;
    t.palette = static_cast<int>(root["palette"].integer());
    t.fallback = root["fallback"].boolean();
    auto steps = root["steps"];
    for (std::size_t i = 0; i < steps.size(); ++i)
        t.steps.push_back(detail::step_from(steps[i]));
    return t;
}

inline TraceDocument trace_document(const ReductionResult& r)
{
    return {r.coloring.palette, r.fallback, r.trace};
}

} // namespace dist2
