#include "proofkit/trace_io.hpp"

#include "proofkit/syntax.hpp"

namespace proofkit {

namespace {

[[noreturn]] void malformed(const std::string& what) {
    throw Error(ErrorKind::ParseError, "malformed trace document: " + what);
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field ") + key);
    return j.at(key);
}

std::string text(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_string()) malformed(std::string(key) + " is not a string");
    return v.get<std::string>();
}

RuleId rule_of(const std::string& name) {
    auto r = rule_from_name(name);
    if (!r) malformed("unknown rule " + name);
    return *r;
}

}  // namespace

Json env_to_json(const Environment& env) {
    Json out = Json::array();
    for (const auto& [x, a] : env.entries()) out.push_back(Json::array({x, print(a)}));
    return out;
}

Environment env_from_json(const Json& j) {
    if (!j.is_array()) malformed("environment is not a list");
    Environment env;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
            malformed("environment entry is not a [name, formula] pair");
        env.insert(e[0].get<std::string>(), parse_formula(e[1].get<std::string>()));
    }
    return env;
}

Json position_to_json(const Position& p) { return Json(p); }

Position position_from_json(const Json& j) {
    if (!j.is_array()) malformed("position is not a list");
    Position p;
    for (const auto& i : j) {
        if (!i.is_number_integer()) malformed("position entry is not an integer");
        p.push_back(i.get<int>());
    }
    return p;
}

Json trace_to_json(const ReductionTrace& t) {
    Json steps = Json::array();
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const TraceStep& s = t.steps[i];
        Json step;
        step["index"] = i;
        step["rule"] = rule_name(s.rule);
        step["position"] = position_to_json(s.position);
        step["env"] = env_to_json(s.localEnv);
        step["term"] = print(s.result);
        step["fine"] = s.fine;
        if (s.administrative) step["administrative"] = true;
        steps.push_back(std::move(step));
    }
    Json out;
    out["initial"] = print(t.initial);
    out["steps"] = std::move(steps);
    out["result"] = print(t.final_term());
    out["fine"] = t.all_fine();
    if (t.truncated) out["truncated"] = true;
    return out;
}

ReductionTrace trace_from_json(const Json& j) {
    ReductionTrace t;
    t.initial = parse_term(text(j, "initial"));
    const Json& steps = field(j, "steps");
    if (!steps.is_array()) malformed("steps is not a list");
    for (const auto& s : steps) {
        TraceStep step{rule_of(text(s, "rule")), position_from_json(field(s, "position")),
                       env_from_json(field(s, "env")), parse_term(text(s, "term")), true, false};
        if (s.contains("fine")) step.fine = s.at("fine").get<bool>();
        if (s.contains("administrative")) step.administrative = s.at("administrative").get<bool>();
        t.steps.push_back(std::move(step));
    }
    t.truncated = j.contains("truncated") && j.at("truncated").get<bool>();
    return t;
}

Json weight_to_json(const WeightReport& w) {
    Json items = Json::array();
    for (const auto& p : w.perPreRedex) {
        Json item;
        item["position"] = position_to_json(p.position);
        item["env"] = env_to_json(p.localEnv);
        item["contribution"] = p.contribution.str();
        items.push_back(std::move(item));
    }
    Json out;
    out["total"] = w.total.str();
    out["perPreRedex"] = std::move(items);
    return out;
}

namespace {

struct LegRef {
    const char* name;
    ReductionTrace Diagram::* leg;
};

const LegRef kLegs[] = {
    {"mRp->q1", &Diagram::mRpToQ1},   {"mRp->nRp", &Diagram::mRpToNRp}, {"nRp->q2", &Diagram::nRpToQ2},
    {"mAt->q1", &Diagram::mAtToQ1},   {"nAt->q2", &Diagram::nAtToQ2},   {"q1->q2", &Diagram::q1ToQ2},
    {"mRp->mAt", &Diagram::mRpToMAt}, {"nRp->nAt", &Diagram::nRpToNAt},
};

struct CornerRef {
    const char* name;
    TermPtr Diagram::* term;
};

const CornerRef kCorners[] = {
    {"mRp", &Diagram::mRp}, {"nRp", &Diagram::nRp}, {"mAt", &Diagram::mAt},
    {"nAt", &Diagram::nAt}, {"q1", &Diagram::q1},   {"q2", &Diagram::q2},
};

}  // namespace

Json diagram_to_json(const Diagram& d) {
    Json out;
    out["rule"] = rule_name(d.rule);
    out["position"] = position_to_json(d.position);
    out["source"] = print(d.source);
    out["target"] = print(d.target);
    out["env"] = env_to_json(d.env);
    out["rpEnv"] = env_to_json(d.rpEnv);
    out["simple"] = d.simple;
    Json corners;
    for (const auto& c : kCorners) corners[c.name] = print(d.*(c.term));
    out["corners"] = std::move(corners);
    Json legs;
    for (const auto& l : kLegs) legs[l.name] = trace_to_json(d.*(l.leg));
    out["legs"] = std::move(legs);
    return out;
}

Diagram diagram_from_json(const Json& j) {
    Diagram d;
    d.rule = rule_of(text(j, "rule"));
    d.position = position_from_json(field(j, "position"));
    d.source = parse_term(text(j, "source"));
    d.target = parse_term(text(j, "target"));
    d.env = env_from_json(field(j, "env"));
    d.rpEnv = env_from_json(field(j, "rpEnv"));
    d.simple = field(j, "simple").get<bool>();
    const Json& corners = field(j, "corners");
    for (const auto& c : kCorners) d.*(c.term) = parse_term(text(corners, c.name));
    const Json& legs = field(j, "legs");
    for (const auto& l : kLegs) d.*(l.leg) = trace_from_json(field(legs, l.name));
    return d;
}

}  // namespace proofkit
