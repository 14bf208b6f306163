#include "proofkit/cli.hpp"

#include <sstream>

#include "proofkit/syntax.hpp"

namespace proofkit {

SystemId default_system(const std::string& command) {
    if (command == "translate" || command == "simulate" || command == "diagram") return SystemId::IPC;
    return SystemId::F;
}

std::optional<SystemId> system_from_name(const std::string& name) {
    for (SystemId s : {SystemId::IPC, SystemId::F, SystemId::FAT})
        if (name == system_name(s)) return s;
    return std::nullopt;
}

int exit_code_for(ErrorKind k) {
    switch (k) {
    case ErrorKind::ParseError: return kParseError;
    case ErrorKind::StepLimitExceeded: return kStepCap;
    case ErrorKind::InvariantViolation: return kInvariant;
    default: return kTypeError;
    }
}

Json job_to_json(const Job& job) {
    Json j;
    j["command"] = job.command;
    j["input"] = job.input;
    j["inputName"] = job.inputName;
    j["system"] = job.system ? Json(system_name(*job.system)) : Json(nullptr);
    j["env"] = job.env;
    j["rules"] = job.rules;
    j["strategy"] = job.strategy;
    j["seed"] = job.seed;
    j["maxSteps"] = job.maxSteps;
    j["requireFine"] = job.requireFine;
    j["rule"] = job.rule;
    j["position"] = job.position ? position_to_json(*job.position) : Json(nullptr);
    j["target"] = job.target;
    return j;
}

Job job_from_json(const Json& j) {
    Job job;
    try {
        job.command = j.at("command").get<std::string>();
        job.input = j.at("input").get<std::string>();
        job.inputName = j.at("inputName").get<std::string>();
        if (!j.at("system").is_null()) {
            auto s = system_from_name(j.at("system").get<std::string>());
            if (!s) throw Error(ErrorKind::ParseError, "unknown system in job");
            job.system = s;
        }
        job.env = j.at("env").get<std::vector<std::string>>();
        job.rules = j.at("rules").get<std::vector<std::string>>();
        job.strategy = j.at("strategy").get<std::string>();
        job.seed = j.at("seed").get<std::uint64_t>();
        job.maxSteps = j.at("maxSteps").get<std::size_t>();
        job.requireFine = j.at("requireFine").get<bool>();
        job.rule = j.at("rule").get<std::string>();
        if (!j.at("position").is_null()) job.position = position_from_json(j.at("position"));
        job.target = j.at("target").get<std::string>();
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("malformed job record: ") + e.what());
    }
    return job;
}

namespace {

[[noreturn]] void usage(const std::string& msg) { throw Error(ErrorKind::ParseError, msg); }

RuleId rule_named(const std::string& name) {
    auto r = rule_from_name(name);
    if (!r) usage("unknown rule " + name);
    return *r;
}

Strategy strategy_of(const Job& job) {
    if (job.strategy == "lo") return Strategy::lo();
    if (job.strategy == "li") return Strategy::li();
    if (job.strategy == "random") return Strategy::random(job.seed);
    usage("unknown strategy " + job.strategy);
}

void put_trace(Json& doc, std::string& text, const ReductionTrace& t, SystemId sys, const Environment& env) {
    Json tj = trace_to_json(t);
    doc["steps"] = tj["steps"];
    doc["result"] = tj["result"];
    doc["fine"] = tj["fine"];
    doc["initial"] = tj["initial"];
    if (t.truncated) doc["truncated"] = true;
    doc["traceSystem"] = system_name(sys);
    doc["traceEnv"] = env_to_json(env);
    std::ostringstream out;
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const TraceStep& s = t.steps[i];
        out << i << ": " << rule_name(s.rule) << " at " << position_string(s.position) << (s.fine ? "" : " (not fine)")
            << (s.administrative ? " (administrative)" : "") << " -> " << print(s.result) << "\n";
    }
    out << print(t.final_term());
    text = out.str();
}

Redex pick_redex(SystemId sys, const Environment& env, const TermPtr& m, const Job& job) {
    RuleId rule = rule_named(job.rule);
    if (job.position) return redex_at(sys, env, m, rule, *job.position);
    auto rs = find_redexes(sys, env, m, {rule});
    if (rs.empty()) throw Error(ErrorKind::NotARedex, std::string("no ") + job.rule + " redex in the input");
    return rs.front();
}

void dispatch(const Job& job, SystemId sys, const Environment& env, const TermPtr& m, JobResult& out) {
    Json& doc = out.doc;
    const std::string& cmd = job.command;
    if (cmd == "check") {
        FormulaPtr a = typecheck(sys, env, m);
        doc["steps"] = Json::array();
        doc["result"] = print(a);
        doc["fine"] = true;
        out.text = print(a);
    } else if (cmd == "reduce") {
        std::vector<RuleId> rules;
        for (const auto& n : job.rules) {
            RuleId r = rule_named(n);
            if (!rule_valid_in(r, sys))
                throw Error(ErrorKind::RuleNotApplicable, n + " is not a rule of " + system_name(sys));
            rules.push_back(r);
        }
        if (rules.empty()) rules = rules_of(sys);
        typecheck(sys, env, m);
        try {
            ReductionTrace t = normalize(sys, env, m, rules, strategy_of(job), job.maxSteps, job.requireFine);
            put_trace(doc, out.text, t, sys, env);
        } catch (const StepLimitExceeded& e) {
            put_trace(doc, out.text, e.partial(), sys, env);
            throw;
        }
    } else if (cmd == "translate") {
        if (job.target != "rp" && job.target != "at") usage("unknown target " + job.target);
        TermPtr t = job.target == "rp" ? rp_term(m) : at_term(m);
        doc["steps"] = Json::array();
        doc["result"] = print(t);
        doc["fine"] = true;
        doc["targetEnv"] = env_to_json(rp_env(env));
        out.text = print(t);
    } else if (cmd == "nf") {
        AtomicNormalForm nf = atomic_nf(env, m, strategy_of(job), job.maxSteps);
        put_trace(doc, out.text, nf.trace, SystemId::F, env);
        Json ws = Json::array();
        for (const auto& w : nf.weights) ws.push_back(w.str());
        doc["weights"] = std::move(ws);
    } else if (cmd == "weight") {
        WeightReport w = weight(env, m);
        doc["steps"] = Json::array();
        doc["result"] = w.total.str();
        doc["fine"] = true;
        doc["weight"] = weight_to_json(w);
        std::ostringstream text;
        for (const auto& p : w.perPreRedex)
            text << position_string(p.position) << ": " << p.contribution.str() << "\n";
        text << w.total.str();
        out.text = text.str();
    } else if (cmd == "simulate") {
        Redex r = pick_redex(SystemId::IPC, env, m, job);
        ReductionTrace t = simulate_step(env, m, r);
        doc["redex"] = {{"rule", rule_name(r.rule)}, {"position", position_to_json(r.position)}};
        put_trace(doc, out.text, t, SystemId::F, rp_env(env));
    } else if (cmd == "diagram") {
        Redex r = pick_redex(SystemId::IPC, env, m, job);
        Diagram d = build_diagram(env, m, r);
        doc["redex"] = {{"rule", rule_name(r.rule)}, {"position", position_to_json(r.position)}};
        put_trace(doc, out.text, d.mRpToNRp, SystemId::F, d.rpEnv);
        doc["diagram"] = diagram_to_json(d);
        std::ostringstream text;
        for (const char* c : {"mRp", "nRp", "mAt", "nAt", "q1", "q2"})
            text << c << " = " << doc["diagram"]["corners"][c].get<std::string>() << "\n";
        for (const auto& [name, leg] : doc["diagram"]["legs"].items())
            text << name << ": " << leg["steps"].size() << " steps\n";
        text << "verified";
        out.text = text.str();
    } else {
        usage("unknown command " + cmd);
    }
}

}  // namespace

JobResult run_job(const Job& job) {
    JobResult out;
    Json& doc = out.doc;
    doc["command"] = job.command;
    doc["input"] = job.input;
    try {
        SystemId sys = job.system.value_or(default_system(job.command));
        doc["system"] = system_name(sys);
        Environment env;
        for (const auto& b : job.env) {
            auto [x, a] = parse_binding(b);
            env.insert(x, a);
        }
        doc["env"] = env_to_json(env);
        TermPtr m = parse_term(job.input);
        dispatch(job, sys, env, m, out);
    } catch (const Error& e) {
        Json err;
        err["kind"] = error_kind_name(e.kind());
        err["message"] = e.what();
        err["position"] = position_to_json(e.position());
        doc["error"] = std::move(err);
        out.exitCode = exit_code_for(e.kind());
        out.text = out.text.empty() ? std::string(e.what()) : out.text + "\n" + e.what();
    }
    doc["job"] = job_to_json(job);
    return out;
}

std::string verify_document(const Json& doc) {
    try {
        if (doc.contains("steps") && doc.contains("initial") && doc.contains("traceSystem")) {
            auto sys = system_from_name(doc.at("traceSystem").get<std::string>());
            if (!sys) return "unknown trace system";
            ReductionTrace t = trace_from_json(doc);
            verify_trace(*sys, env_from_json(doc.at("traceEnv")), t);
            if (print(t.final_term()) != doc.at("result").get<std::string>())
                return "recorded result differs from the last step";
        }
        if (doc.contains("diagram")) verify_diagram(diagram_from_json(doc.at("diagram")));
        if (!doc.contains("job")) return "document has no job record";
        JobResult again = run_job(job_from_json(doc.at("job")));
        if (again.doc.dump() != doc.dump()) return "rerunning the job gives a different document";
    } catch (const Error& e) {
        return e.what();
    } catch (const Json::exception& e) {
        return std::string("malformed document: ") + e.what();
    }
    return "";
}

}  // namespace proofkit
