#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "proofkit/trace_io.hpp"

namespace proofkit {

enum ExitCode { kOk = 0, kTypeError = 1, kParseError = 2, kStepCap = 3, kInvariant = 4 };

struct Job {
    std::string command;  // check reduce translate nf weight simulate diagram
    std::string input;    // term text
    std::string inputName;
    std::optional<SystemId> system;  // command default when empty
    std::vector<std::string> env;    // "x : A" bindings
    std::vector<std::string> rules;  // empty: every rule of the system
    std::string strategy = "lo";     // lo li random
    std::uint64_t seed = 0;
    std::size_t maxSteps = 10000;
    bool requireFine = true;
    std::string rule;                   // simulate, diagram
    std::optional<Position> position;   // simulate, diagram
    std::string target = "rp";          // translate
};

struct JobResult {
    int exitCode = kOk;
    Json doc;
    std::string text;
};

SystemId default_system(const std::string& command);
std::optional<SystemId> system_from_name(const std::string& name);
int exit_code_for(ErrorKind k);

// Never throws for user errors; they become a document with an "error"
// field and the matching exit code.
JobResult run_job(const Job& job);

Json job_to_json(const Job& job);
Job job_from_json(const Json& j);

// Replays every trace in the document and reruns the recorded job,
// requiring a byte-identical document. Returns an empty string on success,
// otherwise the first discrepancy.
std::string verify_document(const Json& doc);

}  // namespace proofkit
