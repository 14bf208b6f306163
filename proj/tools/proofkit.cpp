#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "proofkit/cli.hpp"

namespace fs = std::filesystem;
using namespace proofkit;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// One binding per line; blank lines and # comments are skipped.
std::vector<std::string> read_bindings(const fs::path& p) {
    std::vector<std::string> out;
    std::istringstream in(slurp(p));
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back(line);
    }
    return out;
}

std::optional<Position> parse_position(const std::string& s) {
    Position p;
    std::string digits;
    for (char ch : s + ",") {
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            digits += ch;
        } else if (ch == ',' || ch == ']') {
            if (!digits.empty()) p.push_back(std::stoi(digits));
            digits.clear();
        } else if (ch != '[' && ch != ' ') {
            return std::nullopt;
        }
    }
    return p;
}

struct Options {
    Job job;
    std::string sys;
    std::string envFile;
    std::string position;
    std::string format = "text";
    bool verify = false;
};

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("input", o.job.input, "term, or a file holding one")->required();
    sub->add_option("--sys", o.sys, "ipc, f or fat")->check(CLI::IsMember({"ipc", "f", "fat"}));
    sub->add_option("--env", o.job.env, "binding x:A (repeatable)")->allow_extra_args(false);
    sub->add_option("--env-file", o.envFile, "file with one binding per line");
    sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_flag("--verify", o.verify, "replay the emitted document before printing it");
}

int emit(const JobResult& r, const Options& o) {
    int code = r.exitCode;
    if (o.verify && code != kInvariant) {
        std::string problem = verify_document(r.doc);
        if (!problem.empty()) {
            std::cerr << "verify: " << problem << "\n";
            code = kInvariant;
        }
    }
    if (o.format == "json") {
        std::cout << r.doc.dump(2) << "\n";
    } else if (r.exitCode == kOk) {
        std::cout << r.text << "\n";
    } else {
        std::cerr << "error: " << r.text << "\n";
    }
    return code;
}

int verify_file(const std::string& path) {
    Json doc;
    try {
        doc = Json::parse(slurp(path));
    } catch (const Json::exception& e) {
        std::cerr << "verify: " << path << ": " << e.what() << "\n";
        return kParseError;
    }
    std::string problem = verify_document(doc);
    if (!problem.empty()) {
        std::cerr << "verify: " << path << ": " << problem << "\n";
        return kInvariant;
    }
    std::cout << "verified " << path << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Proof-term rewriting, translations and simulation checks"};
    std::string verifyPath;
    app.add_option("--verify", verifyPath, "re-verify a structured document");
    app.require_subcommand(0, 1);

    Options o;
    auto* check = app.add_subcommand("check", "infer the type of a term");
    auto* reduce = app.add_subcommand("reduce", "normalize with a rule set and strategy");
    auto* translate = app.add_subcommand("translate", "translate an IPC term into F (rp) or Fat (at)");
    auto* nf = app.add_subcommand("nf", "atomic normal form");
    auto* weight = app.add_subcommand("weight", "termination measure");
    auto* simulate = app.add_subcommand("simulate", "F-side image of one IPC step");
    auto* diagram = app.add_subcommand("diagram", "comparison diagram for one IPC step");
    for (auto* sub : {check, reduce, translate, nf, weight, simulate, diagram}) add_common(sub, o);

    for (auto* sub : {reduce, nf}) {
        sub->add_option("--strategy", o.job.strategy, "lo, li or random")
            ->check(CLI::IsMember({"lo", "li", "random"}));
        sub->add_option("--seed", o.job.seed, "seed for the random strategy");
        sub->add_option("--max-steps", o.job.maxSteps, "step cap");
    }
    reduce->add_option("--rules", o.job.rules, "rule names (default: all rules of the system)")
        ->delimiter(',')
        ->allow_extra_args(false);
    reduce->add_flag("!--no-require-fine", o.job.requireFine, "allow steps that are not fine");
    for (auto* sub : {simulate, diagram}) {
        sub->add_option("--rule", o.job.rule, "IPC rule of the step")->required();
        sub->add_option("--position", o.position, "position of the redex, e.g. [0,1]");
    }
    translate->add_option("--target", o.job.target, "rp or at")->check(CLI::IsMember({"rp", "at"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kParseError;
    }

    if (!verifyPath.empty()) return verify_file(verifyPath);
    if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return kParseError;
    }
    o.job.command = app.get_subcommands().front()->get_name();

    if (!o.sys.empty()) o.job.system = system_from_name(o.sys);
    if (!o.position.empty()) {
        o.job.position = parse_position(o.position);
        if (!o.job.position) {
            std::cerr << "error: bad position " << o.position << "\n";
            return kParseError;
        }
    }
    std::error_code ec;
    if (fs::is_regular_file(o.job.input, ec)) {
        fs::path file = o.job.input;
        o.job.inputName = file.filename().string();
        o.job.input = slurp(file);
        fs::path sidecar = file;
        sidecar += ".env";
        if (fs::is_regular_file(sidecar, ec)) {
            auto more = read_bindings(sidecar);
            o.job.env.insert(o.job.env.begin(), more.begin(), more.end());
        }
    }
    if (!o.envFile.empty()) {
        if (!fs::is_regular_file(o.envFile, ec)) {
            std::cerr << "error: no environment file " << o.envFile << "\n";
            return kParseError;
        }
        auto more = read_bindings(o.envFile);
        o.job.env.insert(o.job.env.end(), more.begin(), more.end());
    }
    return emit(run_job(o.job), o);
}
