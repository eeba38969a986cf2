#pragma once

#include <optional>
#include <string>
#include <vector>

namespace tfr {

struct CommandOptions {
    std::string command;  // validate, classify, centers, residues, chain, generate
    std::string path;
    /// document text; read from path when absent
    std::optional<std::string> input;
    long r = 2;
    long nmax = 12;
    std::optional<long> box;
    std::optional<std::string> center;
    std::optional<unsigned long> characteristic;
    std::string kind;  // generate only
    std::vector<std::string> params;
};

struct CommandResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

/// 0 ok, 2 parse/validation, 3 precondition, 4 internal
int exit_code_for(const std::string& error_code);

CommandResult run_command(const CommandOptions& opt);

}  // namespace tfr
