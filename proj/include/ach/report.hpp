#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ach/engine.hpp"
#include "ach/problem.hpp"

namespace ach {

/// Raised when --check finds an emitted unifier the oracle rejects.
struct SoundnessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunOptions {
    std::optional<unsigned> bound_override; // flag wins over the file header
    bool check = false;                     // oracle-verify every unifier
    bool minimize = false;                  // drop instances of other answers
    EngineLimits limits;
};

struct SolveReport {
    SolveStatus status = SolveStatus::NoSolution;
    unsigned bound = 10;
    std::vector<Substitution> unifiers;
    SolveStats stats;
    std::string limit_note;
};

SolveReport run_solve(const ProblemFile& file, const RunOptions& opts = {});

/// Stable JSON rendering: fixed key order, canonical unifier order. The
/// "ms" stat is wall time and is the only field that varies between runs.
std::string report_json(const SolveReport& report);
std::string report_text(const SolveReport& report);

int exit_code(SolveStatus status);

struct BenchRow {
    std::string file;
    unsigned bound = 10;
    std::string expected_status; // "yes" or "bot"
    std::optional<std::size_t> expected_count;
    std::string got_status;
    bool status_ok = false;
    std::size_t raw_count = 0;
    std::size_t min_count = 0;
    double ms = 0.0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    bool all_ok = true;
};

/// Runs every .ach file in the directory at its own declared bound and
/// compares the outcome against the file's `# expect: yes|bot [count]`
/// annotation. Wall times are informational only.
BenchReport bench_dir(const std::string& dir);

std::string bench_json(const BenchReport& report);
std::string bench_text(const BenchReport& report);

} // namespace ach
