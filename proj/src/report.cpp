#include "ach/report.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ach/oracle.hpp"

namespace ach {

namespace {

const char* status_name(SolveStatus s) {
    switch (s) {
    case SolveStatus::Unifiable:
        return "unifiable";
    case SolveStatus::NoSolution:
        return "no_solution";
    case SolveStatus::ResourceLimit:
        return "resource_limit";
    }
    return "unknown";
}

} // namespace

SolveReport run_solve(const ProblemFile& file, const RunOptions& opts) {
    SolveOptions sopts;
    sopts.bound = opts.bound_override.value_or(file.bound);
    sopts.limits = opts.limits;
    SolveResult result = solve(file.equations, sopts);

    SolveReport report;
    report.status = result.status;
    report.bound = sopts.bound;
    report.stats = result.stats;
    report.limit_note = result.limit_note;
    report.unifiers = std::move(result.unifiers);

    if (opts.minimize)
        report.unifiers = minimize_unifiers(std::move(report.unifiers), file.var_set());
    if (opts.check) {
        for (const Substitution& u : report.unifiers)
            if (!verify_unifier(file.equations, u, sopts.bound))
                throw SoundnessError("internal soundness failure: emitted unifier " +
                                     to_string(u) + " does not check out");
    }
    std::sort(report.unifiers.begin(), report.unifiers.end(),
              [](const Substitution& a, const Substitution& b) {
                  return to_string(a) < to_string(b);
              });
    return report;
}

namespace {

nlohmann::ordered_json unifiers_json(const std::vector<Substitution>& unifiers) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Substitution& u : unifiers) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (const auto& [v, t] : u.bindings())
            obj[v] = to_string(t);
        arr.push_back(std::move(obj));
    }
    return arr;
}

nlohmann::ordered_json stats_json(const SolveStats& stats) {
    nlohmann::ordered_json rules = nlohmann::ordered_json::object();
    for (const auto& name : rule_names()) {
        auto it = stats.rule_counts.find(name);
        rules[name] = it == stats.rule_counts.end() ? 0 : it->second;
    }
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    out["rules"] = std::move(rules);
    out["branches"] = stats.states_processed;
    out["ms"] = static_cast<std::uint64_t>(stats.ms);
    return out;
}

} // namespace

std::string report_json(const SolveReport& report) {
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    out["status"] = status_name(report.status);
    out["bound"] = report.bound;
    out["unifiers"] = unifiers_json(report.unifiers);
    out["stats"] = stats_json(report.stats);
    if (!report.limit_note.empty())
        out["limit"] = report.limit_note;
    return out.dump(2) + "\n";
}

std::string report_text(const SolveReport& report) {
    std::ostringstream os;
    os << "status: " << status_name(report.status) << "\n";
    os << "bound: " << report.bound << "\n";
    os << "unifiers: " << report.unifiers.size() << "\n";
    for (const Substitution& u : report.unifiers)
        os << "  " << to_string(u) << "\n";
    os << "stats: branches=" << report.stats.states_processed << " ms=" << report.stats.ms;
    for (const auto& name : rule_names()) {
        auto it = report.stats.rule_counts.find(name);
        std::size_t count = it == report.stats.rule_counts.end() ? 0 : it->second;
        if (count)
            os << " " << name << "=" << count;
    }
    os << "\n";
    if (!report.limit_note.empty())
        os << "limit: " << report.limit_note << "\n";
    return os.str();
}

int exit_code(SolveStatus status) {
    switch (status) {
    case SolveStatus::Unifiable:
        return 0;
    case SolveStatus::NoSolution:
        return 1;
    case SolveStatus::ResourceLimit:
        return 2;
    }
    return 2;
}

namespace {

/// Reads the `# expect: yes|bot [count]` annotation used by the bench
/// corpus.
void read_expectation(const std::string& text, BenchRow& row) {
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        auto pos = line.find("# expect:");
        if (pos == std::string::npos)
            continue;
        std::istringstream fields(line.substr(pos + 9));
        fields >> row.expected_status;
        std::size_t count = 0;
        if (fields >> count)
            row.expected_count = count;
        return;
    }
}

} // namespace

BenchReport bench_dir(const std::string& dir) {
    BenchReport report;
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.path().extension() == ".ach")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    for (const auto& path : files) {
        std::ifstream in(path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        const std::string text = buffer.str();

        BenchRow row;
        row.file = path.filename().string();
        read_expectation(text, row);

        ProblemFile pf = parse_problem(text);
        row.bound = pf.bound;

        RunOptions raw_opts;
        SolveReport raw = run_solve(pf, raw_opts);
        row.got_status = raw.status == SolveStatus::Unifiable    ? "yes"
                         : raw.status == SolveStatus::NoSolution ? "bot"
                                                                 : "limit";
        row.raw_count = raw.unifiers.size();
        row.ms = raw.stats.ms;

        RunOptions min_opts;
        min_opts.minimize = true;
        SolveReport minimized = run_solve(pf, min_opts);
        row.min_count = minimized.unifiers.size();

        row.status_ok = !row.expected_status.empty() && row.got_status == row.expected_status;
        if (!row.status_ok)
            report.all_ok = false;
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string bench_json(const BenchReport& report) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const BenchRow& r : report.rows) {
        nlohmann::ordered_json row = nlohmann::ordered_json::object();
        row["file"] = r.file;
        row["bound"] = r.bound;
        row["expected"] = r.expected_status;
        if (r.expected_count)
            row["expected_count"] = *r.expected_count;
        row["got"] = r.got_status;
        row["status_ok"] = r.status_ok;
        row["raw_count"] = r.raw_count;
        row["min_count"] = r.min_count;
        row["ms"] = static_cast<std::uint64_t>(r.ms);
        rows.push_back(std::move(row));
    }
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    out["rows"] = std::move(rows);
    out["all_ok"] = report.all_ok;
    return out.dump(2) + "\n";
}

std::string bench_text(const BenchReport& report) {
    std::ostringstream os;
    std::size_t ok = 0;
    for (const BenchRow& r : report.rows) {
        os << r.file << "  bound=" << r.bound << "  expect=" << r.expected_status
           << "  got=" << r.got_status << (r.status_ok ? "  ok" : "  MISMATCH")
           << "  raw=" << r.raw_count << "  min=" << r.min_count;
        if (r.expected_count)
            os << "  paper=" << *r.expected_count;
        os << "  ms=" << r.ms << "\n";
        ok += r.status_ok;
    }
    os << "summary: " << ok << "/" << report.rows.size() << " status matches\n";
    return os.str();
}

} // namespace ach
