#pragma once

#include "json.hpp"

#include <chrono>
#include <string>
#include <vector>

namespace cdsw {

enum class Status { Pass, Fail, SkippedResource };

std::string status_name(Status s);

/// Outcome of one check. Field order in every output format is fixed.
struct Report {
    std::string check;
    std::string type;
    int rank = 0;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    Status status = Status::Pass;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();
    double wall_time = 0;
};

enum class Format { Json, Csv, Markdown };

Format parse_format(const std::string& s);

nlohmann::ordered_json to_json(const Report& r, bool with_time = true);
std::string render(const std::vector<Report>& reports, Format f);

/// 0 when no report failed, 1 otherwise. Skipped checks do not fail.
int exit_code(const std::vector<Report>& reports);

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

} // namespace cdsw
