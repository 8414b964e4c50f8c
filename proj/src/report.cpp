#include "cdsw/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace cdsw {

std::string status_name(Status s)
{
    switch (s) {
    case Status::Pass:
        return "pass";
    case Status::Fail:
        return "fail";
    case Status::SkippedResource:
        return "skipped-resource";
    }
    return "fail";
}

Format parse_format(const std::string& s)
{
    if (s == "json")
        return Format::Json;
    if (s == "csv")
        return Format::Csv;
    if (s == "md")
        return Format::Markdown;
    throw std::invalid_argument("unknown format " + s);
}

nlohmann::ordered_json to_json(const Report& r, bool with_time)
{
    nlohmann::ordered_json j;
    j["check"] = r.check;
    j["type"] = r.type;
    j["rank"] = r.rank;
    j["params"] = r.params;
    j["status"] = status_name(r.status);
    j["details"] = r.details;
    if (with_time)
        j["wall_time"] = r.wall_time;
    return j;
}

namespace {

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::string seconds(double t)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", t);
    return buf;
}

std::string md_cell(std::string s, std::size_t limit)
{
    if (s.size() > limit)
        s = s.substr(0, limit) + "...";
    std::string out;
    for (char c : s)
        out += c == '|' ? std::string("\\|") : std::string(1, c);
    return out;
}

} // namespace

std::string render(const std::vector<Report>& reports, Format f)
{
    std::ostringstream os;
    switch (f) {
    case Format::Json: {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : reports)
            arr.push_back(to_json(r));
        os << arr.dump(2) << '\n';
        break;
    }
    case Format::Csv:
        os << "check,type,rank,params,status,details,wall_time\n";
        for (const auto& r : reports)
            os << csv_field(r.check) << ',' << csv_field(r.type) << ',' << r.rank << ',' << csv_field(r.params.dump())
               << ',' << status_name(r.status) << ',' << csv_field(r.details.dump()) << ',' << seconds(r.wall_time)
               << '\n';
        break;
    case Format::Markdown:
        os << "| check | type | status | time (s) | details |\n";
        os << "|---|---|---|---|---|\n";
        for (const auto& r : reports)
            os << "| " << r.check << " | " << r.type << " | " << status_name(r.status) << " | " << seconds(r.wall_time)
               << " | " << md_cell(r.details.dump(), 160) << " |\n";
        for (const auto& r : reports) {
            if (r.status == Status::Pass)
                continue;
            os << "\n### " << r.check << " (" << r.type << "): " << status_name(r.status) << "\n\n";
            os << "```json\n" << r.details.dump(2) << "\n```\n";
        }
        break;
    }
    return os.str();
}

int exit_code(const std::vector<Report>& reports)
{
    return std::any_of(reports.begin(), reports.end(), [](const Report& r) { return r.status == Status::Fail; }) ? 1
                                                                                                                  : 0;
}

} // namespace cdsw
