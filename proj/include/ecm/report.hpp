#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ecm::report {

struct CheckLine {
    std::string name;
    double computed = 0;
    std::optional<double> expected;
    std::optional<double> tolerance;
    bool pass = true;
    bool hard = true;  // statistical comparisons set hard = false
    std::string note;
};

struct Report {
    std::map<std::string, std::string> header;  // config echo, insertion order kept
    std::vector<std::pair<std::string, std::string>> header_ordered;
    std::vector<CheckLine> results;

    void set(const std::string& key, const std::string& value);
    void add(CheckLine line);
    // pass/fail over hard checks only
    bool all_passed() const;
    std::string to_json() const;
    std::string to_csv() const;  // RFC 4180
    void write(const std::string& path, const std::string& format) const;
    void print_lines() const;
};

std::string format_double(double v);

}  // namespace ecm::report
