#include "ecm/report.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "ecm/arith.hpp"

namespace ecm::report {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void Report::set(const std::string& key, const std::string& value) {
    header[key] = value;
    header_ordered.emplace_back(key, value);
}

void Report::add(CheckLine line) { results.push_back(std::move(line)); }

bool Report::all_passed() const {
    for (const auto& r : results)
        if (r.hard && !r.pass) return false;
    return true;
}

std::string Report::to_json() const {
    nlohmann::ordered_json j;
    for (const auto& [k, v] : header_ordered) j["header"][k] = v;
    j["results"] = nlohmann::ordered_json::array();
    for (const auto& r : results) {
        nlohmann::ordered_json e;
        e["name"] = r.name;
        e["computed"] = format_double(r.computed);
        if (r.expected) e["expected"] = format_double(*r.expected);
        if (r.tolerance) e["tolerance"] = format_double(*r.tolerance);
        e["pass"] = r.pass;
        if (!r.hard) e["statistical"] = true;
        if (!r.note.empty()) e["note"] = r.note;
        j["results"].push_back(e);
    }
    return j.dump(2) + "\n";
}

namespace {

std::string csv_quote(const std::string& s) {
    bool need = s.find_first_of(",\"\r\n") != std::string::npos;
    if (!need) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string Report::to_csv() const {
    std::string out;
    for (const auto& [k, v] : header_ordered)
        out += "# " + csv_quote(k) + "," + csv_quote(v) + "\r\n";
    out += "name,computed,expected,tolerance,pass,note\r\n";
    for (const auto& r : results) {
        out += csv_quote(r.name) + "," + format_double(r.computed) + ",";
        out += (r.expected ? format_double(*r.expected) : "") + std::string(",");
        out += (r.tolerance ? format_double(*r.tolerance) : "") + std::string(",");
        out += (r.pass ? "true" : "false");
        out += "," + csv_quote(r.note) + "\r\n";
    }
    return out;
}

void Report::write(const std::string& path, const std::string& format) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open output file: " + path);
    f << (format == "csv" ? to_csv() : to_json());
}

void Report::print_lines() const {
    for (const auto& r : results) {
        std::cout << (r.pass ? "PASS " : (r.hard ? "FAIL " : "WARN ")) << r.name
                  << "  computed=" << format_double(r.computed);
        if (r.expected) std::cout << "  expected=" << format_double(*r.expected);
        if (r.tolerance) std::cout << "  tol=" << format_double(*r.tolerance);
        if (!r.note.empty()) std::cout << "  (" << r.note << ")";
        std::cout << "\n";
    }
}

}  // namespace ecm::report
