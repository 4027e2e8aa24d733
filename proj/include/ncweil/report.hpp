#pragma once
// Check records and reports. Reports are deterministic given (input, flags):
// records sort by check name and JSON output carries no timing, so byte
// identity across runs holds; wall-clock timing appears in the text format
// only.

#include <chrono>
#include <sstream>

#include "doc.hpp"

namespace ncweil {

enum class CheckStatus { pass, fail, skipped };

struct CheckRecord {
    std::string name;
    CheckStatus status = CheckStatus::skipped;
    json witness;  // exact strings / bases / scalars sufficient to re-verify

    static CheckRecord passed(std::string n, json w = json::object()) {
        return {std::move(n), CheckStatus::pass, std::move(w)};
    }
    static CheckRecord failed(std::string n, json w = json::object()) {
        return {std::move(n), CheckStatus::fail, std::move(w)};
    }
    static CheckRecord skip(std::string n, json w = json::object()) {
        return {std::move(n), CheckStatus::skipped, std::move(w)};
    }
};

inline const char* status_str(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        default: return "skipped";
    }
}

struct Report {
    std::string command;
    json settings = json::object();
    std::vector<CheckRecord> checks;
    double elapsed_ms = 0;  // text output only

    void add(CheckRecord r) { checks.push_back(std::move(r)); }
    void add_all(std::vector<CheckRecord> rs) {
        for (auto& r : rs) checks.push_back(std::move(r));
    }

    bool all_pass() const {
        for (const auto& c : checks)
            if (c.status == CheckStatus::fail) return false;
        return true;
    }

    void sort() {
        std::sort(checks.begin(), checks.end(),
                  [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
    }

    json to_json() const {
        json j;
        j["command"] = command;
        j["settings"] = settings;
        json cs = json::array();
        for (const auto& c : checks) {
            json cj;
            cj["name"] = c.name;
            cj["status"] = status_str(c.status);
            if (!c.witness.empty()) cj["witness"] = c.witness;
            cs.push_back(std::move(cj));
        }
        j["checks"] = std::move(cs);
        return j;
    }

    std::string to_text() const {
        std::ostringstream os;
        os << "# " << command << "\n";
        if (!settings.empty()) os << "settings: " << settings.dump() << "\n";
        for (const auto& c : checks) {
            os << "[" << status_str(c.status) << "] " << c.name << "\n";
            if (!c.witness.empty())
                for (const auto& [k, v] : c.witness.items())
                    os << "        " << k << ": "
                       << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        }
        int np = 0, nf = 0, ns = 0;
        for (const auto& c : checks) {
            if (c.status == CheckStatus::pass) ++np;
            else if (c.status == CheckStatus::fail) ++nf;
            else ++ns;
        }
        os << np << " passed, " << nf << " failed, " << ns << " skipped";
        os << "  (" << elapsed_ms << " ms)\n";
        return os.str();
    }
};

class Stopwatch {
  public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                         start_)
            .count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace ncweil
