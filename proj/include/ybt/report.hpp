// Machine-readable verification reports.

#ifndef YBT_REPORT_HPP
#define YBT_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace ybt {

using Json = nlohmann::json;

enum class Status { pass, fail, skipped };

std::string to_string(Status s);

struct Check {
    std::string name;
    Json detail = Json::object();  // indices, points, prefactors ...
    Status status = Status::pass;
    /// Unasserted checks are measured and reported but never fail a report.
    bool asserted = true;
    Json witness = nullptr;

    Json to_json() const;
};

class Report {
  public:
    Report() = default;
    explicit Report(std::string command) : command_(std::move(command)) {}

    void set_inputs(Json inputs) { inputs_ = std::move(inputs); }
    void set_seed(std::uint64_t seed) { seed_ = seed; }
    void set_mode(std::string mode) { mode_ = std::move(mode); }
    void note(const std::string& key, Json value) { notes_[key] = std::move(value); }

    Check& add(Check c);
    Check& add(std::string name, bool ok, Json detail = Json::object(), Json witness = nullptr);
    /// Appends the checks of another report, prefixing their names.
    void absorb(const Report& other, const std::string& prefix = "");

    const std::vector<Check>& checks() const noexcept { return checks_; }
    const std::string& command() const noexcept { return command_; }
    std::size_t failures() const;
    bool passed() const { return failures() == 0 && !checks_.empty(); }

    Json to_json() const;
    /// Deterministic pretty-printed JSON.
    std::string dump() const;

  private:
    std::string command_;
    Json inputs_ = Json::object();
    std::uint64_t seed_ = 0;
    std::string mode_ = "expand";
    Json notes_ = Json::object();
    std::vector<Check> checks_;
};

}  // namespace ybt

#endif  // YBT_REPORT_HPP
