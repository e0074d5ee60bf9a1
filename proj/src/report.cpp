#include "ybt/report.hpp"

namespace ybt {

std::string to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::skipped: return "skipped";
    }
    return "unknown";
}

Json Check::to_json() const {
    Json j;
    j["name"] = name;
    j["status"] = to_string(status);
    j["asserted"] = asserted;
    if (!detail.empty()) j["detail"] = detail;
    if (!witness.is_null()) j["witness"] = witness;
    return j;
}

Check& Report::add(Check c) {
    checks_.push_back(std::move(c));
    return checks_.back();
}

Check& Report::add(std::string name, bool ok, Json detail, Json witness) {
    Check c;
    c.name = std::move(name);
    c.status = ok ? Status::pass : Status::fail;
    c.detail = std::move(detail);
    c.witness = std::move(witness);
    return add(std::move(c));
}

void Report::absorb(const Report& other, const std::string& prefix) {
    for (Check c : other.checks_) {
        if (!prefix.empty()) c.name = prefix + c.name;
        checks_.push_back(std::move(c));
    }
    for (auto it = other.notes_.begin(); it != other.notes_.end(); ++it)
        notes_[prefix + it.key()] = it.value();
}

std::size_t Report::failures() const {
    std::size_t n = 0;
    for (const auto& c : checks_)
        if (c.asserted && c.status == Status::fail) ++n;
    return n;
}

Json Report::to_json() const {
    Json j;
    j["command"] = command_;
    j["inputs"] = inputs_;
    j["seed"] = seed_;
    j["mode"] = mode_;
    if (!notes_.empty()) j["notes"] = notes_;
    Json arr = Json::array();
    for (const auto& c : checks_) arr.push_back(c.to_json());
    j["checks"] = std::move(arr);
    j["status"] = passed() ? "pass" : "fail";
    return j;
}

std::string Report::dump() const { return to_json().dump(2); }

}  // namespace ybt
