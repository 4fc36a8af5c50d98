#pragma once
// Outcome record shared by every verification suite.

#include <string>

namespace qmqv {

enum class CheckStatus {
    Pass,
    Fail,
    InconclusiveAtBound,
};

inline const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::InconclusiveAtBound: return "inconclusive_at_bound";
    }
    return "?";
}

// Invariants: a fail carries a witness (the offending component); an
// inconclusive outcome carries the bound it was stopped at.
struct CheckReport {
    std::string check_name;
    std::string parameters;
    CheckStatus status = CheckStatus::Pass;
    std::string witness;
    long elapsed_ms = 0;

    bool passed() const { return status == CheckStatus::Pass; }
};

inline CheckReport make_pass(std::string name, std::string params, std::string note = "") {
    return {std::move(name), std::move(params), CheckStatus::Pass, std::move(note), 0};
}

inline CheckReport make_fail(std::string name, std::string params, std::string witness) {
    return {std::move(name), std::move(params), CheckStatus::Fail, std::move(witness), 0};
}

inline CheckReport make_inconclusive(std::string name, std::string params, int bound,
                                     std::string note) {
    std::string w = "bound D=" + std::to_string(bound);
    if (!note.empty()) w += "; " + note;
    return {std::move(name), std::move(params), CheckStatus::InconclusiveAtBound, std::move(w), 0};
}

}  // namespace qmqv
