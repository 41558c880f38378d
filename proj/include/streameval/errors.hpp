#pragma once

#include <stdexcept>
#include <string>

namespace streameval {

// Bad user-supplied data: malformed records, violated invariants, id mismatches.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad engine configuration: non-positive tolerances, beta >= 1, missing credentials.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Judge endpoint could not be reached after retries.
class JudgeUnavailableError : public std::runtime_error {
public:
    JudgeUnavailableError(const std::string& msg, std::string raw_reply = {})
        : std::runtime_error(msg), raw_reply_(std::move(raw_reply)) {}
    const std::string& raw_reply() const noexcept { return raw_reply_; }

private:
    std::string raw_reply_;
};

// Judge replied but the reply does not follow the expected protocol.
class JudgeProtocolError : public std::runtime_error {
public:
    JudgeProtocolError(const std::string& msg, std::string raw_reply = {})
        : std::runtime_error(msg), raw_reply_(std::move(raw_reply)) {}
    const std::string& raw_reply() const noexcept { return raw_reply_; }

private:
    std::string raw_reply_;
};

}  // namespace streameval
