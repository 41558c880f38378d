#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "streameval/judge.hpp"

namespace streameval {

struct HttpJudgeOptions {
    std::string endpoint;             // full URL of a chat-completions endpoint
    std::string model_name;
    std::string credential_env_name;  // empty means no Authorization header
    int max_concurrency = 4;
    double timeout_s = 30.0;
    int retries = 3;          // additional attempts after the first
    int backoff_ms = 100;     // base of the exponential backoff
};

// LLM judge over a chat-completions-style JSON endpoint. Sends the shipped
// answer/rubric evaluation prompts, parses the JSON verdict out of the reply.
// Never holds more than max_concurrency requests in flight; failed requests
// retry with bounded exponential backoff. The credential is read from the
// environment at construction and never written to logs.
class HttpLlmJudge : public JudgeHandle {
public:
    explicit HttpLlmJudge(HttpJudgeOptions options);
    ~HttpLlmJudge() override;

    double score_answer(const std::string& question, const std::string& prediction,
                        const std::string& reference) override;
    std::vector<int> score_rubric(const std::string& trajectory_rendering,
                                  const RubricChecklist& checklist) override;
    std::string name() const override { return "http"; }

    // Debug sink for request/response lines (credentials redacted). Unset by
    // default: no logging.
    void set_debug_sink(std::function<void(const std::string&)> sink);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace streameval
