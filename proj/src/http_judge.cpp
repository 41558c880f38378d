#include "streameval/http_judge.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <semaphore>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "streameval/errors.hpp"
#include "streameval/prompts.hpp"

namespace streameval {

using nlohmann::json;

namespace {

struct ParsedEndpoint {
    std::string base;  // scheme://host[:port]
    std::string path;
};

ParsedEndpoint parse_endpoint(const std::string& endpoint) {
    const auto scheme_end = endpoint.find("://");
    if (scheme_end == std::string::npos) {
        throw ConfigError("judge endpoint must be a full URL, got '" + endpoint + "'");
    }
    const auto path_begin = endpoint.find('/', scheme_end + 3);
    if (path_begin == std::string::npos) {
        return {endpoint, "/"};
    }
    return {endpoint.substr(0, path_begin), endpoint.substr(path_begin)};
}

// The reply content should be a bare JSON object; tolerate judges that wrap
// it in prose by extracting the outermost braces.
json extract_json_object(const std::string& content, const std::string& raw_reply) {
    try {
        return json::parse(content);
    } catch (const json::parse_error&) {
    }
    const auto begin = content.find('{');
    const auto end = content.rfind('}');
    if (begin == std::string::npos || end == std::string::npos || end <= begin) {
        throw JudgeProtocolError("judge reply contains no JSON object", raw_reply);
    }
    try {
        return json::parse(content.substr(begin, end - begin + 1));
    } catch (const json::parse_error& e) {
        throw JudgeProtocolError(std::string("judge reply JSON is malformed: ") + e.what(),
                                 raw_reply);
    }
}

}  // namespace

struct HttpLlmJudge::Impl {
    HttpJudgeOptions options;
    ParsedEndpoint endpoint;
    std::string credential;
    std::counting_semaphore<4096> slots;
    std::function<void(const std::string&)> debug_sink;
    std::mutex sink_mutex;

    static int checked_concurrency(int n) {
        if (n < 1 || n > 4096) {
            throw ConfigError("judge max_concurrency must lie in [1, 4096]");
        }
        return n;
    }

    explicit Impl(HttpJudgeOptions opts)
        : options(std::move(opts)),
          endpoint(parse_endpoint(options.endpoint)),
          slots(checked_concurrency(options.max_concurrency)) {
        if (options.retries < 0) throw ConfigError("judge retries must be >= 0");
        if (!options.credential_env_name.empty()) {
            const char* value = std::getenv(options.credential_env_name.c_str());
            if (value == nullptr || *value == '\0') {
                throw ConfigError("credential environment variable '" +
                                  options.credential_env_name + "' is not set");
            }
            credential = value;
        }
    }

    void debug(const std::string& line) {
        std::lock_guard<std::mutex> lock(sink_mutex);
        if (debug_sink) debug_sink(line);
    }

    // One chat completion round-trip, returning the assistant content.
    std::string complete(const std::string& prompt) {
        json body = {
            {"model", options.model_name},
            {"temperature", 0},
            {"messages", json::array({json{{"role", "user"}, {"content", prompt}}})},
        };
        const std::string payload = body.dump();

        std::string last_failure = "no attempts made";
        std::string last_reply;
        int attempts_made = 0;
        for (int attempt = 0; attempt <= options.retries; ++attempt) {
            if (attempt > 0) {
                const auto delay = options.backoff_ms * (1 << (attempt - 1));
                std::this_thread::sleep_for(std::chrono::milliseconds(delay));
            }
            struct Slot {
                std::counting_semaphore<4096>& sem;
                explicit Slot(std::counting_semaphore<4096>& s) : sem(s) { sem.acquire(); }
                ~Slot() { sem.release(); }
            };
            ++attempts_made;
            httplib::Result result = [&] {
                Slot slot(slots);
                httplib::Client client(endpoint.base);
                const auto timeout_sec = static_cast<time_t>(options.timeout_s);
                const auto timeout_usec = static_cast<time_t>(
                    (options.timeout_s - static_cast<double>(timeout_sec)) * 1e6);
                client.set_connection_timeout(timeout_sec, timeout_usec);
                client.set_read_timeout(timeout_sec, timeout_usec);
                client.set_write_timeout(timeout_sec, timeout_usec);
                httplib::Headers headers;
                if (!credential.empty()) {
                    headers.emplace("Authorization", "Bearer " + credential);
                }
                debug("POST " + options.endpoint + " authorization=" +
                      (credential.empty() ? "none" : "Bearer [redacted]") +
                      " body=" + payload);
                return client.Post(endpoint.path, headers, payload, "application/json");
            }();

            if (!result) {
                last_failure = "connection failed: " + httplib::to_string(result.error());
                debug("reply error=" + last_failure);
                continue;
            }
            debug("reply status=" + std::to_string(result->status) +
                  " body=" + result->body);
            if (result->status == 200) {
                return parse_content(result->body);
            }
            last_failure = "HTTP status " + std::to_string(result->status);
            last_reply = result->body;
            const bool retryable = result->status == 429 || result->status >= 500;
            if (!retryable) break;
        }
        throw JudgeUnavailableError("judge endpoint unavailable after " +
                                        std::to_string(attempts_made) +
                                        " attempts (" + last_failure + ")",
                                    last_reply);
    }

    static std::string parse_content(const std::string& body) {
        json reply;
        try {
            reply = json::parse(body);
        } catch (const json::parse_error& e) {
            throw JudgeProtocolError(std::string("judge reply is not JSON: ") + e.what(),
                                     body);
        }
        if (!reply.contains("choices") || !reply["choices"].is_array() ||
            reply["choices"].empty()) {
            throw JudgeProtocolError("judge reply has no choices", body);
        }
        const auto& message = reply["choices"][0];
        if (!message.contains("message") || !message["message"].contains("content") ||
            !message["message"]["content"].is_string()) {
            throw JudgeProtocolError("judge reply has no message content", body);
        }
        return message["message"]["content"].get<std::string>();
    }
};

HttpLlmJudge::HttpLlmJudge(HttpJudgeOptions options)
    : impl_(std::make_unique<Impl>(std::move(options))) {}

HttpLlmJudge::~HttpLlmJudge() = default;

void HttpLlmJudge::set_debug_sink(std::function<void(const std::string&)> sink) {
    std::lock_guard<std::mutex> lock(impl_->sink_mutex);
    impl_->debug_sink = std::move(sink);
}

double HttpLlmJudge::score_answer(const std::string& question,
                                  const std::string& prediction,
                                  const std::string& reference) {
    if (reference.empty()) throw InputError("score_answer: reference must be nonempty");
    const std::string prompt = apply_template(open_ended_eval_prompt(),
                                              {{"question", question},
                                               {"model_output", prediction},
                                               {"reference_answer", reference}});
    const std::string content = impl_->complete(prompt);
    const json verdict = extract_json_object(content, content);
    if (!verdict.contains("score") || !verdict["score"].is_number_integer()) {
        throw JudgeProtocolError("judge verdict lacks an integer 'score'", content);
    }
    const int score = verdict["score"].get<int>();
    if (score < 0 || score > 5) {
        throw JudgeProtocolError("judge score " + std::to_string(score) +
                                     " outside the 0-5 scale",
                                 content);
    }
    return static_cast<double>(score) / 5.0;
}

std::vector<int> HttpLlmJudge::score_rubric(const std::string& trajectory_rendering,
                                            const RubricChecklist& checklist) {
    validate(checklist);
    json rubrics = json::array();
    for (const auto& cp : checklist.checkpoints) {
        rubrics.push_back({{"rubric_id", cp.rubric_id},
                           {"dimension", to_string(cp.dimension)},
                           {"rubric", cp.rubric}});
    }
    const std::string prompt =
        apply_template(rubric_eval_prompt(), {{"trajectory", trajectory_rendering},
                                              {"rubrics", rubrics.dump(2)}});
    const std::string content = impl_->complete(prompt);
    const json verdict = extract_json_object(content, content);
    if (!verdict.contains("scores") || !verdict["scores"].is_array()) {
        throw JudgeProtocolError("judge verdict lacks a 'scores' array", content);
    }
    std::vector<int> scores;
    for (const auto& v : verdict["scores"]) {
        if (v.is_boolean()) {
            scores.push_back(v.get<bool>() ? 1 : 0);
        } else if (v.is_number_integer()) {
            scores.push_back(v.get<int>());
        } else {
            throw JudgeProtocolError("rubric scores must be 0/1 integers", content);
        }
    }
    if (scores.size() != checklist.checkpoints.size()) {
        throw JudgeProtocolError("judge returned " + std::to_string(scores.size()) +
                                     " rubric scores for " +
                                     std::to_string(checklist.checkpoints.size()) +
                                     " checkpoints",
                                 content);
    }
    return scores;
}

}  // namespace streameval
