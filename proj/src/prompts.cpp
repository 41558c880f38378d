#include "streameval/prompts.hpp"

#include "streameval/prompt_assets.hpp"

namespace streameval {

std::string_view system_prompt() { return prompt_assets::kSystemPrompt; }
std::string_view offline_decision_prompt() { return prompt_assets::kOfflineDecisionPrompt; }
std::string_view rubric_generation_prompt() { return prompt_assets::kRubricGenerationPrompt; }
std::string_view open_ended_eval_prompt() { return prompt_assets::kOpenEndedEvalPrompt; }
std::string_view rubric_eval_prompt() { return prompt_assets::kRubricEvalPrompt; }

std::string apply_template(std::string_view tmpl,
                           const std::vector<std::pair<std::string, std::string>>& subs) {
    std::string out(tmpl);
    for (const auto& [key, value] : subs) {
        const std::string needle = "{" + key + "}";
        std::size_t pos = 0;
        while ((pos = out.find(needle, pos)) != std::string::npos) {
            out.replace(pos, needle.size(), value);
            pos += value.size();
        }
    }
    return out;
}

}  // namespace streameval
