#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace streameval {

// Prompt templates shipped under assets/prompts/ and compiled in at build
// time. Placeholders use {name} syntax.
std::string_view system_prompt();
std::string_view offline_decision_prompt();
std::string_view rubric_generation_prompt();
std::string_view open_ended_eval_prompt();
std::string_view rubric_eval_prompt();

// Replaces each "{key}" with its value; unknown placeholders stay untouched.
std::string apply_template(std::string_view tmpl,
                           const std::vector<std::pair<std::string, std::string>>& subs);

}  // namespace streameval
