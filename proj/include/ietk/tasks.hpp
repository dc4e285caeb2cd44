#pragma once

#include <string_view>

#include "ietk/schema.hpp"

namespace ietk {

// Main extraction tasks plus the decomposed auxiliary tasks:
//   es/et  - entity span extraction / entity typing       (from NER)
//   ep/epr - entity pair extraction / pair relation       (from RE)
//   eet/eea - event trigger extraction / argument extraction (from EE)
enum class TaskKind { ner, re, ee, es, et, ep, epr, eet, eea };

inline constexpr TaskKind kAllTaskKinds[] = {
    TaskKind::ner, TaskKind::re,  TaskKind::ee,  TaskKind::es, TaskKind::et,
    TaskKind::ep,  TaskKind::epr, TaskKind::eet, TaskKind::eea};

std::string_view to_string(TaskKind k);
TaskKind task_from_string(std::string_view s);

bool is_auxiliary(TaskKind k);

// The annotation category a task derives from.
TaskCategory category_of(TaskKind k);

}  // namespace ietk
