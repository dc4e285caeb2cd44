#include "ietk/tasks.hpp"

#include <stdexcept>

#include "ietk/strings.hpp"

namespace ietk {

std::string_view to_string(TaskKind k) {
  switch (k) {
    case TaskKind::ner: return "NER";
    case TaskKind::re: return "RE";
    case TaskKind::ee: return "EE";
    case TaskKind::es: return "ES";
    case TaskKind::et: return "ET";
    case TaskKind::ep: return "EP";
    case TaskKind::epr: return "EPR";
    case TaskKind::eet: return "EET";
    case TaskKind::eea: return "EEA";
  }
  return "NER";
}

TaskKind task_from_string(std::string_view s) {
  const std::string key = lower_ascii(trim(s));
  for (TaskKind k : kAllTaskKinds)
    if (key == lower_ascii(to_string(k))) return k;
  throw std::runtime_error("unknown task kind: " + std::string(s));
}

bool is_auxiliary(TaskKind k) {
  return k != TaskKind::ner && k != TaskKind::re && k != TaskKind::ee;
}

TaskCategory category_of(TaskKind k) {
  switch (k) {
    case TaskKind::ner:
    case TaskKind::es:
    case TaskKind::et:
      return TaskCategory::ner;
    case TaskKind::re:
    case TaskKind::ep:
    case TaskKind::epr:
      return TaskCategory::re;
    case TaskKind::ee:
    case TaskKind::eet:
    case TaskKind::eea:
      return TaskCategory::ee;
  }
  return TaskCategory::ner;
}

}  // namespace ietk
