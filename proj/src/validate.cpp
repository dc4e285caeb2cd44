#include "ietk/validate.hpp"

#include <algorithm>
#include <set>

#include "ietk/utf8.hpp"

namespace ietk {

namespace {

void check_span(const Span& span, const std::string& text, std::size_t text_len,
                const std::string& field, std::vector<Violation>& out) {
  if (span.start >= span.end || span.end > text_len) {
    out.push_back({field, "span out of bounds"});
    return;
  }
  if (utf8::substr(text, span.start, span.end) != span.surface)
    out.push_back({field + ".surface", "surface mismatch"});
}

template <typename T>
void check_duplicates(const std::vector<T>& mentions, const std::string& list_name,
                      std::vector<Violation>& out) {
  for (std::size_t i = 0; i < mentions.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (mentions[i] == mentions[j]) {
        out.push_back({list_name + "[" + std::to_string(i) + "]", "duplicate mention"});
        break;
      }
    }
  }
}

}  // namespace

std::vector<Violation> validate_structure(const Instance& instance) {
  std::vector<Violation> out;
  const std::size_t text_len = utf8::length(instance.text);

  for (std::size_t i = 0; i < instance.entities.size(); ++i)
    check_span(instance.entities[i].span, instance.text, text_len,
               "entities[" + std::to_string(i) + "]", out);
  for (std::size_t i = 0; i < instance.relations.size(); ++i) {
    const auto& r = instance.relations[i];
    check_span(r.head, instance.text, text_len,
               "relations[" + std::to_string(i) + "].head", out);
    check_span(r.tail, instance.text, text_len,
               "relations[" + std::to_string(i) + "].tail", out);
  }
  for (std::size_t i = 0; i < instance.events.size(); ++i) {
    const auto& ev = instance.events[i];
    check_span(ev.trigger, instance.text, text_len,
               "events[" + std::to_string(i) + "].trigger", out);
    for (std::size_t a = 0; a < ev.arguments.size(); ++a)
      check_span(ev.arguments[a].filler, instance.text, text_len,
                 "events[" + std::to_string(i) + "].arguments[" + std::to_string(a) + "]",
                 out);
  }

  check_duplicates(instance.entities, "entities", out);
  check_duplicates(instance.relations, "relations", out);
  check_duplicates(instance.events, "events", out);
  return out;
}

std::vector<Violation> validate_instance(const Instance& instance,
                                         const LabelSchema& schema) {
  std::vector<Violation> out = validate_structure(instance);

  auto known = [&](const std::vector<std::string>& set, const std::string& label) {
    return std::find(set.begin(), set.end(), label) != set.end();
  };

  for (std::size_t i = 0; i < instance.entities.size(); ++i)
    if (!known(schema.labels, instance.entities[i].label))
      out.push_back({"entities[" + std::to_string(i) + "].label", "unknown label"});
  for (std::size_t i = 0; i < instance.relations.size(); ++i)
    if (!known(schema.labels, instance.relations[i].relation))
      out.push_back({"relations[" + std::to_string(i) + "].relation", "unknown label"});
  for (std::size_t i = 0; i < instance.events.size(); ++i) {
    const auto& ev = instance.events[i];
    if (!known(schema.event_types, ev.event_type))
      out.push_back({"events[" + std::to_string(i) + "].type", "unknown label"});
    for (std::size_t a = 0; a < ev.arguments.size(); ++a)
      if (!known(schema.roles, ev.arguments[a].role))
        out.push_back({"events[" + std::to_string(i) + "].arguments[" + std::to_string(a) +
                           "].role",
                       "unknown label"});
  }
  return out;
}

}  // namespace ietk
