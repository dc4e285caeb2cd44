#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace ietk {

// A contiguous character range of an instance's text. Offsets count Unicode
// scalar values; start inclusive, end exclusive. `surface` must equal the
// text slice exactly.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;
  std::string surface;

  auto operator<=>(const Span&) const = default;
};

struct EntityMention {
  Span span;
  std::string label;

  auto operator<=>(const EntityMention&) const = default;
};

struct RelationMention {
  std::string relation;
  Span head;
  Span tail;

  auto operator<=>(const RelationMention&) const = default;
};

struct EventArgument {
  std::string role;
  Span filler;

  auto operator<=>(const EventArgument&) const = default;
};

struct EventMention {
  std::string event_type;
  Span trigger;
  std::vector<EventArgument> arguments;

  auto operator<=>(const EventMention&) const = default;
};

// One annotated source sentence. Any of the annotation lists may be empty;
// an instance with no annotations at all is legal and serializes to "None"
// downstream.
struct Instance {
  std::string id;
  std::string dataset;
  std::string text;
  std::vector<EntityMention> entities;
  std::vector<RelationMention> relations;
  std::vector<EventMention> events;

  bool operator==(const Instance&) const = default;
};

// A problem tied to one input record rather than the whole stream. Record
// errors are data: the surrounding operation keeps going.
struct RecordError {
  std::string id;        // record id when known
  std::size_t line = 0;  // 1-based input line when known, 0 otherwise
  std::string field;     // offending field, e.g. "entities[2].surface"
  std::string message;
};

}  // namespace ietk
