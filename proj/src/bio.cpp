#include "ietk/bio.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <stdexcept>

#include "ietk/strings.hpp"
#include "ietk/utf8.hpp"

namespace ietk {

namespace {

enum class TagKind { outside, begin, inside };

struct ParsedTag {
  TagKind kind = TagKind::outside;
  std::string type;
};

bool parse_tag(std::string_view tag, ParsedTag& out) {
  if (tag == "O") {
    out = {TagKind::outside, ""};
    return true;
  }
  if (tag.size() > 2 && tag[1] == '-' && (tag[0] == 'B' || tag[0] == 'I')) {
    out.kind = tag[0] == 'B' ? TagKind::begin : TagKind::inside;
    out.type = std::string(tag.substr(2));
    return true;
  }
  return false;
}

struct TokenLine {
  std::string token;
  std::string tag;
  std::size_t line = 0;
};

struct Chunk {
  std::string type;
  std::size_t first = 0;  // token indices, inclusive
  std::size_t last = 0;
};

}  // namespace

BioResult ingest_token_tagged(std::istream& source, TagFormat format,
                              std::string_view dataset, std::string_view id_prefix) {
  BioResult result;
  const std::string prefix(id_prefix.empty() ? dataset : id_prefix);

  std::vector<TokenLine> sentence;
  std::size_t line_no = 0;
  std::size_t sentence_index = 0;

  auto flush = [&]() {
    if (sentence.empty()) return;
    const std::string id = prefix + "-" + std::to_string(sentence_index++);

    // Tag pass: reject the whole sentence on the first malformed tag.
    std::vector<ParsedTag> tags(sentence.size());
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      if (!parse_tag(sentence[i].tag, tags[i])) {
        result.errors.push_back({id, sentence[i].line, "tag",
                                 "malformed tag '" + sentence[i].tag + "'"});
        sentence.clear();
        return;
      }
    }

    // Chunk pass.
    std::vector<Chunk> chunks;
    bool open = false;
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      const ParsedTag& t = tags[i];
      switch (t.kind) {
        case TagKind::outside:
          open = false;
          break;
        case TagKind::begin:
          chunks.push_back({t.type, i, i});
          open = true;
          break;
        case TagKind::inside:
          if (open && chunks.back().type == t.type && chunks.back().last == i - 1) {
            chunks.back().last = i;
          } else {
            // Chunk-initial I-: legitimate under IOB1, repaired under BIO2.
            if (format == TagFormat::iob2) ++result.repaired_continuations;
            chunks.push_back({t.type, i, i});
            open = true;
          }
          break;
      }
    }

    Instance inst;
    inst.id = id;
    inst.dataset = std::string(dataset);

    std::vector<std::size_t> starts(sentence.size());  // scalar offset of each token
    std::size_t offset = 0;
    for (std::size_t i = 0; i < sentence.size(); ++i) {
      if (i > 0) {
        inst.text.push_back(' ');
        ++offset;
      }
      starts[i] = offset;
      offset += utf8::length(sentence[i].token);
      inst.text += sentence[i].token;
    }

    for (const Chunk& c : chunks) {
      Span span;
      span.start = starts[c.first];
      span.end = starts[c.last] + utf8::length(sentence[c.last].token);
      for (std::size_t i = c.first; i <= c.last; ++i) {
        if (i > c.first) span.surface.push_back(' ');
        span.surface += sentence[i].token;
      }
      inst.entities.push_back({std::move(span), c.type});
    }

    result.instances.push_back(std::move(inst));
    sentence.clear();
  };

  std::string line;
  while (std::getline(source, line)) {
    ++line_no;
    const auto fields = split_ws(line);
    if (fields.empty()) {
      flush();
      continue;
    }
    if (fields.front() == "-DOCSTART-") continue;
    if (fields.size() < 2) {
      // A token without a tag poisons its sentence; consume up to the next
      // blank line so the error is reported once.
      result.errors.push_back({prefix + "-" + std::to_string(sentence_index++), line_no,
                               "line", "expected token and tag columns"});
      sentence.clear();
      while (std::getline(source, line)) {
        ++line_no;
        if (split_ws(line).empty()) break;
      }
      continue;
    }
    sentence.push_back({std::string(fields.front()), std::string(fields.back()), line_no});
  }
  flush();
  return result;
}

std::vector<std::string> encode_tags(const std::vector<std::string>& tokens,
                                     std::vector<EntityMention> entities,
                                     TagFormat format) {
  std::vector<std::size_t> starts(tokens.size());
  std::map<std::size_t, std::size_t> start_of, end_of;  // scalar offset -> token index
  std::size_t offset = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) ++offset;
    starts[i] = offset;
    start_of[offset] = i;
    offset += utf8::length(tokens[i]);
    end_of[offset] = i;
  }

  std::sort(entities.begin(), entities.end(),
            [](const EntityMention& a, const EntityMention& b) {
              return a.span.start < b.span.start;
            });

  std::vector<std::string> tags(tokens.size(), "O");
  std::size_t prev_last = 0;
  std::string prev_type;
  bool have_prev = false;
  for (const auto& e : entities) {
    auto s = start_of.find(e.span.start);
    auto t = end_of.find(e.span.end);
    if (s == start_of.end() || t == end_of.end() || t->second < s->second)
      throw std::invalid_argument("encode_tags: mention does not align with token boundaries");
    for (std::size_t i = s->second; i <= t->second; ++i) {
      if (tags[i] != "O")
        throw std::invalid_argument("encode_tags: overlapping mentions cannot be tagged");
      tags[i] = "I-" + e.label;
    }
    const bool adjacent_same =
        have_prev && prev_type == e.label && prev_last + 1 == s->second;
    if (format == TagFormat::iob2 || adjacent_same) tags[s->second] = "B-" + e.label;
    prev_last = t->second;
    prev_type = e.label;
    have_prev = true;
  }
  return tags;
}

}  // namespace ietk
