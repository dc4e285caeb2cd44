#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ietk/instance.hpp"

namespace ietk {

// Tag conventions for token-tagged (CoNLL-style) corpora.
//   bio  - IOB1: "I-" may open a chunk; "B-" separates adjacent same-type chunks.
//   iob2 - BIO2: every chunk opens with "B-"; a bare "I-" is repaired to "B-"
//          and tallied.
enum class TagFormat { bio, iob2 };

struct BioResult {
  std::vector<Instance> instances;
  std::vector<RecordError> errors;   // rejected sentences, with line numbers
  std::size_t repaired_continuations = 0;
};

// Reads line-oriented token/tag pairs (first column token, last column tag;
// blank line separates sentences). Tokens are joined with single spaces and
// entity offsets are computed over the joined text in Unicode scalar values.
// Sentences containing a malformed tag are rejected as record errors.
// "-DOCSTART-" marker lines are skipped.
BioResult ingest_token_tagged(std::istream& source, TagFormat format,
                              std::string_view dataset,
                              std::string_view id_prefix = {});

// Encodes entity mentions back into a tag sequence over the given tokens.
// Mentions must align with token boundaries and must not overlap; throws
// std::invalid_argument otherwise.
std::vector<std::string> encode_tags(const std::vector<std::string>& tokens,
                                     std::vector<EntityMention> entities,
                                     TagFormat format);

}  // namespace ietk
