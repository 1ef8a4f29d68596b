#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hos/labeller.hpp"

namespace hos {

// One labelled day flattened into a word document. Words keep activity order;
// timestamps, durations and sequence ordinals are dropped.
struct DayDocument {
  std::string driver;
  int week = 1;
  int day = 1;
  bool legal = true;  // false iff any constituent activity is illegal
  std::vector<std::string> words;

  bool operator==(const DayDocument&) const = default;
};

// Stable mapping between infraction texts and small integer codes. Code 0 is
// the empty text; the built-in infraction types hold fixed codes; any other
// texts observed at build time are appended in sorted order.
class InfractionCodebook {
 public:
  InfractionCodebook();  // frozen entries only

  // Adds every distinct non-frozen infraction text, sorted, after the frozen
  // entries.
  void extend(const std::vector<LabeledActivity>& labels);

  int code_for(const std::string& text) const;          // throws on unknown text
  const std::string& text_for(int code) const;          // throws on unknown code
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<std::string> values_;
};

struct EncodedCorpora {
  std::vector<DayDocument> legal;
  std::vector<DayDocument> illegal;
  InfractionCodebook codebook;
};

// Splits the labelled activities into per-(driver, day) documents: legal days
// encode (activity, day type, break type, token) per word; illegal days carry
// a fifth code for the row's infraction text.
EncodedCorpora encode_corpus(const std::vector<LabeledActivity>& labels);

struct DecodedWord {
  ActivityKind kind = ActivityKind::Driving;
  DayType day_type = DayType::Unknown;
  BreakStyle break_type = BreakStyle::Unknown;
  Token token = Token::Unknown;
  std::string infraction;  // empty for four-code words

  bool operator==(const DecodedWord&) const = default;
};

// Renders one word from its parts. The infraction code is appended only when
// with_infraction is set (the illegal-corpus layout).
std::string encode_word(ActivityKind kind, DayType day_type, BreakStyle break_type, Token token,
                        int infraction_code = 0, bool with_infraction = false);

// Inverse of encode_word; throws InputError naming the offending column on
// any out-of-range code. Five-code words resolve their infraction text
// against the codebook (frozen entries only when absent).
DecodedWord decode_word(const std::string& word, const InfractionCodebook* codebook = nullptr);

// Corpus file: one document per line, "driver,week,day,legal_flag," then the
// words space-separated.
void write_corpus(const std::vector<DayDocument>& docs, std::ostream& out);
std::vector<DayDocument> read_corpus(std::istream& in);

}  // namespace hos
