#include "hos/day_encoder.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace hos {

namespace {

constexpr char kSep = '|';

// Frozen zero-based code tables. Decoding switches on the same constants so a
// reordered enum can never silently change the corpus language.
int activity_code(ActivityKind k) {
  switch (k) {
    case ActivityKind::Driving: return 0;
    case ActivityKind::Other: return 1;
    case ActivityKind::Break: return 2;
    case ActivityKind::Idle: return 3;
  }
  return 3;
}

ActivityKind activity_from_code(int c) {
  switch (c) {
    case 0: return ActivityKind::Driving;
    case 1: return ActivityKind::Other;
    case 2: return ActivityKind::Break;
    case 3: return ActivityKind::Idle;
    default: throw InputError("activity code " + std::to_string(c) + " out of range");
  }
}

int day_type_code(DayType t) {
  switch (t) {
    case DayType::Ndd: return 0;
    case DayType::Edd: return 1;
    case DayType::Unknown: return 2;
  }
  return 2;
}

DayType day_type_from_code(int c) {
  switch (c) {
    case 0: return DayType::Ndd;
    case 1: return DayType::Edd;
    case 2: return DayType::Unknown;
    default: throw InputError("day type code " + std::to_string(c) + " out of range");
  }
}

int break_type_code(BreakStyle b) {
  switch (b) {
    case BreakStyle::Uninterrupted: return 0;
    case BreakStyle::Split1: return 1;
    case BreakStyle::Split2: return 2;
    case BreakStyle::Unknown: return 3;
  }
  return 3;
}

BreakStyle break_type_from_code(int c) {
  switch (c) {
    case 0: return BreakStyle::Uninterrupted;
    case 1: return BreakStyle::Split1;
    case 2: return BreakStyle::Split2;
    case 3: return BreakStyle::Unknown;
    default: throw InputError("break type code " + std::to_string(c) + " out of range");
  }
}

int token_code(Token t) {
  switch (t) {
    case Token::A: return 0;
    case Token::B_T0: return 1;
    case Token::B_T1: return 2;
    case Token::B_T2: return 3;
    case Token::B_T3: return 4;
    case Token::DR_T1: return 5;
    case Token::DR_T2: return 6;
    case Token::DR_T3: return 7;
    case Token::DR_T4: return 8;
    case Token::WR_T1: return 9;
    case Token::WR_T2: return 10;
    case Token::Unknown: return 11;
  }
  return 11;
}

Token token_from_code(int c) {
  switch (c) {
    case 0: return Token::A;
    case 1: return Token::B_T0;
    case 2: return Token::B_T1;
    case 3: return Token::B_T2;
    case 4: return Token::B_T3;
    case 5: return Token::DR_T1;
    case 6: return Token::DR_T2;
    case 7: return Token::DR_T3;
    case 8: return Token::DR_T4;
    case 9: return Token::WR_T1;
    case 10: return Token::WR_T2;
    case 11: return Token::Unknown;
    default: throw InputError("token code " + std::to_string(c) + " out of range");
  }
}

const char* const kFrozenInfractions[] = {
    "",
    "Excessive Driving without breaks",
    "Surpassed NDD driving time",
    "Excessive Driving in day (EDD)",
    "Missing other half of split daily rest",
    "Rest past the daily/weekly deadline",
    "Unexplained",
};
constexpr std::size_t kFrozenCount = sizeof(kFrozenInfractions) / sizeof(kFrozenInfractions[0]);

}  // namespace

InfractionCodebook::InfractionCodebook() {
  values_.assign(kFrozenInfractions, kFrozenInfractions + kFrozenCount);
}

void InfractionCodebook::extend(const std::vector<LabeledActivity>& labels) {
  std::set<std::string> extra;
  for (const auto& la : labels) {
    const std::string& text = la.infraction;
    bool frozen = std::find(values_.begin(), values_.begin() + kFrozenCount, text) !=
                  values_.begin() + kFrozenCount;
    if (!frozen) extra.insert(text);
  }
  for (const auto& text : extra) {
    if (std::find(values_.begin(), values_.end(), text) == values_.end()) values_.push_back(text);
  }
}

int InfractionCodebook::code_for(const std::string& text) const {
  auto it = std::find(values_.begin(), values_.end(), text);
  if (it == values_.end()) throw InputError("infraction text not in codebook: \"" + text + "\"");
  return static_cast<int>(it - values_.begin());
}

const std::string& InfractionCodebook::text_for(int code) const {
  if (code < 0 || static_cast<std::size_t>(code) >= values_.size()) {
    throw InputError("infraction code " + std::to_string(code) + " out of range");
  }
  return values_[static_cast<std::size_t>(code)];
}

std::string encode_word(ActivityKind kind, DayType day_type, BreakStyle break_type, Token token,
                        int infraction_code, bool with_infraction) {
  std::ostringstream out;
  out << activity_code(kind) << kSep << day_type_code(day_type) << kSep
      << break_type_code(break_type) << kSep << token_code(token);
  if (with_infraction) out << kSep << infraction_code;
  return out.str();
}

EncodedCorpora encode_corpus(const std::vector<LabeledActivity>& labels) {
  EncodedCorpora out;
  out.codebook.extend(labels);
  std::size_t i = 0;
  while (i < labels.size()) {
    const std::string& driver = labels[i].record.driver_id;
    int day = labels[i].contexts.day;
    std::size_t j = i;
    bool legal = true;
    while (j < labels.size() && labels[j].record.driver_id == driver &&
           labels[j].contexts.day == day) {
      legal = legal && labels[j].contexts.legal;
      ++j;
    }
    DayDocument doc;
    doc.driver = driver;
    doc.week = labels[i].contexts.week;
    doc.day = day;
    doc.legal = legal;
    doc.words.reserve(j - i);
    for (std::size_t r = i; r < j; ++r) {
      const auto& la = labels[r];
      int infraction_code = legal ? 0 : out.codebook.code_for(la.infraction);
      doc.words.push_back(encode_word(la.record.kind, la.contexts.day_type,
                                      la.contexts.break_type, la.contexts.token, infraction_code,
                                      !legal));
    }
    (legal ? out.legal : out.illegal).push_back(std::move(doc));
    i = j;
  }
  return out;
}

namespace {

std::vector<int> parse_codes(const std::string& word) {
  std::vector<int> codes;
  std::string cur;
  auto flush = [&]() {
    if (cur.empty()) throw InputError("malformed word \"" + word + "\": empty code");
    for (char ch : cur) {
      if (ch < '0' || ch > '9') {
        throw InputError("malformed word \"" + word + "\": non-numeric code \"" + cur + "\"");
      }
    }
    codes.push_back(std::stoi(cur));
    cur.clear();
  };
  for (char ch : word) {
    if (ch == kSep) {
      flush();
    } else {
      cur.push_back(ch);
    }
  }
  flush();
  return codes;
}

}  // namespace

DecodedWord decode_word(const std::string& word, const InfractionCodebook* codebook) {
  std::vector<int> codes = parse_codes(word);
  if (codes.size() != 4 && codes.size() != 5) {
    throw InputError("word \"" + word + "\" must hold 4 or 5 codes, found " +
                     std::to_string(codes.size()));
  }
  DecodedWord out;
  out.kind = activity_from_code(codes[0]);
  out.day_type = day_type_from_code(codes[1]);
  out.break_type = break_type_from_code(codes[2]);
  out.token = token_from_code(codes[3]);
  if (codes.size() == 5) {
    static const InfractionCodebook frozen;
    out.infraction = (codebook != nullptr ? *codebook : frozen).text_for(codes[4]);
  }
  return out;
}

void write_corpus(const std::vector<DayDocument>& docs, std::ostream& out) {
  for (const auto& doc : docs) {
    out << doc.driver << ',' << doc.week << ',' << doc.day << ',' << (doc.legal ? 1 : 0) << ',';
    for (std::size_t w = 0; w < doc.words.size(); ++w) {
      if (w > 0) out << ' ';
      out << doc.words[w];
    }
    out << '\n';
  }
}

std::vector<DayDocument> read_corpus(std::istream& in) {
  std::vector<DayDocument> docs;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> head;
    std::string cur;
    std::size_t pos = 0;
    while (head.size() < 4 && pos < line.size()) {
      if (line[pos] == ',') {
        head.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(line[pos]);
      }
      ++pos;
    }
    if (head.size() < 4) throw InputError("expected driver,week,day,legal_flag prefix", row);
    DayDocument doc;
    doc.driver = head[0];
    try {
      doc.week = std::stoi(head[1]);
      doc.day = std::stoi(head[2]);
    } catch (const std::logic_error&) {
      throw InputError("non-numeric week/day counter", row);
    }
    if (head[3] == "1") {
      doc.legal = true;
    } else if (head[3] == "0") {
      doc.legal = false;
    } else {
      throw InputError("legal flag must be 0 or 1, found \"" + head[3] + "\"", row);
    }
    std::istringstream words(line.substr(pos));
    std::string w;
    while (words >> w) {
      // Validate the structural columns; the infraction column may carry
      // codes for custom tests beyond the frozen book, so only its presence
      // is checked here.
      std::vector<int> codes = parse_codes(w);
      if (codes.size() != 4 && codes.size() != 5) {
        throw InputError("word \"" + w + "\" must hold 4 or 5 codes", row);
      }
      activity_from_code(codes[0]);
      day_type_from_code(codes[1]);
      break_type_from_code(codes[2]);
      token_from_code(codes[3]);
      doc.words.push_back(w);
    }
    if (doc.words.empty()) throw InputError("document holds no words", row);
    docs.push_back(std::move(doc));
  }
  return docs;
}

}  // namespace hos
