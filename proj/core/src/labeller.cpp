#include "hos/labeller.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "hos/time.hpp"

namespace hos {

std::string to_string(DayType v) {
  switch (v) {
    case DayType::Ndd: return "ndd";
    case DayType::Edd: return "edd";
    case DayType::Unknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(SequencePos v) {
  switch (v) {
    case SequencePos::First: return "first";
    case SequencePos::Second: return "second";
    case SequencePos::Third: return "third";
    case SequencePos::Unique: return "unique";
    case SequencePos::Unknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(BreakStyle v) {
  switch (v) {
    case BreakStyle::Uninterrupted: return "uninterrupted";
    case BreakStyle::Split1: return "split_1";
    case BreakStyle::Split2: return "split_2";
    case BreakStyle::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

bool is_unknown_spelling(const std::string& text) {
  return text == "unknown" || text == "unkown";
}

}  // namespace

DayType day_type_from_string(const std::string& text) {
  if (text == "ndd") return DayType::Ndd;
  if (text == "edd") return DayType::Edd;
  if (is_unknown_spelling(text)) return DayType::Unknown;
  throw std::invalid_argument("unknown day type \"" + text + "\"");
}

SequencePos sequence_pos_from_string(const std::string& text) {
  if (text == "first") return SequencePos::First;
  if (text == "second") return SequencePos::Second;
  if (text == "third") return SequencePos::Third;
  if (text == "unique") return SequencePos::Unique;
  if (is_unknown_spelling(text)) return SequencePos::Unknown;
  throw std::invalid_argument("unknown sequence position \"" + text + "\"");
}

BreakStyle break_style_from_string(const std::string& text) {
  if (text == "uninterrupted") return BreakStyle::Uninterrupted;
  if (text == "split_1") return BreakStyle::Split1;
  if (text == "split_2") return BreakStyle::Split2;
  if (is_unknown_spelling(text)) return BreakStyle::Unknown;
  throw std::invalid_argument("unknown break style \"" + text + "\"");
}

std::vector<Token> admissible_tokens(ActivityKind kind, std::int64_t duration_min,
                                     GrammarRole role, const RegulationParameters& params) {
  if (kind != ActivityKind::Break) return {Token::A};
  return admissible_role_tokens(role, duration_min, params);
}

namespace {

bool rest_class(Token t) {
  switch (t) {
    case Token::DR_T1:
    case Token::DR_T2:
    case Token::DR_T3:
    case Token::DR_T4:
    case Token::WR_T1:
    case Token::WR_T2:
      return true;
    default:
      return false;
  }
}

bool weekly_class(Token t) { return t == Token::WR_T1 || t == Token::WR_T2; }

bool in_interval(std::int64_t d, Token t, const RegulationParameters& p) {
  return token_interval(t, p).contains(d);
}

// One decided step of a recognized parse.
struct Move {
  Token token = Token::A;
  bool seq_close = false;
  bool day_close = false;
  bool week_close = false;
  DayType day_type = DayType::Unknown;
  bool soft = false;  // day completed but its rest missed the deadline
};

struct WeekBudgets {
  int periods = 0;  // completed daily periods since the last weekly rest
  int edds = 0;     // extended driving days consumed this week
  int dr2 = 0;      // reduced daily rests taken this week
};

struct SearchState {
  std::size_t pos = 0;
  int seq_drive = 0;
  int seg_drive = 0;
  int seqs = 0;        // closed sequences in the open segment
  bool seq_open = false;
  bool pending_b2 = false;
  bool dsp = false;    // first half of a split daily rest taken
  int periods = 0;
  int edds = 0;
  int dr2 = 0;
  Minutes anchor = 0;

  bool operator==(const SearchState&) const = default;
};

struct SearchStateHash {
  std::size_t operator()(const SearchState& s) const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    mix(s.pos);
    mix(static_cast<std::uint64_t>(s.seq_drive));
    mix(static_cast<std::uint64_t>(s.seg_drive));
    mix(static_cast<std::uint64_t>(s.seqs));
    mix((s.seq_open ? 1u : 0u) | (s.pending_b2 ? 2u : 0u) | (s.dsp ? 4u : 0u));
    mix(static_cast<std::uint64_t>(s.periods));
    mix(static_cast<std::uint64_t>(s.edds));
    mix(static_cast<std::uint64_t>(s.dr2));
    mix(static_cast<std::uint64_t>(s.anchor));
    return static_cast<std::size_t>(h);
  }
};

struct SearchResult {
  bool full = false;
  std::vector<Move> moves;       // full parse when full, else best prefix of whole days
  std::size_t best_m = 0;        // record index after the last completed day
  SearchState state_at_m;        // resume state at best_m
};

// Depth-first recognizer over one suffix of a driver log. Candidate order at
// each break encodes the preference policy: stay in sequence, then close the
// sequence with a full break, then open a split, then regular daily rest over
// reduced over split-first, then regular weekly rest over reduced. The first
// complete parse found wins; failures are memoized on the full search state.
class Searcher {
 public:
  Searcher(const std::vector<ActivityRecord>& recs, const RegulationParameters& params,
           std::size_t begin, Minutes anchor, bool dsp, const WeekBudgets& budgets)
      : recs_(recs), p_(params), begin_(begin) {
    init_.pos = begin;
    init_.anchor = anchor;
    init_.dsp = dsp;
    init_.periods = budgets.periods;
    init_.edds = budgets.edds;
    init_.dr2 = budgets.dr2;
  }

  SearchResult run() {
    result_.best_m = begin_;
    result_.state_at_m = init_;
    allow_soft_ = false;
    failed_.clear();
    moves_.clear();
    if (dfs(init_)) {
      result_.full = true;
      result_.moves = moves_;
      return result_;
    }
    allow_soft_ = true;
    failed_.clear();
    moves_.clear();
    if (dfs(init_)) {
      result_.full = true;
      result_.moves = moves_;
      return result_;
    }
    return result_;
  }

 private:
  bool dfs(const SearchState& s) {
    if (s.pos == recs_.size()) {
      // Open day/week structures and a pending first split half are tolerated
      // at the end of the data; an unanswered first break half is not.
      return !s.pending_b2;
    }
    if (failed_.count(s) != 0) return false;
    const ActivityRecord& rec = recs_[s.pos];
    const auto dur = rec.duration_min;
    bool ok = false;
    if (rec.kind != ActivityKind::Break) {
      ok = try_plain(s, rec);
    } else {
      ok = try_bt0(s, dur);
      if (!ok && s.pending_b2) ok = try_seq_close(s, Token::B_T3, dur);
      if (!ok && !s.pending_b2) ok = try_seq_close(s, Token::B_T1, dur);
      if (!ok && !s.pending_b2) ok = try_bt2(s, dur);
      if (!ok && !s.dsp) {
        ok = try_day_close(s, rec, Token::DR_T1) || try_day_close(s, rec, Token::DR_T2) ||
             try_day_close(s, rec, Token::DR_T3);
      }
      if (!ok && s.dsp) ok = try_day_close(s, rec, Token::DR_T4);
      if (!ok) ok = try_week_close(s, rec, Token::WR_T1) || try_week_close(s, rec, Token::WR_T2);
    }
    if (!ok) failed_.insert(s);
    return ok;
  }

  bool apply(const SearchState& next, const Move& m) {
    moves_.push_back(m);
    if (m.day_close && next.pos > result_.best_m) {
      result_.best_m = next.pos;
      result_.state_at_m = next;
      result_.moves = moves_;
    }
    if (dfs(next)) return true;
    moves_.pop_back();
    return false;
  }

  bool try_plain(const SearchState& s, const ActivityRecord& rec) {
    SearchState n = s;
    if (rec.kind == ActivityKind::Driving) {
      n.seq_drive += static_cast<int>(rec.duration_min);
      n.seg_drive += static_cast<int>(rec.duration_min);
      if (n.seq_drive > p_.seq_driving_max || n.seg_drive > p_.edd_driving_max) return false;
    }
    n.seq_open = true;
    n.pos = s.pos + 1;
    return apply(n, Move{Token::A});
  }

  bool try_bt0(const SearchState& s, std::int64_t dur) {
    if (!in_interval(dur, Token::B_T0, p_)) return false;
    SearchState n = s;
    n.seq_open = true;
    n.pos = s.pos + 1;
    return apply(n, Move{Token::B_T0});
  }

  bool try_bt2(const SearchState& s, std::int64_t dur) {
    if (!in_interval(dur, Token::B_T2, p_)) return false;
    if (!s.seq_open) return false;  // a split must interrupt a started sequence
    SearchState n = s;
    n.pending_b2 = true;
    n.seq_open = true;
    n.pos = s.pos + 1;
    return apply(n, Move{Token::B_T2});
  }

  bool try_seq_close(const SearchState& s, Token t, std::int64_t dur) {
    if (!in_interval(dur, t, p_)) return false;
    if (!s.seq_open) return false;  // a break structure terminates a non-empty sequence
    if (s.seqs >= 3) return false;  // a 4th sequence can never close legally
    SearchState n = s;
    n.pending_b2 = false;
    n.seqs = s.seqs + 1;
    n.seq_drive = 0;
    n.seq_open = false;
    n.pos = s.pos + 1;
    Move m;
    m.token = t;
    m.seq_close = true;
    return apply(n, m);
  }

  // Classifies the segment being closed; returns false when no day type fits.
  bool classify(const SearchState& s, int total_seqs, DayType& out, bool& uses_edd) const {
    if (total_seqs < 1 || total_seqs > 3) return false;
    if (total_seqs <= 2 && s.seg_drive <= p_.ndd_driving_max) {
      out = DayType::Ndd;
      uses_edd = false;
      return true;
    }
    if (total_seqs >= 2 && s.seg_drive <= p_.edd_driving_max && s.edds < p_.edd_per_week_max) {
      out = DayType::Edd;
      uses_edd = true;
      return true;
    }
    return false;
  }

  bool try_day_close(const SearchState& s, const ActivityRecord& rec, Token t) {
    if (!in_interval(rec.duration_min, t, p_)) return false;
    bool segment_nonempty = s.seqs > 0 || s.seq_open;
    if (!segment_nonempty) return false;
    int total_seqs = s.seqs + (s.seq_open ? 1 : 0);
    DayType dt;
    bool uses_edd = false;
    if (!classify(s, total_seqs, dt, uses_edd)) return false;
    if (t == Token::DR_T2 && s.dr2 >= p_.daily_rest_reduced_per_week_max) return false;
    bool counts_period = (t != Token::DR_T3);
    if (counts_period && s.periods + 1 > p_.weekly_rest_deadline_days) return false;
    bool soft = false;
    if (counts_period) {
      bool past_deadline = rec.end - s.anchor > p_.daily_rest_deadline;
      if (past_deadline) {
        if (!allow_soft_) return false;
        soft = true;
      }
    }
    SearchState n = s;
    n.pending_b2 = false;
    n.seqs = 0;
    n.seq_drive = 0;
    n.seg_drive = 0;
    n.seq_open = false;
    n.edds = s.edds + (uses_edd ? 1 : 0);
    n.pos = s.pos + 1;
    if (t == Token::DR_T3) {
      n.dsp = true;  // anchor unchanged: the pair completes at its second half
    } else {
      n.dsp = false;
      n.periods = s.periods + 1;
      n.anchor = rec.end;
      if (t == Token::DR_T2) n.dr2 = s.dr2 + 1;
    }
    Move m;
    m.token = t;
    m.seq_close = s.seq_open;
    m.day_close = true;
    m.day_type = dt;
    m.soft = soft;
    return apply(n, m);
  }

  bool try_week_close(const SearchState& s, const ActivityRecord& rec, Token t) {
    if (!in_interval(rec.duration_min, t, p_)) return false;
    bool segment_nonempty = s.seqs > 0 || s.seq_open;
    if (!segment_nonempty) return false;
    if (s.periods + 1 > p_.weekly_rest_deadline_days) return false;
    int total_seqs = s.seqs + (s.seq_open ? 1 : 0);
    DayType dt;
    bool uses_edd = false;
    if (!classify(s, total_seqs, dt, uses_edd)) return false;
    bool soft = false;
    if (rec.start - s.anchor > p_.daily_rest_deadline) {
      if (!allow_soft_) return false;
      soft = true;
    }
    SearchState n = s;
    n.pending_b2 = false;
    n.seqs = 0;
    n.seq_drive = 0;
    n.seg_drive = 0;
    n.seq_open = false;
    n.dsp = false;
    n.periods = 0;
    n.edds = 0;
    n.dr2 = 0;
    n.anchor = rec.end;
    n.pos = s.pos + 1;
    Move m;
    m.token = t;
    m.seq_close = s.seq_open;
    m.day_close = true;
    m.week_close = true;
    m.day_type = dt;
    m.soft = soft;
    return apply(n, m);
  }

  const std::vector<ActivityRecord>& recs_;
  const RegulationParameters& p_;
  std::size_t begin_;
  SearchState init_;
  bool allow_soft_ = false;
  std::vector<Move> moves_;
  std::unordered_set<SearchState, SearchStateHash> failed_;
  SearchResult result_;
};

// Shared counters threaded through emission so numbering is cumulative.
struct Numbering {
  int week = 1;
  int day = 1;
};

// Fills contexts for rows [begin, begin+moves.size()) of a recognized parse.
void emit_parsed(std::vector<LabeledActivity>& labels, std::size_t begin,
                 const std::vector<Move>& moves, Numbering& num) {
  std::size_t i = 0;
  const std::size_t n = moves.size();
  while (i < n) {
    // Collect one day group: rows up to and including a day-closing move, or
    // the open remainder of the data.
    std::size_t j = i;
    while (j < n && !moves[j].day_close) ++j;
    bool closed = j < n;
    std::size_t end = closed ? j + 1 : n;

    // Assign sequence ordinals within the group. A day-closing rest that
    // follows a completed sequence with nothing in between attaches to that
    // sequence instead of opening a new one.
    std::vector<int> seq_idx(end - i, 0);
    int closed_seqs = 0;
    int rows_in_cur = 0;
    for (std::size_t r = i; r < end; ++r) {
      const Move& m = moves[r];
      if (m.day_close && rows_in_cur == 0 && closed_seqs > 0) {
        seq_idx[r - i] = closed_seqs - 1;
        continue;
      }
      seq_idx[r - i] = closed_seqs;
      ++rows_in_cur;
      if (m.seq_close || m.day_close) {
        ++closed_seqs;
        rows_in_cur = 0;
      }
    }
    int total_seqs = closed_seqs + (rows_in_cur > 0 ? 1 : 0);

    DayType dt;
    if (closed) {
      dt = moves[j].day_type;
    } else {
      dt = total_seqs <= 2 ? DayType::Ndd : DayType::Edd;  // tentative open day
    }
    // A day whose rest only missed its deadline keeps its activities legal;
    // the late rest itself carries the illegality.
    bool soft_close = closed && moves[j].soft;

    // Per-sequence break style from the split-first position, if any.
    std::vector<BreakStyle> style(end - i, BreakStyle::Uninterrupted);
    for (int sq = 0; sq < total_seqs; ++sq) {
      std::ptrdiff_t split_at = -1;
      for (std::size_t r = i; r < end; ++r) {
        if (seq_idx[r - i] == sq && moves[r].token == Token::B_T2) {
          split_at = static_cast<std::ptrdiff_t>(r);
          break;
        }
      }
      bool seq_closed = sq < closed_seqs;
      for (std::size_t r = i; r < end; ++r) {
        if (seq_idx[r - i] != sq) continue;
        if (split_at >= 0) {
          style[r - i] = static_cast<std::ptrdiff_t>(r) <= split_at ? BreakStyle::Split1
                                                                    : BreakStyle::Split2;
        } else {
          // An open trailing sequence has not yet reached its closing break,
          // so its rows still sit in the first part.
          style[r - i] = seq_closed ? BreakStyle::Uninterrupted : BreakStyle::Split1;
        }
      }
    }

    for (std::size_t r = i; r < end; ++r) {
      ContextSet& c = labels[begin + r].contexts;
      c.week = num.week;
      c.day = num.day;
      c.day_type = dt;
      c.token = moves[r].token;
      c.legal = !(soft_close && r == j);
      int sq = seq_idx[r - i];
      if (closed && total_seqs == 1) {
        c.sequence = SequencePos::Unique;
      } else {
        c.sequence = sq == 0 ? SequencePos::First
                             : (sq == 1 ? SequencePos::Second : SequencePos::Third);
      }
      c.break_type = style[r - i];
    }

    if (closed) {
      ++num.day;
      if (moves[j].week_close) ++num.week;
    }
    i = end;
  }
}

// Locally tags an unparseable stretch: tokens by duration class, split parts
// by local break structure, everything else unknown and illegal.
void emit_block(std::vector<LabeledActivity>& labels, std::size_t begin, std::size_t end,
                const RegulationParameters& p, Numbering& num) {
  std::size_t count = end - begin;
  std::vector<Token> tok(count, Token::A);
  std::vector<bool> closes(count, false);
  bool pending = false;
  for (std::size_t r = 0; r < count; ++r) {
    const ActivityRecord& rec = labels[begin + r].record;
    if (rec.kind != ActivityKind::Break) continue;
    const auto d = rec.duration_min;
    Token t = Token::Unknown;
    if (in_interval(d, Token::B_T0, p)) {
      t = Token::B_T0;
    } else if (pending && in_interval(d, Token::B_T3, p)) {
      t = Token::B_T3;
      pending = false;
      closes[r] = true;
    } else if (!pending && in_interval(d, Token::B_T1, p)) {
      t = Token::B_T1;
      closes[r] = true;
    } else if (in_interval(d, Token::B_T2, p)) {
      t = Token::B_T2;  // a repeated first half keeps the split pending
      pending = true;
    } else if (in_interval(d, Token::DR_T1, p)) {
      t = Token::DR_T1;
    } else if (in_interval(d, Token::DR_T2, p)) {
      t = Token::DR_T2;
    } else if (in_interval(d, Token::DR_T3, p)) {
      t = Token::DR_T3;
    } else if (in_interval(d, Token::WR_T2, p)) {
      t = Token::WR_T2;
    } else if (in_interval(d, Token::WR_T1, p)) {
      t = Token::WR_T1;
    }
    tok[r] = t;
    if (rest_class(t)) {
      closes[r] = true;
      pending = false;
    }
  }

  // Local sequence extents for break styles: a close row ends its stretch.
  std::vector<BreakStyle> style(count, BreakStyle::Unknown);
  std::size_t s0 = 0;
  while (s0 < count) {
    std::size_t s1 = s0;
    while (s1 < count && !closes[s1]) ++s1;
    bool closed = s1 < count;
    std::size_t sEnd = closed ? s1 + 1 : count;
    std::ptrdiff_t split_at = -1;
    for (std::size_t r = s0; r < sEnd; ++r) {
      if (tok[r] == Token::B_T2) {
        split_at = static_cast<std::ptrdiff_t>(r);
        break;
      }
    }
    for (std::size_t r = s0; r < sEnd; ++r) {
      if (split_at >= 0) {
        style[r] = static_cast<std::ptrdiff_t>(r) <= split_at ? BreakStyle::Split1
                                                              : BreakStyle::Split2;
      } else {
        style[r] = closed ? BreakStyle::Uninterrupted : BreakStyle::Unknown;
      }
    }
    s0 = sEnd;
  }

  for (std::size_t r = 0; r < count; ++r) {
    ContextSet& c = labels[begin + r].contexts;
    c.week = num.week;
    c.day = num.day;
    c.day_type = DayType::Unknown;
    c.sequence = SequencePos::Unknown;
    c.break_type = style[r];
    c.token = tok[r];
    c.legal = false;
    if (rest_class(tok[r])) {
      ++num.day;
      if (weekly_class(tok[r])) ++num.week;
    }
  }
}

}  // namespace

std::vector<LabeledActivity> label_log(const DriverLog& log, const RegulationParameters& params) {
  std::vector<LabeledActivity> labels;
  labels.reserve(log.records.size());
  for (const auto& rec : log.records) {
    LabeledActivity la;
    la.record = rec;
    labels.push_back(la);
  }
  const std::size_t n = labels.size();
  if (n == 0) return labels;

  Numbering num;
  WeekBudgets budgets;
  std::size_t pos = 0;
  Minutes anchor = log.records[0].start;
  bool dsp = false;

  while (pos < n) {
    Searcher searcher(log.records, params, pos, anchor, dsp, budgets);
    SearchResult res = searcher.run();
    if (res.full) {
      emit_parsed(labels, pos, res.moves, num);
      break;
    }
    if (res.best_m > pos) {
      emit_parsed(labels, pos, res.moves, num);
      pos = res.best_m;
      anchor = res.state_at_m.anchor;
      dsp = res.state_at_m.dsp;
      budgets.periods = res.state_at_m.periods;
      budgets.edds = res.state_at_m.edds;
      budgets.dr2 = res.state_at_m.dr2;
      if (pos >= n) break;
    }
    // No complete day is recognizable from pos: scan for the first resume
    // point from which at least one day (or the whole remainder) parses.
    std::size_t chosen = n;
    for (std::size_t q = pos + 1; q < n; ++q) {
      Searcher probe(log.records, params, q, log.records[q].start, false, budgets);
      SearchResult rp = probe.run();
      if (rp.full || rp.best_m > q) {
        chosen = q;
        break;
      }
    }
    emit_block(labels, pos, chosen, params, num);
    pos = chosen;
    if (pos < n) {
      anchor = log.records[pos].start;
      dsp = false;
    }
  }
  return labels;
}

std::string explain_parse(const std::vector<LabeledActivity>& labels) {
  if (labels.empty()) return "";
  std::ostringstream out;
  int cur_week = -1;
  std::size_t i = 0;
  const std::size_t n = labels.size();
  auto activity_line = [](const LabeledActivity& la) {
    std::ostringstream line;
    line << format_timestamp(la.record.start) << ' ' << to_string(la.record.kind) << ' '
         << la.record.duration_min << ' ' << to_string(la.contexts.token);
    return line.str();
  };
  while (i < n) {
    bool block = labels[i].contexts.day_type == DayType::Unknown;
    std::size_t j = i;
    if (block) {
      while (j < n && labels[j].contexts.day_type == DayType::Unknown) ++j;
    } else {
      int day = labels[i].contexts.day;
      while (j < n && labels[j].contexts.day == day &&
             labels[j].contexts.day_type != DayType::Unknown) {
        ++j;
      }
    }
    if (labels[i].contexts.week != cur_week) {
      cur_week = labels[i].contexts.week;
      out << "week " << cur_week << '\n';
    }
    if (block) {
      out << "  unrecognised block (" << (j - i) << " activities)\n";
      for (std::size_t r = i; r < j; ++r) out << "    " << activity_line(labels[r]) << '\n';
    } else {
      out << "  day " << labels[i].contexts.day << ": " << to_string(labels[i].contexts.day_type);
      if (!labels[j - 1].contexts.legal) out << " (rest past deadline)";
      out << '\n';
      std::size_t r = i;
      while (r < j) {
        std::size_t s = r;
        while (s < j && labels[s].contexts.sequence == labels[r].contexts.sequence) ++s;
        out << "    sequence: " << to_string(labels[r].contexts.sequence) << '\n';
        for (std::size_t q = r; q < s; ++q) out << "      " << activity_line(labels[q]) << '\n';
        r = s;
      }
    }
    i = j;
  }
  return out.str();
}

namespace {

const char* const kLabelledHeader =
    "Driver,Start,End,Duration,Activity,Week,Day,DayType,Sequence,BreakType,Token,Legal";

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

void write_labelled_csv(const std::vector<LabeledActivity>& labels, std::ostream& out,
                        bool include_infraction_column) {
  out << kLabelledHeader;
  if (include_infraction_column) out << ",Infraction";
  out << '\n';
  for (const auto& la : labels) {
    const auto& r = la.record;
    const auto& c = la.contexts;
    out << r.driver_id << ',' << format_timestamp(r.start) << ',' << format_timestamp(r.end) << ','
        << r.duration_min << ',' << to_string(r.kind) << ',' << c.week << ',' << c.day << ','
        << to_string(c.day_type) << ',' << to_string(c.sequence) << ',' << to_string(c.break_type)
        << ',' << to_string(c.token) << ',' << (c.legal ? "yes" : "no");
    if (include_infraction_column) {
      std::string text = la.infraction;
      bool quote = text.find(',') != std::string::npos || text.find('"') != std::string::npos;
      if (quote) {
        std::string escaped;
        for (char ch : text) {
          if (ch == '"') escaped += '"';
          escaped += ch;
        }
        out << ",\"" << escaped << '"';
      } else {
        out << ',' << text;
      }
    }
    out << '\n';
  }
}

std::vector<LabeledActivity> read_labelled_csv(std::istream& in) {
  std::string line;
  std::size_t row = 1;
  if (!std::getline(in, line)) throw InputError("missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  bool with_infraction = false;
  if (line == std::string(kLabelledHeader) + ",Infraction") {
    with_infraction = true;
  } else if (line != kLabelledHeader) {
    throw InputError("unexpected header \"" + line + "\"", 1);
  }
  std::vector<LabeledActivity> out;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f = split_fields(line);
    std::size_t expected = with_infraction ? 13u : 12u;
    if (f.size() < expected) {
      throw InputError("expected " + std::to_string(expected) + " fields, found " +
                           std::to_string(f.size()),
                       row);
    }
    LabeledActivity la;
    la.record.driver_id = f[0];
    try {
      la.record.start = parse_timestamp(f[1]);
      la.record.end = parse_timestamp(f[2]);
      la.record.duration_min = std::stoll(f[3]);
      la.record.kind = activity_kind_from_string(f[4]);
      la.contexts.week = std::stoi(f[5]);
      la.contexts.day = std::stoi(f[6]);
      la.contexts.day_type = day_type_from_string(f[7]);
      la.contexts.sequence = sequence_pos_from_string(f[8]);
      la.contexts.break_type = break_style_from_string(f[9]);
      la.contexts.token = token_from_string(f[10]);
      if (f[11] == "yes") {
        la.contexts.legal = true;
      } else if (f[11] == "no") {
        la.contexts.legal = false;
      } else {
        throw std::invalid_argument("legality must be yes or no, found \"" + f[11] + "\"");
      }
    } catch (const std::logic_error& e) {  // invalid_argument and out_of_range
      throw InputError(e.what(), row, f[0]);
    }
    if (with_infraction) {
      // Re-join in case the free-text column contained commas.
      std::string text = f[12];
      for (std::size_t k = 13; k < f.size(); ++k) text += "," + f[k];
      if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
        std::string unq;
        for (std::size_t k = 1; k + 1 < text.size(); ++k) {
          if (text[k] == '"' && k + 2 < text.size() && text[k + 1] == '"') {
            unq += '"';
            ++k;
          } else {
            unq += text[k];
          }
        }
        text = unq;
      }
      la.infraction = text;
    }
    out.push_back(la);
  }
  return out;
}

}  // namespace hos
