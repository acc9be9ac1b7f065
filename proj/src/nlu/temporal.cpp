#include <algorithm>
#include <array>
#include <charconv>

#include "dietbot/nlu.hpp"

namespace dietbot {

namespace {

struct MonthName {
  std::string_view name;
  unsigned month;
};

constexpr std::array<MonthName, 24> kMonths = {{
    {"january", 1},   {"jan", 1},  {"february", 2}, {"feb", 2},   {"march", 3},
    {"mar", 3},       {"april", 4}, {"apr", 4},     {"may", 5},   {"june", 6},
    {"jun", 6},       {"july", 7},  {"jul", 7},     {"august", 8}, {"aug", 8},
    {"september", 9}, {"sep", 9},   {"sept", 9},    {"october", 10}, {"oct", 10},
    {"november", 11}, {"nov", 11},  {"december", 12}, {"dec", 12},
}};

constexpr std::array<std::string_view, 7> kWeekdays = {
    "monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday"};

constexpr std::array<std::string_view, 11> kNumberWords = {
    "zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten"};

constexpr std::array<std::string_view, 4> kOrdinalWords = {"first", "second", "third", "fourth"};

std::optional<unsigned> month_of(std::string_view tok) {
  for (const auto& m : kMonths) {
    if (m.name == tok) return m.month;
  }
  return std::nullopt;
}

std::optional<int> plain_number(std::string_view tok) {
  if (tok.empty() || tok.size() > 4) return std::nullopt;
  int v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) return std::nullopt;
  return v;
}

std::optional<int> count_word(std::string_view tok) {
  if (auto n = plain_number(tok)) return n;
  for (std::size_t i = 0; i < kNumberWords.size(); ++i) {
    if (kNumberWords[i] == tok) return static_cast<int>(i);
  }
  return std::nullopt;
}

/// "3", "3rd", "21st".
std::optional<int> day_number(std::string_view tok) {
  std::string_view digits = tok;
  if (tok.size() > 2) {
    std::string_view suffix = tok.substr(tok.size() - 2);
    if (suffix == "st" || suffix == "nd" || suffix == "rd" || suffix == "th") {
      digits = tok.substr(0, tok.size() - 2);
    }
  }
  if (digits.empty() || digits.size() > 2) return std::nullopt;
  return plain_number(digits);
}

bool looks_iso(std::string_view tok) {
  if (tok.size() != 10 || tok[4] != '-' || tok[7] != '-') return false;
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
    if (tok[i] < '0' || tok[i] > '9') return false;
  }
  return true;
}

struct Match {
  std::size_t first_token;
  std::size_t last_token;  // inclusive
  std::vector<DateRange> ranges;
};

struct Malformed {
  std::string diagnostic;
};

class Scanner {
 public:
  Scanner(const Utterance& u, std::vector<Token> tokens) : u_(u), t_(std::move(tokens)) {}

  std::vector<Match> matches;
  std::optional<Malformed> malformed;

  void run() {
    std::size_t i = 0;
    while (i < t_.size()) {
      std::size_t used = try_at(i);
      i += used == 0 ? 1 : used;
    }
  }

 private:
  std::string_view tok(std::size_t i) const {
    return i < t_.size() ? std::string_view(t_[i].text) : std::string_view{};
  }

  void add(std::size_t first, std::size_t n, std::vector<DateRange> ranges) {
    matches.push_back({first, first + n - 1, std::move(ranges)});
  }

  std::optional<DateRange> diary_week(int n) const {
    if (!u_.diary_start || n < 1) return std::nullopt;
    Date start = u_.diary_start->plus_days(7L * (n - 1));
    return DateRange{start, start.plus_days(6)};
  }

  DateRange relative_week(std::string_view which) const {
    DateRange current = DateRange::iso_week_of(u_.reference_date);
    if (which == "this" || which == "current") return current;
    return DateRange::iso_week_of(u_.reference_date.plus_days(-7));
  }

  // Month-day without a year resolves to its most recent occurrence on or before the reference date.
  std::size_t calendar_date(std::size_t i, unsigned month, int day, std::size_t used) {
    std::optional<int> year;
    if (auto y = plain_number(tok(i + used)); y && tok(i + used).size() == 4) {
      year = *y;
      ++used;
    }
    int y = year.value_or(u_.reference_date.year());
    auto date = Date::from_ymd(y, month, static_cast<unsigned>(day));
    if (!year && date && *date > u_.reference_date) date = Date::from_ymd(y - 1, month, static_cast<unsigned>(day));
    if (!date) {
      std::string raw(u_.text.substr(t_[i].begin, t_[i + used - 1].end - t_[i].begin));
      malformed = Malformed{"'" + raw + "' is not a valid calendar date"};
      return used;
    }
    add(i, used, {DateRange::single(*date)});
    return used;
  }

  /// Returns the number of tokens consumed (0 when nothing matches at i).
  std::size_t try_at(std::size_t i) {
    const std::string_view w = tok(i);

    if (w == "today") {
      add(i, 1, {DateRange::single(u_.reference_date)});
      return 1;
    }
    if (w == "yesterday") {
      add(i, 1, {DateRange::single(u_.reference_date.plus_days(-1))});
      return 1;
    }

    // N days ago
    if (auto n = count_word(w); n && (tok(i + 1) == "days" || tok(i + 1) == "day") && tok(i + 2) == "ago") {
      add(i, 3, {DateRange::single(u_.reference_date.plus_days(-*n))});
      return 3;
    }

    // this/last week; "this and last week"
    auto is_rel = [](std::string_view x) {
      return x == "this" || x == "last" || x == "previous" || x == "current";
    };
    if (is_rel(w) && tok(i + 1) == "and" && is_rel(tok(i + 2)) && tok(i + 3) == "week") {
      add(i, 4, {relative_week(w), relative_week(tok(i + 2))});
      return 4;
    }
    if (is_rel(w) && tok(i + 1) == "week") {
      add(i, 2, {relative_week(w)});
      return 2;
    }

    // week 1, week one, weeks 1 and 2, first week
    if (w == "week" || w == "weeks") {
      if (auto n = count_word(tok(i + 1))) {
        if (tok(i + 2) == "and") {
          if (auto m = count_word(tok(i + 3))) {
            auto a = diary_week(*n);
            auto b = diary_week(*m);
            if (a && b) {
              add(i, 4, {*a, *b});
              return 4;
            }
          }
        }
        if (auto r = diary_week(*n)) {
          add(i, 2, {*r});
          return 2;
        }
      }
    }
    for (std::size_t k = 0; k < kOrdinalWords.size(); ++k) {
      if (w == kOrdinalWords[k] && tok(i + 1) == "week") {
        if (auto r = diary_week(static_cast<int>(k) + 1)) {
          add(i, 2, {*r});
          return 2;
        }
      }
    }

    // Weekday names: most recent such day strictly before the reference date.
    {
      std::size_t at = (w == "last" || w == "past") ? i + 1 : i;
      for (std::size_t k = 0; k < kWeekdays.size(); ++k) {
        if (tok(at) == kWeekdays[k]) {
          const long target = static_cast<long>(k) + 1;
          long back = static_cast<long>(u_.reference_date.iso_weekday()) - target;
          if (back <= 0) back += 7;
          add(i, at - i + 1, {DateRange::single(u_.reference_date.plus_days(-back))});
          return at - i + 1;
        }
      }
    }

    // 2021-06-03
    if (looks_iso(w)) {
      if (auto d = Date::parse_iso(w)) {
        add(i, 1, {DateRange::single(*d)});
      } else {
        malformed = Malformed{"'" + std::string(w) + "' is not a valid calendar date"};
      }
      return 1;
    }

    // June 3 / June 3rd 2021
    if (auto m = month_of(w)) {
      if (auto d = day_number(tok(i + 1))) return calendar_date(i, *m, *d, 2);
    }
    // 3 June / 3rd of June
    if (auto d = day_number(w)) {
      if (auto m = month_of(tok(i + 1))) return calendar_date(i, *m, *d, 2);
      if (tok(i + 1) == "of") {
        if (auto m2 = month_of(tok(i + 2))) return calendar_date(i, *m2, *d, 3);
      }
    }
    return 0;
  }

  const Utterance& u_;
  std::vector<Token> t_;
};

}  // namespace

TimeParse parse_time(const Utterance& u) {
  auto tokens = tokenize(u.text);
  Scanner scan(u, tokens);
  scan.run();

  TimeParse out;
  if (scan.malformed) {
    out.needs_clarification = true;
    out.diagnostic = scan.malformed->diagnostic;
    return out;
  }

  std::vector<DateRange> distinct;
  std::size_t first_tok = 0, last_tok = 0;
  for (const Match& m : scan.matches) {
    for (const DateRange& r : m.ranges) {
      if (distinct.size() == 2) break;
      if (std::find(distinct.begin(), distinct.end(), r) != distinct.end()) continue;
      if (distinct.empty()) first_tok = m.first_token;
      distinct.push_back(r);
      last_tok = m.last_token;
    }
  }
  if (distinct.empty()) return out;

  TemporalExpression expr{
      u.text.substr(tokens[first_tok].begin, tokens[last_tok].end - tokens[first_tok].begin),
      distinct[0], std::nullopt};
  if (distinct.size() == 2) expr.second = distinct[1];
  out.expression = std::move(expr);
  return out;
}

}  // namespace dietbot
