#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <utility>

#include "dietbot/errors.hpp"
#include "dietbot/nlg.hpp"

namespace dietbot {

using nlohmann::json;

namespace {

std::string fixed(double v, int decimals, bool sign = false) {
  char buf[48];
  const double rounded = std::round(v * std::pow(10.0, decimals)) / std::pow(10.0, decimals);
  const double clean = rounded == 0.0 ? 0.0 : rounded;  // no "-0"
  std::snprintf(buf, sizeof buf, sign ? "%+.*f" : "%.*f", decimals, clean);
  return buf;
}

std::string when_of(const DateRange& r) {
  if (r.day_count() == 1) return "on " + r.start().month_day();
  return "from " + r.start().month_day() + " to " + r.end().month_day();
}

std::string capitalized(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

std::string status_phrase(IntakeStatus s) {
  switch (s) {
    case IntakeStatus::excess: return "in excess";
    case IntakeStatus::deficient: return "deficient";
    case IntakeStatus::balanced: return "balanced";
  }
  return "balanced";
}

std::string advice_phrase(Direction d) {
  switch (d) {
    case Direction::decrease: return "cut down";
    case Direction::increase: return "increase it";
    case Direction::hold: return "keep it steady";
  }
  return "keep it steady";
}

void add_common(SlotValues& s, Metric m, const DateRange& period) {
  s["metric"] = std::string(metric_id(m));
  s["unit"] = std::string(metric_unit(m));
  s["period"] = period.describe();
  s["when"] = when_of(period);
  s["when_cap"] = capitalized(when_of(period));
}

bool is_space(char c) { return c == ' ' || c == '\n' || c == '\t' || c == '\r'; }

/// Byte offset of the `n`th code point (or size when shorter).
std::size_t byte_at_char(std::string_view s, std::size_t n) {
  std::size_t chars = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) {
      if (chars == n) return i;
      ++chars;
    }
  }
  return s.size();
}

}  // namespace

std::string realize(std::string_view pattern, const SlotValues& slots, std::string_view emoji) {
  std::string out;
  out.reserve(pattern.size() + 32);
  std::size_t i = 0;
  while (i < pattern.size()) {
    const char c = pattern[i];
    if (c == '}') throw RealizationError("}");
    if (c != '{') {
      out += c;
      ++i;
      continue;
    }
    const std::size_t close = pattern.find('}', i + 1);
    if (close == std::string_view::npos) throw RealizationError("{");
    const std::string_view name = pattern.substr(i + 1, close - i - 1);
    auto it = slots.find(name);
    if (it == slots.end()) throw RealizationError(std::string(name));
    if (it->second.find_first_of("{}") != std::string::npos) {
      throw RealizationError(std::string(name));
    }
    out += it->second;
    i = close + 1;
  }
  if (!emoji.empty()) {
    out += ' ';
    out += emoji;
  }
  return out;
}

std::pair<std::string, std::string> template_key(const Assessment& a) {
  struct Visitor {
    std::pair<std::string, std::string> operator()(const IntakeAssessment& x) const {
      std::string kind = x.period.day_count() == 1 ? "intake_day" : "intake";
      return {kind, x.empty ? "empty" : std::string(status_id(x.status))};
    }
    std::pair<std::string, std::string> operator()(const TrendAssessment& x) const {
      return {"trend", x.matches_recommendation ? "match" : "mismatch"};
    }
    std::pair<std::string, std::string> operator()(const ConsistencyAssessment& x) const {
      return {"consistency", x.consistent ? "consistent" : "inconsistent"};
    }
    std::pair<std::string, std::string> operator()(const FoodImpactRanking& x) const {
      return {"food", x.ranked.empty() || x.total <= 0.0 ? "empty" : "top"};
    }
    std::pair<std::string, std::string> operator()(const ComparisonResult& x) const {
      return {"comparison", std::string(verdict_id(x.verdict))};
    }
  };
  return std::visit(Visitor{}, a);
}

std::string emoji_key(const Assessment& a) {
  auto [kind, variant] = template_key(a);
  if (variant == "empty") return "empty";
  if (kind == "trend") return variant == "match" ? "trend_match" : "trend_mismatch";
  if (kind == "food") return "food";
  return variant;
}

SlotValues slots_for(const Assessment& a) {
  SlotValues s;
  if (const auto* x = std::get_if<IntakeAssessment>(&a)) {
    add_common(s, x->metric, x->period);
    s["value"] = fixed(x->mean_daily, 0);
    s["target"] = fixed(x->target, 0);
    s["deviation_pct"] = fixed(x->deviation_pct, 1, true);
    s["status"] = status_phrase(x->status);
  } else if (const auto* t = std::get_if<TrendAssessment>(&a)) {
    add_common(s, t->metric, t->period);
    s["slope"] = fixed(t->slope, 0, true);
    s["target"] = fixed(t->target, 0);
    s["status"] = status_phrase(t->period_status);
    s["advice"] = advice_phrase(t->recommended_direction);
  } else if (const auto* c = std::get_if<ConsistencyAssessment>(&a)) {
    add_common(s, c->metric, c->period);
    s["mean"] = fixed(c->mean, 0);
    s["cv_pct"] = fixed(c->cv * 100.0, 1);
  } else if (const auto* r = std::get_if<FoodImpactRanking>(&a)) {
    add_common(s, r->metric, r->period);
    s["total"] = fixed(r->total, 0);
    if (!r->ranked.empty()) {
      s["food"] = r->ranked.front().food;
      s["amount"] = fixed(r->ranked.front().amount, 0);
      s["share_pct"] = fixed(r->ranked.front().share_pct, 1);
      s["grams"] = fixed(r->ranked.front().grams, 0);
    }
  } else {
    const auto& cmp = std::get<ComparisonResult>(a);
    add_common(s, cmp.metric, cmp.period_b);
    s["period_a"] = cmp.period_a.describe();
    s["period_b"] = cmp.period_b.describe();
    s["mean_a"] = fixed(cmp.mean_a, 0);
    s["mean_b"] = fixed(cmp.mean_b, 0);
    s["target"] = fixed(cmp.target, 0);
    s["abs_dev_a"] = fixed(cmp.abs_dev_a, 0);
    s["abs_dev_b"] = fixed(cmp.abs_dev_b, 0);
  }
  return s;
}

std::size_t char_count(std::string_view utf8) {
  return static_cast<std::size_t>(std::count_if(utf8.begin(), utf8.end(), [](char c) {
    return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  }));
}

std::vector<std::string> split(std::string_view text) {
  // Cut into sentences, remembering the whitespace run that follows each.
  struct Sentence {
    std::string_view body;
    std::string_view sep;
  };
  std::vector<Sentence> sentences;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (!is_space(text[i]) || i == start) continue;
    const char prev = text[i - 1];
    std::size_t j = i;
    bool newline = false;
    while (j < text.size() && is_space(text[j])) newline |= text[j++] == '\n';
    if (prev == '.' || prev == '!' || prev == '?' || newline) {
      sentences.push_back({text.substr(start, i - start), text.substr(i, j - i)});
      start = j;
    }
    i = j - 1;
  }
  if (start < text.size() || sentences.empty()) sentences.push_back({text.substr(start), {}});

  std::vector<std::string> pieces;
  std::string current;
  std::string_view last_sep;
  bool open = false;
  for (const Sentence& s : sentences) {
    std::string_view body = s.body;
    const std::string_view sep = std::exchange(last_sep, s.sep);
    if (open && char_count(current) + char_count(sep) + char_count(body) <= kMaxMessageChars) {
      current += sep;
      current += body;
      continue;
    }
    if (open) pieces.push_back(std::move(current));
    // Hard-wrap an over-long sentence at its last space before the limit.
    while (char_count(body) > kMaxMessageChars) {
      const std::size_t limit = byte_at_char(body, kMaxMessageChars);
      std::size_t cut = body.find_last_of(' ', limit);
      if (cut == std::string_view::npos || cut == 0) {
        pieces.emplace_back(body.substr(0, limit));
        body = body.substr(limit);
      } else {
        pieces.emplace_back(body.substr(0, cut));
        body = body.substr(cut + 1);
      }
    }
    current = std::string(body);
    open = true;
  }
  if (open && (!current.empty() || pieces.empty())) pieces.push_back(std::move(current));
  return pieces;
}

int compute_delay(std::string_view text) {
  const auto chars = static_cast<long long>(char_count(text));
  return static_cast<int>(std::clamp<long long>(kMinDelayMs + kDelayPerCharMs * chars, kMinDelayMs,
                                                kMaxDelayMs));
}

void ButtonGroup::toggle(InsightKind kind) {
  for (auto& o : options) {
    if (o.kind == kind) o.checked = !o.checked;
  }
}

InsightKindSet ButtonGroup::selected() const {
  InsightKindSet out;
  for (const auto& o : options) {
    if (o.checked) out.insert(o.kind);
  }
  return out;
}

std::string_view message_kind_id(MessageKind k) {
  switch (k) {
    case MessageKind::text: return "text";
    case MessageKind::chart: return "chart";
    case MessageKind::buttons: return "buttons";
  }
  return "text";
}

json buttons_to_json(const ButtonGroup& g) {
  json options = json::array();
  for (const auto& o : g.options) {
    options.push_back({{"insight", insight_kind_id(o.kind)}, {"label", o.label}, {"checked", o.checked}});
  }
  return {{"options", std::move(options)}, {"submit_label", g.submit_label}};
}

ButtonGroup buttons_from_json(const json& j) {
  ButtonGroup g;
  try {
    for (const auto& o : j.at("options")) {
      auto kind = insight_kind_from_id(o.at("insight").get<std::string>());
      if (!kind) throw ParseError("unknown insight in button group: " + o.at("insight").dump());
      g.options.push_back({*kind, o.at("label").get<std::string>(), o.at("checked").get<bool>()});
    }
    g.submit_label = j.at("submit_label").get<std::string>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed button group: ") + e.what());
  }
  return g;
}

}  // namespace dietbot
