#include "dietbot/insights.hpp"

namespace dietbot {

namespace {

DateRange preceding(const DateRange& r) {
  return DateRange{r.start().plus_days(-r.day_count()), r.start().plus_days(-1)};
}

/// Earlier period first; comparisons read "a -> b".
std::pair<DateRange, DateRange> ordered_pair(const TemporalExpression& t) {
  DateRange a = t.first;
  DateRange b = t.second.value_or(preceding(t.first));
  if (b.start() < a.start()) std::swap(a, b);
  return {a, b};
}

void add_advanced(const FoodDiary& diary, const DateRange& period, const MetricSet& metrics,
                  const InsightKindSet& kinds, const Thresholds& th, InsightBundle& out) {
  for (InsightKind kind : kinds) {
    switch (kind) {
      case InsightKind::intake:
        for (Metric m : metrics) out.assessments.emplace_back(assess_intake(diary, m, period, th));
        break;
      case InsightKind::trend_consistency:
        if (period.day_count() < 3) {
          out.notes.push_back({BundleNote::Kind::period_too_short, period});
          break;
        }
        for (Metric m : metrics) {
          out.assessments.emplace_back(detect_trend(diary, m, period, th));
          out.assessments.emplace_back(assess_consistency(diary, m, period, th));
        }
        break;
      case InsightKind::food:
        for (Metric m : metrics) out.assessments.emplace_back(rank_food_impact(diary, m, period));
        break;
    }
  }
}

}  // namespace

ParsedQuery apply_defaults(ParsedQuery q, const FoodDiary& diary,
                           const std::optional<TemporalExpression>& carried) {
  if (q.metrics.empty()) q.metrics.insert(Metric::calories);
  const bool compare = q.intent.kind == IntentKind::compare;

  if (!q.time && carried) {
    q.time = carried;
    if (compare && !q.time->is_pair()) {
      q.time->second = preceding(q.time->first);
    } else if (!compare && q.time->is_pair()) {
      auto [a, b] = ordered_pair(*q.time);
      q.time = TemporalExpression{q.time->raw, b, std::nullopt};
    }
  }
  if (!q.time) {
    auto first = diary.first_date();
    auto last = diary.last_date();
    if (!first || !last) return q;
    if (compare) {
      q.time = TemporalExpression{"", DateRange{*first, first->plus_days(6)},
                                  DateRange{first->plus_days(7), first->plus_days(13)}};
    } else {
      q.time = TemporalExpression{"", DateRange::single(*last), std::nullopt};
    }
  }
  return q;
}

InsightBundle build_advanced_bundle(const FoodDiary& diary, const ParsedQuery& query,
                                    const InsightKindSet& kinds, const Thresholds& th) {
  InsightBundle out;
  out.query = query;
  if (!query.time) {
    out.notes.push_back({BundleNote::Kind::no_data, std::nullopt});
    return out;
  }
  if (query.time->is_pair()) {
    auto [a, b] = ordered_pair(*query.time);
    add_advanced(diary, a, query.metrics, kinds, th, out);
    add_advanced(diary, b, query.metrics, kinds, th, out);
  } else {
    add_advanced(diary, query.time->first, query.metrics, kinds, th, out);
  }
  return out;
}

InsightBundle build_bundle(const FoodDiary& diary, const ParsedQuery& query, const Thresholds& th) {
  InsightBundle out;
  out.query = query;
  switch (query.intent.kind) {
    case IntentKind::basic_report:
      if (!query.time) {
        out.notes.push_back({BundleNote::Kind::no_data, std::nullopt});
        break;
      }
      for (Metric m : query.metrics) {
        out.assessments.emplace_back(assess_intake(diary, m, query.time->first, th));
      }
      break;

    case IntentKind::advanced_insight: {
      InsightKindSet kinds = query.insight_kinds;
      if (kinds.empty()) kinds = {kAllInsightKinds.begin(), kAllInsightKinds.end()};
      return build_advanced_bundle(diary, query, kinds, th);
    }

    case IntentKind::compare: {
      if (!query.time) {
        out.notes.push_back({BundleNote::Kind::no_data, std::nullopt});
        break;
      }
      auto [a, b] = ordered_pair(*query.time);
      for (Metric m : query.metrics) {
        out.assessments.emplace_back(compare_ranges(diary, m, a, b, th));
      }
      if (!query.insight_kinds.empty()) {
        InsightBundle adv = build_advanced_bundle(diary, query, query.insight_kinds, th);
        out.assessments.insert(out.assessments.end(), adv.assessments.begin(),
                               adv.assessments.end());
        out.notes.insert(out.notes.end(), adv.notes.begin(), adv.notes.end());
      }
      break;
    }

    case IntentKind::more_insights:
    case IntentKind::greet:
    case IntentKind::help:
    case IntentKind::out_of_scope:
      break;
  }
  return out;
}

}  // namespace dietbot
