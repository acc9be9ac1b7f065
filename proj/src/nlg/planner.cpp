#include <type_traits>

#include "dietbot/nlg.hpp"

namespace dietbot {

using nlohmann::json;

namespace {

std::string seed_of(const Assessment& a) {
  if (const auto* c = std::get_if<ComparisonResult>(&a)) {
    return std::string(metric_id(c->metric)) + "|" + c->period_a.iso() + "|" + c->period_b.iso();
  }
  const DateRange& period = std::visit(
      [](const auto& x) -> const DateRange& {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, ComparisonResult>) {
          return x.period_b;
        } else {
          return x.period;
        }
      },
      a);
  return std::string(metric_id(assessment_metric(a))) + "|" + period.iso();
}

const char* note_variant(BundleNote::Kind k) {
  return k == BundleNote::Kind::period_too_short ? "period_too_short" : "no_data";
}

}  // namespace

std::string Planner::realize_key(std::string_view kind, std::string_view variant,
                                 const SlotValues& slots, std::string_view seed_text,
                                 std::string_view emoji) const {
  const Template& t = catalog_->get(kind, variant);
  const std::size_t pick = static_cast<std::size_t>(fnv1a64(seed_text) % t.patterns.size());
  return realize(t.patterns[pick], slots, options_.ascii_only ? std::string_view{} : emoji);
}

std::string Planner::realize_assessment(const Assessment& a) const {
  auto [kind, variant] = template_key(a);
  return realize_key(kind, variant, slots_for(a), seed_of(a), catalog_->emoji(emoji_key(a)));
}

void Planner::emit_text(std::string_view text, const json& payload, MessagePlan& out) const {
  for (std::string& piece : split(text)) {
    Message m;
    m.kind = MessageKind::text;
    m.delay_ms = compute_delay(piece);
    m.text = std::move(piece);
    m.machine_payload = payload;
    out.messages.push_back(std::move(m));
  }
}

Message Planner::chart_message(ChartSpec spec, json payload) const {
  Message m;
  m.kind = MessageKind::chart;
  m.text = spec.title;
  m.delay_ms = compute_delay(spec.title);
  m.chart_id = chart_id(spec);
  m.chart = std::move(spec);
  m.machine_payload = std::move(payload);
  return m;
}

MessagePlan Planner::plan(const InsightBundle& bundle) const {
  MessagePlan out;
  if (bundle.assessments.empty() && bundle.notes.empty()) {
    for (Message& m : say("clarification", "empty_bundle")) out.messages.push_back(std::move(m));
    return out;
  }

  std::vector<const Assessment*> intake, trend, food, comparison;
  for (const Assessment& a : bundle.assessments) {
    switch (a.index()) {
      case 0: intake.push_back(&a); break;
      case 1:
      case 2: trend.push_back(&a); break;
      case 3: food.push_back(&a); break;
      default: comparison.push_back(&a); break;
    }
  }

  if (bundle.query.intent.kind == IntentKind::basic_report) {
    std::string text;
    json payload = json::array();
    for (const Assessment& a : bundle.assessments) {
      if (!text.empty()) text += '\n';
      text += realize_assessment(a);
      payload.push_back(assessment_to_json(a));
    }
    if (!text.empty()) emit_text(text, payload, out);
  } else {
    for (const Assessment* a : intake) {
      json payload = json::array({assessment_to_json(*a)});
      emit_text(realize_assessment(*a), payload, out);
      if (auto spec = spec_from_assessment(*a)) out.messages.push_back(chart_message(*spec, payload));
    }

    // A trend and the consistency check on the same series share one chart.
    for (std::size_t i = 0; i < trend.size(); ++i) {
      json payload = json::array({assessment_to_json(*trend[i])});
      emit_text(realize_assessment(*trend[i]), payload, out);
      const Assessment* charted = trend[i];
      if (i + 1 < trend.size() && trend[i]->index() == 1 && trend[i + 1]->index() == 2) {
        const auto& t = std::get<TrendAssessment>(*trend[i]);
        const auto& c = std::get<ConsistencyAssessment>(*trend[i + 1]);
        if (t.metric == c.metric && t.period == c.period) {
          json second = json::array({assessment_to_json(*trend[i + 1])});
          emit_text(realize_assessment(*trend[i + 1]), second, out);
          payload.push_back(second[0]);
          ++i;
        }
      }
      if (auto spec = spec_from_assessment(*charted)) {
        out.messages.push_back(chart_message(*spec, payload));
      }
    }

    for (const Assessment* a : food) {
      json payload = json::array({assessment_to_json(*a)});
      emit_text(realize_assessment(*a), payload, out);
      if (!std::get<FoodImpactRanking>(*a).ranked.empty()) {
        if (auto spec = spec_from_assessment(*a)) out.messages.push_back(chart_message(*spec, payload));
      }
    }

    if (!comparison.empty()) {
      json all = json::array();
      std::vector<ComparisonResult> results;
      for (const Assessment* a : comparison) {
        json payload = json::array({assessment_to_json(*a)});
        emit_text(realize_assessment(*a), payload, out);
        all.push_back(payload[0]);
        results.push_back(std::get<ComparisonResult>(*a));
      }
      out.messages.push_back(chart_message(spec_from_comparisons(results), std::move(all)));
    }
  }

  for (const BundleNote& note : bundle.notes) {
    SlotValues slots;
    if (note.period) slots["period"] = note.period->describe();
    json payload = json::array({{{"type", "note"}, {"note", note_variant(note.kind)}}});
    for (Message& m : say("note", note_variant(note.kind), slots, payload)) {
      out.messages.push_back(std::move(m));
    }
  }
  return out;
}

std::vector<Message> Planner::say(std::string_view kind, std::string_view variant,
                                  const SlotValues& slots, json payload) const {
  if (payload.empty()) {
    payload = json::array({{{"type", kind}, {"variant", variant}}});
  }
  MessagePlan out;
  emit_text(realize_key(kind, variant, slots, std::string(kind) + "|" + std::string(variant)),
            payload, out);
  return std::move(out.messages);
}

ButtonGroup Planner::default_buttons() const {
  ButtonGroup g;
  for (InsightKind k : kAllInsightKinds) {
    const std::string variant = "option_" + std::string(insight_kind_id(k));
    g.options.push_back({k, realize_key("buttons", variant, {}, variant), false});
  }
  g.submit_label = realize_key("buttons", "submit_label", {}, "submit_label");
  return g;
}

Message Planner::buttons_message(const ButtonGroup& group, std::string_view variant) const {
  std::string selected;
  for (const auto& o : group.options) {
    if (!o.checked) continue;
    if (!selected.empty()) selected += ", ";
    selected += o.label;
  }
  SlotValues slots{{"selected", selected.empty() ? "nothing yet" : selected}};

  Message m;
  m.kind = MessageKind::buttons;
  m.text = realize_key("buttons", variant, slots, "buttons|" + std::string(variant));
  m.delay_ms = compute_delay(m.text);
  m.buttons = group;
  json payload = buttons_to_json(group);
  payload["type"] = "buttons";
  payload["variant"] = variant;
  m.machine_payload = json::array({std::move(payload)});
  return m;
}

}  // namespace dietbot
