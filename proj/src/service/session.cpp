#include <algorithm>
#include <fstream>

#include "dietbot/errors.hpp"
#include "dietbot/insights.hpp"
#include "dietbot/service.hpp"

namespace dietbot {

using nlohmann::json;

namespace {

std::string brace_free(std::string s) {
  std::replace(s.begin(), s.end(), '{', '(');
  std::replace(s.begin(), s.end(), '}', ')');
  return s;
}

}  // namespace

Session::Session(std::string id, DiarySource source, std::optional<Date> reference_date,
                 const Planner& planner, const NluRules& rules, Thresholds thresholds)
    : diary_(source.load()), planner_(&planner), rules_(&rules), thresholds_(thresholds) {
  if (reference_date) {
    reference_date_ = *reference_date;
  } else if (auto last = diary_.last_date()) {
    reference_date_ = *last;
  } else {
    throw ValidationError("reference_date is required for an empty diary");
  }
  transcript_.session_id = std::move(id);
  transcript_.source = std::move(source);
  transcript_.reference_date = reference_date_;
  record(std::nullopt, planner_->say("greeting", "default"));
}

std::vector<Message> Session::handle(const InboundEvent& event) {
  std::vector<Message> out;
  try {
    switch (event.type) {
      case InboundEvent::Type::user_text: out = on_text(event.text); break;
      case InboundEvent::Type::button_toggle: out = on_toggle(event.insight); break;
      case InboundEvent::Type::button_submit: out = on_submit(); break;
    }
  } catch (const RealizationError&) {
    throw;
  } catch (const Error&) {
    out = planner_->say("clarification", "empty_bundle");
  }
  if (out.empty()) out = planner_->say("clarification", "empty_bundle");
  record(event, out);
  return out;
}

std::vector<Message> Session::on_text(const std::string& text) {
  // Typing while buttons are open abandons the selection.
  state_.mode = Mode::idle;
  state_.pending = {};

  const ParsedQuery q = parse_query(Utterance{text, reference_date_, diary_.first_date()}, *rules_);
  if (q.needs_clarification) {
    std::string detail = q.clarification.empty() ? "the date was not recognized" : q.clarification;
    return planner_->say("clarification", "malformed_date", {{"detail", brace_free(detail)}});
  }
  switch (q.intent.kind) {
    case IntentKind::greet: return planner_->say("greeting", "default");
    case IntentKind::help: return planner_->say("help", "default");
    case IntentKind::out_of_scope: return planner_->say("help", "out_of_scope");
    case IntentKind::more_insights:
      state_.mode = Mode::awaiting_button_submit;
      state_.pending = planner_->default_buttons();
      return {planner_->buttons_message(state_.pending, "prompt")};
    case IntentKind::basic_report:
    case IntentKind::advanced_insight:
    case IntentKind::compare:
      break;
  }
  return answer(q);
}

std::vector<Message> Session::answer(const ParsedQuery& q) {
  std::optional<TemporalExpression> carried;
  if (state_.last_query) carried = state_.last_query->time;
  ParsedQuery full = apply_defaults(q, diary_, carried);
  InsightBundle bundle = build_bundle(diary_, full, thresholds_);
  state_.last_query = std::move(full);
  return planner_->plan(bundle).messages;
}

ParsedQuery Session::base_query() const {
  ParsedQuery q;
  if (state_.last_query) q = *state_.last_query;
  q.intent = {IntentKind::advanced_insight, 1.0};
  q.insight_kinds.clear();
  if (!state_.last_query) q = apply_defaults(q, diary_);
  return q;
}

std::vector<Message> Session::on_toggle(InsightKind kind) {
  if (state_.mode == Mode::idle) return planner_->say("buttons", "idle");
  state_.pending.toggle(kind);
  return {planner_->buttons_message(state_.pending, "updated")};
}

std::vector<Message> Session::on_submit() {
  if (state_.mode == Mode::idle) return planner_->say("buttons", "idle");
  const InsightKindSet kinds = state_.pending.selected();
  if (kinds.empty()) return {planner_->buttons_message(state_.pending, "empty_selection")};

  InsightBundle bundle = build_advanced_bundle(diary_, base_query(), kinds, thresholds_);
  state_.mode = Mode::idle;
  state_.pending = {};
  return planner_->plan(bundle).messages;
}

void Session::record(std::optional<InboundEvent> event, const std::vector<Message>& messages) {
  Turn turn{std::move(event), {}};
  for (const Message& m : messages) turn.messages.push_back(message_to_wire(m));
  transcript_.turns.push_back(std::move(turn));
}

ChatService::ChatService(ServiceConfig config) : config_(std::move(config)) {
  if (config_.templates_path) own_catalog_ = TemplateCatalog::load(*config_.templates_path);
  if (config_.rules_path) own_rules_ = NluRules::load(*config_.rules_path);
  planner_ = std::make_unique<Planner>(own_catalog_ ? *own_catalog_ : TemplateCatalog::bundled(),
                                       NlgOptions{config_.ascii_only});
  rules_ = own_rules_ ? &*own_rules_ : &NluRules::bundled();
}

ChatService::~ChatService() = default;

std::shared_ptr<ChatService::Slot> ChatService::find(const std::string& id) const {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw SessionError("unknown session '" + id + "'");
  return it->second;
}

ChatService::Created ChatService::create_session(const DiarySource& source,
                                                 std::optional<Date> reference_date) {
  auto slot = std::make_shared<Slot>();
  std::lock_guard slot_lock(slot->mu);
  {
    std::lock_guard lock(mu_);
    const std::string id = "s" + std::to_string(next_id_);
    slot->session = std::make_unique<Session>(id, source, reference_date, *planner_, *rules_,
                                              config_.thresholds);
    ++next_id_;
    sessions_.emplace(id, slot);
  }
  const Session& s = *slot->session;
  log_turn(s);
  return {s.id(), s.transcript().turns.front().messages};
}

std::vector<json> ChatService::handle_event(const std::string& session_id,
                                            const InboundEvent& event) {
  auto slot = find(session_id);
  std::lock_guard lock(slot->mu);
  std::vector<Message> messages = slot->session->handle(event);
  std::vector<json> wire = publish(*slot->session, messages);
  log_turn(*slot->session);
  return wire;
}

std::vector<json> ChatService::publish(const Session& s, const std::vector<Message>& messages) {
  {
    std::lock_guard lock(mu_);
    for (const Message& m : messages) {
      if (m.chart) charts_.emplace(m.chart_id, *m.chart);
    }
  }
  return s.transcript().turns.back().messages;
}

void ChatService::log_turn(const Session& s) {
  if (!config_.transcript_log) return;
  const Transcript& t = s.transcript();
  json line = {{"session_id", t.session_id}, {"turn", t.turns.size() - 1}};
  if (t.turns.size() == 1) {
    json head = transcript_to_json(t);
    line["source"] = head["source"];
    line["reference_date"] = head["reference_date"];
  }
  const Turn& turn = t.turns.back();
  line["event"] = turn.event ? event_to_json(*turn.event) : json(nullptr);
  line["messages"] = turn.messages;

  std::lock_guard lock(log_mu_);
  std::ofstream out(*config_.transcript_log, std::ios::app);
  if (!out) throw Error("cannot append to transcript log " + config_.transcript_log->string());
  out << line.dump() << '\n';
}

Transcript ChatService::transcript(const std::string& session_id) const {
  auto slot = find(session_id);
  std::lock_guard lock(slot->mu);
  return slot->session->transcript();
}

ConversationState ChatService::state(const std::string& session_id) const {
  auto slot = find(session_id);
  std::lock_guard lock(slot->mu);
  return slot->session->state();
}

std::optional<std::string> ChatService::chart_svg(const std::string& chart_id) const {
  std::optional<ChartSpec> spec;
  {
    std::lock_guard lock(mu_);
    auto it = charts_.find(chart_id);
    if (it == charts_.end()) return std::nullopt;
    spec = it->second;
  }
  return render(*spec);
}

Transcript ChatService::replay(const Transcript& t) {
  const Created created = create_session(t.source, t.reference_date);
  for (const Turn& turn : t.turns) {
    if (turn.event) handle_event(created.session_id, *turn.event);
  }
  return transcript(created.session_id);
}

}  // namespace dietbot
