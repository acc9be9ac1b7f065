#include "dietbot/date.hpp"

#include <array>
#include <charconv>
#include <cstdio>

#include "dietbot/errors.hpp"

namespace dietbot {

namespace {

constexpr std::array<const char*, 12> kMonthNames = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};

bool parse_digits(std::string_view s, int& out) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

std::optional<Date> Date::from_ymd(int y, unsigned m, unsigned d) {
  std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!ymd.ok()) return std::nullopt;
  return Date{std::chrono::sys_days{ymd}};
}

std::optional<Date> Date::parse_iso(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0, m = 0, d = 0;
  if (!parse_digits(text.substr(0, 4), y) || !parse_digits(text.substr(5, 2), m) ||
      !parse_digits(text.substr(8, 2), d)) {
    return std::nullopt;
  }
  return from_ymd(y, static_cast<unsigned>(m), static_cast<unsigned>(d));
}

std::string Date::iso() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year(), month(), day());
  return buf;
}

std::string Date::month_day() const {
  return std::string(kMonthNames[month() - 1]) + " " + std::to_string(day());
}

DateRange::DateRange(Date start, Date end) : start_(start), end_(end) {
  if (end < start) {
    throw ValidationError("date range start " + start.iso() + " is after end " + end.iso());
  }
}

DateRange DateRange::iso_week_of(Date d) {
  Date monday = d.plus_days(1 - static_cast<long>(d.iso_weekday()));
  return DateRange{monday, monday.plus_days(6)};
}

std::string DateRange::iso() const {
  if (start_ == end_) return start_.iso();
  return start_.iso() + ".." + end_.iso();
}

std::string DateRange::describe() const {
  if (start_ == end_) return start_.month_day();
  return start_.month_day() + " - " + end_.month_day();
}

}  // namespace dietbot
