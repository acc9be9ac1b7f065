#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace dietbot {

/// Timezone-free calendar date. Thin value wrapper over std::chrono::sys_days.
class Date {
 public:
  constexpr Date() = default;
  constexpr explicit Date(std::chrono::sys_days days) : days_(days) {}
  constexpr Date(int y, unsigned m, unsigned d)
      : days_(std::chrono::year_month_day{std::chrono::year{y}, std::chrono::month{m},
                                          std::chrono::day{d}}) {}

  /// Returns nullopt for anything but a valid YYYY-MM-DD calendar date.
  static std::optional<Date> parse_iso(std::string_view text);
  static std::optional<Date> from_ymd(int y, unsigned m, unsigned d);

  std::string iso() const;
  /// "June 3" style, used in generated prose and quiz utterances.
  std::string month_day() const;

  constexpr std::chrono::sys_days days() const { return days_; }
  std::chrono::year_month_day ymd() const { return std::chrono::year_month_day{days_}; }
  int year() const { return static_cast<int>(ymd().year()); }
  unsigned month() const { return static_cast<unsigned>(ymd().month()); }
  unsigned day() const { return static_cast<unsigned>(ymd().day()); }
  /// 1 = Monday ... 7 = Sunday.
  unsigned iso_weekday() const { return std::chrono::weekday{days_}.iso_encoding(); }

  Date plus_days(long n) const { return Date{days_ + std::chrono::days{n}}; }
  long days_until(Date other) const { return (other.days_ - days_).count(); }

  friend constexpr auto operator<=>(const Date&, const Date&) = default;

 private:
  std::chrono::sys_days days_{};
};

/// Inclusive calendar range. Construction enforces start <= end.
class DateRange {
 public:
  DateRange(Date start, Date end);
  static DateRange single(Date d) { return DateRange{d, d}; }
  /// Monday-start ISO week containing `d`.
  static DateRange iso_week_of(Date d);

  Date start() const { return start_; }
  Date end() const { return end_; }
  long day_count() const { return start_.days_until(end_) + 1; }
  bool contains(Date d) const { return start_ <= d && d <= end_; }
  bool intersects(const DateRange& other) const {
    return !(other.end_ < start_ || end_ < other.start_);
  }

  /// "2021-06-14..2021-06-20", or a single ISO date for one-day ranges.
  std::string iso() const;
  /// Human form: "June 3" or "June 14 - June 20".
  std::string describe() const;

  friend bool operator==(const DateRange&, const DateRange&) = default;

 private:
  Date start_;
  Date end_;
};

}  // namespace dietbot
