#include "weibias/data_file.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <vector>

namespace weibias {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  const char delimiter = line.find(',') != std::string_view::npos    ? ','
                         : line.find('\t') != std::string_view::npos ? '\t'
                         : line.find(';') != std::string_view::npos  ? ';'
                                                                      : ' ';
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(delimiter, start);
    const auto field = trim(line.substr(start, pos - start));
    if (!(delimiter == ' ' && field.empty())) fields.push_back(field);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

}  // namespace

CensoredSample parse_data(std::istream& in, std::string_view source) {
  std::vector<double> values;
  std::vector<std::uint8_t> indicators;
  std::optional<double> censor_time;
  std::optional<bool> has_indicator;
  bool seen_record = false;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      auto body = trim(line.substr(1));
      constexpr std::string_view key = "censor_time";
      if (body.starts_with(key)) {
        body = trim(body.substr(key.size()));
        if (body.empty() || body.front() != '=') {
          throw ParseError(source, line_no, "expected '# censor_time=<value>'");
        }
        const auto c = to_double(body.substr(1));
        if (!c || !(*c > 0.0)) throw ParseError(source, line_no, "censor_time must be positive");
        censor_time = *c;
      }
      continue;
    }
    const auto fields = split_fields(line);
    if (!seen_record && !to_double(fields.front())) {
      // Header line such as `value,delta`.
      seen_record = true;
      continue;
    }
    seen_record = true;
    if (fields.size() > 2) throw ParseError(source, line_no, "expected at most two columns");
    const bool with_indicator = fields.size() == 2;
    if (has_indicator && *has_indicator != with_indicator) {
      throw ParseError(source, line_no, "inconsistent number of columns");
    }
    has_indicator = with_indicator;

    const auto value = to_double(fields[0]);
    if (!value) throw ParseError(source, line_no, "value is not a number");
    if (!(*value > 0.0) || !std::isfinite(*value)) {
      throw ParseError(source, line_no, "value must be positive and finite");
    }
    std::uint8_t delta = 1;
    if (with_indicator) {
      const auto d = to_double(fields[1]);
      if (!d || (*d != 0.0 && *d != 1.0)) {
        throw ParseError(source, line_no, "indicator must be 0 or 1");
      }
      delta = static_cast<std::uint8_t>(*d);
    }
    values.push_back(*value);
    indicators.push_back(delta);
  }

  if (values.empty()) throw ParseError(source, 0, "no records");

  const bool any_censored = std::find(indicators.begin(), indicators.end(), 0) != indicators.end();
  if (!any_censored && !censor_time) return CensoredSample::complete(std::move(values));
  if (!censor_time) {
    double c = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!indicators[i]) c = std::max(c, values[i]);
    }
    censor_time = c;
  }
  try {
    return CensoredSample::censored(std::move(values), std::move(indicators), *censor_time);
  } catch (const DomainError& e) {
    throw ParseError(source, 0, e.what());
  }
}

CensoredSample read_data_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string(), 0, "cannot open file");
  return parse_data(in, path.string());
}

}  // namespace weibias
