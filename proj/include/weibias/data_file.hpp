#pragma once

// Delimited text data files:
//
//   # censor_time=52        optional metadata line
//   value,delta             optional header
//   9,1
//   52,0
//
// One record per line, `value[,indicator]`. Blank lines and other `#` lines
// are ignored. Without an indicator column the data are complete; a censored
// file without censor_time metadata takes c = the largest censored value.

#include <cstddef>
#include <filesystem>
#include <istream>
#include <string>
#include <string_view>

#include "weibias/errors.hpp"
#include "weibias/weibull.hpp"

namespace weibias {

class ParseError : public Error {
 public:
  ParseError(std::string_view source, std::size_t line, const std::string& message)
      : Error(std::string(source) + (line ? ":" + std::to_string(line) : std::string()) + ": " +
              message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

CensoredSample parse_data(std::istream& in, std::string_view source = "<input>");
CensoredSample read_data_file(const std::filesystem::path& path);

}  // namespace weibias
