#include "densecount/errors.hpp"

#include <fmt/format.h>

namespace densecount {

ParseError::ParseError(std::string source, std::size_t line, std::string field,
                       const std::string& message)
    : Error(line > 0 ? fmt::format("{}:{}: {}: {}", source, line, field, message)
                     : fmt::format("{}: {}: {}", source, field, message)),
      source_(std::move(source)),
      line_(line),
      field_(std::move(field)) {}

ValidationError::ValidationError(const std::string& message,
                                 std::vector<std::string> offenders)
    : Error(offenders.empty()
                ? message
                : fmt::format("{} ({} offender{}; first: {})", message, offenders.size(),
                              offenders.size() == 1 ? "" : "s", offenders.front())),
      offenders_(std::move(offenders)) {}

}  // namespace densecount
