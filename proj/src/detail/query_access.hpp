#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "moddenoise/bounds.hpp"
#include "moddenoise/errors.hpp"

namespace moddenoise::detail {

template <typename T>
T need(const std::optional<T>& field, std::string_view name, std::string_view context) {
  if (!field) {
    throw Error(ErrorKind::parameter, std::string(context) + " needs field '" +
                                          std::string(name) + "'");
  }
  return *field;
}

#define MD_NEED(q, field, context) ::moddenoise::detail::need((q).field, #field, context)

/// Checks k, lambda_{n-k} and lambda_{n-k+1} form a valid gap.
void check_gap(const BoundQuery& q, std::string_view context);

}  // namespace moddenoise::detail
