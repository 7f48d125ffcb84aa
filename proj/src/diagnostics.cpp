#include "stargraph/diagnostics.hpp"

#include <cstdio>
#include <mutex>
#include <string>
#include <utility>

namespace stargraph {

namespace {

std::mutex& handler_mutex() {
  static std::mutex m;
  return m;
}

WarningHandler& handler() {
  static WarningHandler h = [](std::string_view message) {
    std::fprintf(stderr, "warning: %.*s\n", static_cast<int>(message.size()), message.data());
  };
  return h;
}

}  // namespace

void set_warning_handler(WarningHandler h) {
  std::lock_guard lock(handler_mutex());
  handler() = std::move(h);
}

ScopedWarningHandler::ScopedWarningHandler(WarningHandler h) {
  std::lock_guard lock(handler_mutex());
  previous_ = std::exchange(handler(), std::move(h));
}

ScopedWarningHandler::~ScopedWarningHandler() {
  std::lock_guard lock(handler_mutex());
  handler() = std::move(previous_);
}

void warn(std::string_view message) {
  std::lock_guard lock(handler_mutex());
  if (handler()) handler()(message);
}

}  // namespace stargraph
