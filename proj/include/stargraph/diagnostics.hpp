#pragma once

#include <functional>
#include <string_view>

namespace stargraph {

using WarningHandler = std::function<void(std::string_view)>;

/// Replaces the process-wide warning handler. An empty handler silences
/// warnings; the default prints "warning: <message>" to stderr.
void set_warning_handler(WarningHandler handler);

void warn(std::string_view message);

}  // namespace stargraph

namespace stargraph {

/// Installs a handler for the lifetime of the object and restores the
/// default afterwards.
class ScopedWarningHandler {
 public:
  explicit ScopedWarningHandler(WarningHandler handler);
  ~ScopedWarningHandler();
  ScopedWarningHandler(const ScopedWarningHandler&) = delete;
  ScopedWarningHandler& operator=(const ScopedWarningHandler&) = delete;

 private:
  WarningHandler previous_;
};

}  // namespace stargraph
