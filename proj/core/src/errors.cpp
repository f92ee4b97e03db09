#include "towercert/errors.hpp"

#include <iostream>
#include <mutex>

namespace towercert {

void log_warning(const std::string& message) {
  static std::mutex mu;
  std::lock_guard lock(mu);
  std::clog << "warning: " << message << '\n';
}

}  // namespace towercert
