#include "factory/core/component.hpp"

#include "factory/core/error.hpp"
#include "factory/core/time.hpp"

namespace factory::core {

ComponentId::ComponentId(std::string id) : id_(std::move(id)) {
  if (id_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "component id must not be empty");
  }
}

TimeInterval::TimeInterval(TimePoint first, TimePoint second) : first_(first), second_(second) {
  if (second_ < first_) {
    throw Error(ErrorCode::InvalidArgument, "time interval ends before it starts");
  }
}

}  // namespace factory::core
