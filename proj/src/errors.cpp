#include "relqi/errors.hpp"

#include <iostream>
#include <mutex>

namespace relqi {

namespace {

std::mutex& handler_mutex() {
    static std::mutex m;
    return m;
}

WarningHandler& handler_slot() {
    static WarningHandler h;
    return h;
}

}  // namespace

WarningHandler set_warning_handler(WarningHandler handler) {
    std::lock_guard lock(handler_mutex());
    WarningHandler previous = std::move(handler_slot());
    handler_slot() = std::move(handler);
    return previous;
}

void warn(std::string_view message) {
    std::lock_guard lock(handler_mutex());
    if (handler_slot()) {
        handler_slot()(message);
    } else {
        std::cerr << "relqi warning: " << message << '\n';
    }
}

}  // namespace relqi
