#include "talbot/errors.hpp"

namespace talbot {

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e) != nullptr) return 2;
    return 3;
}

} // namespace talbot
