#pragma once

namespace pdc {

inline constexpr const char* version = "0.1.0";

}
