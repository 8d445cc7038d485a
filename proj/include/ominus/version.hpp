#ifndef OMINUS_VERSION_HPP
#define OMINUS_VERSION_HPP

namespace ominus {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
