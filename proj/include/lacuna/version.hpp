#ifndef LACUNA_VERSION_HPP
#define LACUNA_VERSION_HPP

namespace lacuna {

inline constexpr const char* kVersion = "0.1.0";

}

#endif
