#ifndef CUBIC_MW_VERSION_HPP
#define CUBIC_MW_VERSION_HPP


namespace cubic_mw {

inline constexpr const char* kToolName = "cubic-mw";
inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace cubic_mw

#endif
