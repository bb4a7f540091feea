#pragma once

namespace mdpc {

inline constexpr const char* kVersion = "0.1.0";

// Version tag stamped into every JSON/CSV artifact this library writes.
inline constexpr int kSchemaVersion = 1;

}  // namespace mdpc
