#ifndef MLEI_LOG_HPP
#define MLEI_LOG_HPP

#include <string>

namespace mlei::log {

// Diagnostics only, never results.  MLEI_BO_LOG=off|info|debug (default
// off); messages go to stderr.
enum class level { off = 0, info = 1, debug = 2 };

level threshold();
bool enabled(level l);
void write(level l, const std::string& message);

inline void info(const std::string& message)
{
    write(level::info, message);
}

inline void debug(const std::string& message)
{
    write(level::debug, message);
}

} // namespace mlei::log

#endif
