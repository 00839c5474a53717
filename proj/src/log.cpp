#include "mlei/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <mutex>

namespace mlei::log {

level threshold()
{
    static const level cached = [] {
        const char* env = std::getenv("MLEI_BO_LOG");
        if (!env || std::strcmp(env, "off") == 0 || env[0] == '\0')
            return level::off;
        if (std::strcmp(env, "info") == 0)
            return level::info;
        if (std::strcmp(env, "debug") == 0)
            return level::debug;
        std::fprintf(stderr, "[mlei] ignoring unknown MLEI_BO_LOG value '%s'\n", env);
        return level::off;
    }();
    return cached;
}

bool enabled(level l)
{
    return static_cast<int>(l) <= static_cast<int>(threshold());
}

void write(level l, const std::string& message)
{
    if (!enabled(l))
        return;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    std::fprintf(stderr, "[mlei] %s\n", message.c_str());
}

} // namespace mlei::log
