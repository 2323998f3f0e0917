#include "tshuf/config.hpp"

#include <cstdlib>
#include <string>

#include "tshuf/error.hpp"
#include "tshuf/laurent.hpp"

namespace tshuf {

Settings& settings() {
    static Settings s;
    return s;
}

namespace {

int parse_env_int(const char* name, int lo, int hi) {
    const char* v = std::getenv(name);
    if (!v) return -1;
    try {
        std::size_t pos = 0;
        const int x = std::stoi(v, &pos);
        if (pos != std::string(v).size() || x < lo || x > hi) throw std::out_of_range(name);
        return x;
    } catch (const std::exception&) {
        throw InvalidArgument(std::string("bad value for ") + name + ": " + v);
    }
}

}  // namespace

void load_env_overrides() {
    if (int cap = parse_env_int("TSHUF_ARITY_CAP", 1, kMaxArity); cap >= 0)
        settings().arity_cap = cap;
    if (int b = parse_env_int("TSHUF_TRUNC_BOUND", 0, 1 << 20); b >= 0)
        settings().trunc_bound = b;
}

void check_arity_cap(int n, const char* what) {
    const int cap = settings().arity_cap.load();
    if (n > cap)
        throw ArityCapExceeded(std::string(what) + " at arity " + std::to_string(n) +
                               " exceeds the arity cap " + std::to_string(cap));
}

}  // namespace tshuf
