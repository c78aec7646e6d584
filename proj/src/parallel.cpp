#include "heatkern/parallel.hpp"

#include <cstdlib>
#include <string>

namespace heatkern {

int thread_count() {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("HEATKERN_THREADS")) {
        try {
            const int cap = std::stoi(env);
            if (cap >= 1) n = std::min(n, cap);
        } catch (const std::exception&) {
            // unparsable: ignore the cap
        }
    }
    return n;
}

}  // namespace heatkern
