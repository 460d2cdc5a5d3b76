#include "udb/parallel.hpp"

#include <algorithm>
#include <cstdlib>

namespace udb {

int worker_count() {
    int n = (int)std::thread::hardware_concurrency();
    if (n <= 0) n = 1;
    if (const char* env = std::getenv("UDB_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return n;
}

}  // namespace udb
