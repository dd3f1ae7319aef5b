#include "chordal/parallel.hpp"

namespace chordal {

namespace {
std::atomic<int> g_jobs{1};
}

int parallelism() { return g_jobs.load(); }

void set_parallelism(int jobs) { g_jobs.store(std::max(1, jobs)); }

}  // namespace chordal
