#ifndef RCALC_RUNTIME_HPP
#define RCALC_RUNTIME_HPP

namespace rcalc::runtime {

// Global switch between the serial reference kernels and the OpenMP ones.
// Both return bit-identical results; tests assert it, rcalc-bench times it.
void set_parallel(bool on);
bool parallel();

int thread_count();

}  // namespace rcalc::runtime

#endif
