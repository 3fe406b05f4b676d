#include "mphase/trace.hpp"

#include <cstdio>
#include <fstream>

#include "mphase/errors.hpp"

namespace mphase {

namespace {

void emit(const std::string& path, const char* header,
          const std::vector<std::array<double, 3>>& rows, bool first_is_index) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << header << "\n";
    char buf[96];
    for (const auto& row : rows) {
        if (first_is_index)
            std::snprintf(buf, sizeof buf, "%ld,%.17g,%.17g", static_cast<long>(row[0]), row[1],
                          row[2]);
        else
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g", row[0], row[1], row[2]);
        out << buf << "\n";
    }
    if (!out) throw IoError("write failed for " + path);
}

} // namespace

void emit_solver_trace(const std::string& path,
                       const std::vector<std::array<double, 3>>& rows) {
    emit(path, "iter,energy,grad_residual", rows, true);
}

void emit_evolution_trace(const std::string& path,
                          const std::vector<std::array<double, 3>>& rows) {
    emit(path, "step,delta_max,energy", rows, true);
}

} // namespace mphase
