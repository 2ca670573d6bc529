// Wall-time comparison of the OpenMP kernels against their serial reference
// implementations.  Exact equality of the outputs is asserted: the parallel
// path must be a pure reordering of the same rational arithmetic.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "rvl/catalog.hpp"
#include "rvl/games.hpp"
#include "rvl/qp.hpp"
#include "rvl/report.hpp"

using namespace rvl;

namespace {

void row(const std::string& name, double serialMs, double parallelMs, bool match) {
  std::printf("%-52s %10.1f %12.1f %8.2fx   %s\n", name.c_str(), serialMs, parallelMs,
              serialMs / parallelMs, match ? "exact" : "MISMATCH");
  if (!match) std::exit(1);
}

void benchEntries(const std::string& name, RowFamily family, int m, long long n,
                  const std::vector<TypeProfile>& columns) {
  const auto rows = rowsForFamily(family, m, n);
  Stopwatch s1;
  const auto serial = buildEntriesSerial(rows, columns, n);
  const double serialMs = s1.elapsedMs();
  Stopwatch s2;
  const auto parallel = buildEntriesParallel(rows, columns, n);
  const double parallelMs = s2.elapsedMs();
  row(name + " (" + std::to_string(rows.size()) + " x " + std::to_string(columns.size()) +
          ")",
      serialMs, parallelMs, serial == parallel);
}

void benchQP(const std::string& name, const QuadraticProgram& qp) {
  Stopwatch s1;
  const QPCertificate serial = minimizeQPSerial(qp);
  const double serialMs = s1.elapsedMs();
  Stopwatch s2;
  const QPCertificate parallel = minimizeQP(qp, true);
  const double parallelMs = s2.elapsedMs();
  const bool match = serial.minValue == parallel.minValue &&
                     serial.argmin == parallel.argmin &&
                     serial.zeroMask == parallel.zeroMask &&
                     serial.tightMask == parallel.tightMask &&
                     serial.facesExamined == parallel.facesExamined;
  row(name + " (" + std::to_string(serial.facesExamined) + " faces)", serialMs,
      parallelMs, match);
}

}  // namespace

int main() {
  std::printf("%-52s %10s %12s %9s   %s\n", "kernel", "serial ms", "parallel ms",
              "speedup", "outputs");
  benchEntries("game entries, full family, 3 candidates, 5 voters", RowFamily::O, 3, 5,
               enumerateTypeProfiles(3, 5, true));
  benchEntries("game entries, catalogue columns, 23000 voters", RowFamily::O, 3, 23000,
               thm6Catalogue());
  benchQP("QP face enumeration, 12-simplex ratio program",
          buildOrdinalRatioQP({Rat(1, 4), Rat(0), Rat(3, 4)}, Rat(203, 1250), false));
  return 0;
}
