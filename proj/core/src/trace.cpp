#include "osborne/trace.hpp"

#include <cstdio>
#include <ostream>

#include "osborne/sparse_matrix.hpp"

namespace osborne {

namespace {

void append_double(std::string& row, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  row += buf;
}

}  // namespace

CsvTraceWriter::CsvTraceWriter(std::ostream& os) : os_(os) {}

void CsvTraceWriter::on_step(const StepRecord& r, const RunView& view) {
  if (!header_written_) {
    os_ << "t,s,index,drop,f,grad_norm,active_count\n";
    header_written_ = true;
  }
  const int n = view.matrix ? view.matrix->size() : 0;
  if (n > 64 && r.t % n != 0) return;

  std::string row;
  row += std::to_string(r.t);
  row += ',';
  row += std::to_string(r.phase);
  row += ',';
  row += std::to_string(r.index);
  row += ',';
  append_double(row, r.drop);
  row += ',';
  append_double(row, r.objective);
  row += ',';
  append_double(row, r.grad_norm);
  row += ',';
  row += std::to_string(r.active_count);
  row += '\n';
  os_ << row;
}

}  // namespace osborne
