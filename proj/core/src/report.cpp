#include "osborne/report.hpp"

#include <cstdio>

namespace osborne {

namespace {

void put_double(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

void put_string(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
}

void put_field(std::string& out, const char* name) {
  put_string(out, name);
  out += ':';
}

void put_vector(std::string& out, const std::vector<double>& v) {
  out += '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    put_double(out, v[i]);
  }
  out += ']';
}

void put_int_vector(std::string& out, const std::vector<int>& v) {
  out += '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  out += ']';
}

}  // namespace

std::string report_to_json(const RunReport& r) {
  std::string out;
  out.reserve(1024 + 24 * r.x.size());
  out += '{';
  put_field(out, "variant");
  put_string(out, r.variant);
  out += ',';
  put_field(out, "epsilon");
  put_double(out, r.epsilon);
  out += ',';
  put_field(out, "p");
  put_double(out, r.p);
  out += ',';
  put_field(out, "seed");
  out += std::to_string(r.seed);
  out += ',';
  put_field(out, "n");
  out += std::to_string(r.n);
  out += ',';
  put_field(out, "termination");
  put_string(out, r.termination);
  out += ',';
  put_field(out, "outer_exit");
  put_string(out, r.outer_exit);
  out += ',';
  put_field(out, "exit_code");
  out += std::to_string(r.exit_code);
  out += ',';
  put_field(out, "steps_total");
  out += std::to_string(r.steps_total);
  out += ',';
  put_field(out, "steps_productive");
  out += std::to_string(r.steps_productive);
  out += ',';
  put_field(out, "phases");
  out += std::to_string(r.phases);
  out += ',';
  put_field(out, "reactivations");
  out += std::to_string(r.reactivations);
  out += ',';
  put_field(out, "f_initial");
  put_double(out, r.f_initial);
  out += ',';
  put_field(out, "f_final");
  put_double(out, r.f_final);
  out += ',';
  put_field(out, "max_imbalance");
  put_double(out, r.max_imbalance);
  out += ',';
  put_field(out, "max_imbalance_user");
  put_double(out, r.max_imbalance_user);
  out += ',';
  put_field(out, "wall_seconds");
  put_double(out, r.wall_seconds);
  out += ',';
  put_field(out, "components");
  out += '[';
  for (std::size_t k = 0; k < r.components.size(); ++k) {
    const ComponentReport& c = r.components[k];
    if (k) out += ',';
    out += '{';
    put_field(out, "id");
    out += std::to_string(c.id);
    out += ',';
    put_field(out, "nodes");
    put_int_vector(out, c.nodes);
    out += ',';
    put_field(out, "status");
    put_string(out, c.status);
    out += ',';
    put_field(out, "steps_total");
    out += std::to_string(c.steps_total);
    out += ',';
    put_field(out, "steps_productive");
    out += std::to_string(c.steps_productive);
    out += ',';
    put_field(out, "phases");
    out += std::to_string(c.phases);
    out += ',';
    put_field(out, "reactivations");
    out += std::to_string(c.reactivations);
    out += ',';
    put_field(out, "max_imbalance");
    put_double(out, c.max_imbalance);
    out += ',';
    put_field(out, "f_initial");
    put_double(out, c.f_initial);
    out += ',';
    put_field(out, "f_final");
    put_double(out, c.f_final);
    out += '}';
  }
  out += "],";
  put_field(out, "x");
  put_vector(out, r.x);
  out += ',';
  put_field(out, "x_user");
  put_vector(out, r.x_user);
  out += '}';
  return out;
}

}  // namespace osborne
