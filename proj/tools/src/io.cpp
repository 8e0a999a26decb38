#include "isosing_cli/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "isosing/error.hpp"

namespace isosing::cli {

namespace fs = std::filesystem;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "': " + std::strerror(errno));
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read error on '" + path + "'");
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "': " + std::strerror(errno));
  out << text;
  out.flush();
  if (!out) throw IoError("write error on '" + path + "'");
}

std::string join_path(const std::string& dir, const std::string& name) {
  if (fs::path(name).is_absolute()) return name;
  return (fs::path(dir) / name).string();
}

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir + "'");
}

namespace {

void put(std::string& s, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  s += buf;
}

bool parse_double(const std::string& field, double* out) {
  if (field.empty()) return false;
  char* end = nullptr;
  errno = 0;
  double v = std::strtod(field.c_str(), &end);
  if (errno == ERANGE || end != field.c_str() + field.size() || !std::isfinite(v)) return false;
  *out = v;
  return true;
}

}  // namespace

std::string profile_csv(const RadialProfile& prof) {
  std::vector<double> r = prof.r(), u = prof.u(), ur = prof.u_r();
  std::string s = "t,r,w,w_t,u,u_r\n";
  for (std::size_t i = 0; i < prof.size(); ++i) {
    for (double v : {prof.t[i], r[i], prof.w[i], prof.w_t[i], u[i], ur[i]}) {
      put(s, v);
      s += ',';
    }
    s.back() = '\n';
  }
  return s;
}

std::string field_csv(const Field2D& f) {
  std::string s = "t,r,theta,w,w_t,u\n";
  for (std::size_t i = 0; i < f.n_t(); ++i) {
    double S = f.branch.S(f.params, f.t[i]);
    for (int j = 0; j < f.n_theta; ++j) {
      double w = f.at(i, j);
      double wt = f.w_t[i * static_cast<std::size_t>(f.n_theta) + static_cast<std::size_t>(j)];
      for (double v : {f.t[i], std::exp(f.t[i]), f.theta(j), w, wt, w - S}) {
        put(s, v);
        s += ',';
      }
      s.back() = '\n';
    }
  }
  return s;
}

RadialProfile parse_profile_csv(const std::string& text, const ProblemParams& p, const Branch& br, bool emden) {
  auto fail = [](const std::string& m) -> void { throw Error(ErrorKind::InvalidInput, "profile CSV: " + m); };
  if (text.empty() || text.back() != '\n') fail("missing final newline (truncated file?)");
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  if (line != "t,r,w,w_t,u,u_r") fail("header must be 't,r,w,w_t,u,u_r'");
  RadialProfile prof;
  prof.params = p;
  prof.branch = br;
  prof.emden = emden;
  std::vector<double> r_col, u_col;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<double> v;
    std::size_t pos = 0;
    while (true) {
      std::size_t c = line.find(',', pos);
      std::string field = line.substr(pos, c == std::string::npos ? std::string::npos : c - pos);
      double x;
      if (!parse_double(field, &x)) fail("bad number on line " + std::to_string(lineno));
      v.push_back(x);
      if (c == std::string::npos) break;
      pos = c + 1;
    }
    if (v.size() != 6) fail("line " + std::to_string(lineno) + " needs 6 columns");
    prof.t.push_back(v[0]);
    r_col.push_back(v[1]);
    prof.w.push_back(v[2]);
    prof.w_t.push_back(v[3]);
    u_col.push_back(v[4]);
  }
  if (prof.t.size() < 16) fail("fewer than 16 rows");
  prof.check();
  for (std::size_t i = 0; i < prof.size(); ++i) {
    double t = prof.t[i];
    if (std::fabs(r_col[i] - std::exp(t)) > 1e-12 * std::exp(t)) fail("r column disagrees with e^t");
    double u = prof.w[i] - br.S(p, t);
    if (std::fabs(u_col[i] - u) > 1e-9 * (1.0 + std::fabs(u)))
      fail("u column disagrees with w under branch " + to_string(br));
  }
  if (std::fabs(prof.t.back()) > 1e-12) fail("grid must end at t = 0");
  return prof;
}

namespace {

void dump(const nlohmann::json& j, std::string& s, int indent) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  std::string pad_in(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        s += "{}";
        return;
      }
      s += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) s += ",\n";
        first = false;
        s += pad_in + nlohmann::json(it.key()).dump() + ": ";
        dump(it.value(), s, indent + 1);
      }
      s += "\n" + pad + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        s += "[]";
        return;
      }
      s += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) s += ",\n";
        s += pad_in;
        dump(j[i], s, indent + 1);
      }
      s += "\n" + pad + "]";
      return;
    }
    case nlohmann::json::value_t::number_float: {
      double v = j.get<double>();
      if (!std::isfinite(v)) {
        s += "null";
      } else {
        put(s, v);
      }
      return;
    }
    default:
      s += j.dump();
  }
}

}  // namespace

std::string dump_json(const nlohmann::json& j) {
  std::string s;
  dump(j, s, 0);
  s += '\n';
  return s;
}

}  // namespace isosing::cli
