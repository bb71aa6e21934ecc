#include "szegolab/io.hpp"

#include <fstream>
#include <sstream>

namespace szegolab {

Json real_to_json(const Real& r) { return r.to_string(); }

Real real_from_json(const Json& j, long bits) {
  if (j.is_string()) return Real::from_string(j.get<std::string>(), Prec{bits});
  if (j.is_number_integer()) return Real(j.get<long>(), Prec{bits});
  if (j.is_number_float()) return Real(j.get<double>(), Prec{bits});
  fail(ErrorCode::BadInput, "expected a number or numeric string");
}

Json cnum_to_json(const CNum& z) {
  return Json::array({real_to_json(z.re), real_to_json(z.im)});
}

CNum cnum_from_json(const Json& j, long bits) {
  if (!j.is_array() || j.size() != 2) {
    fail(ErrorCode::BadInput, "expected a [re, im] pair");
  }
  return CNum(real_from_json(j[0], bits), real_from_json(j[1], bits));
}

Json series_to_json(const std::vector<CNum>& c) {
  Json arr = Json::array();
  for (std::size_t n = 0; n < c.size(); ++n) {
    Json rec;
    rec["n"] = n;
    rec["re"] = real_to_json(c[n].re);
    rec["im"] = real_to_json(c[n].im);
    arr.push_back(std::move(rec));
  }
  return arr;
}

std::vector<CNum> series_from_json(const Json& j, long bits) {
  if (!j.is_array()) fail(ErrorCode::BadInput, "expected an array of records");
  std::vector<CNum> out;
  for (const Json& rec : j) {
    if (!rec.contains("n") || !rec.contains("re") || !rec.contains("im")) {
      fail(ErrorCode::BadInput, "record needs n, re, im fields");
    }
    long n = rec["n"].get<long>();
    if (n < 0) fail(ErrorCode::BadInput, "negative index in series record");
    if (static_cast<std::size_t>(n) >= out.size()) {
      out.resize(static_cast<std::size_t>(n) + 1, CNum(0, Prec{bits}));
    }
    out[static_cast<std::size_t>(n)] =
        CNum(real_from_json(rec["re"], bits), real_from_json(rec["im"], bits));
  }
  return out;
}

std::string series_to_csv(const std::vector<CNum>& c) {
  std::string out = "n,re,im\n";
  for (std::size_t n = 0; n < c.size(); ++n) {
    out += std::to_string(n);
    out += ',';
    out += c[n].re.to_string();
    out += ',';
    out += c[n].im.to_string();
    out += '\n';
  }
  return out;
}

std::vector<CNum> series_from_csv(const std::string& text, long bits) {
  std::vector<CNum> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("n,", 0) == 0) continue;  // header
    std::istringstream row(line);
    std::string ns, res, ims;
    if (!std::getline(row, ns, ',') || !std::getline(row, res, ',') ||
        !std::getline(row, ims, ',')) {
      fail(ErrorCode::BadInput, "malformed csv row: " + line);
    }
    long n = 0;
    try {
      n = std::stol(ns);
    } catch (const std::exception&) {
      fail(ErrorCode::BadInput, "malformed csv index: " + ns);
    }
    if (n < 0) fail(ErrorCode::BadInput, "negative index in csv row");
    if (static_cast<std::size_t>(n) >= out.size()) {
      out.resize(static_cast<std::size_t>(n) + 1, CNum(0, Prec{bits}));
    }
    out[static_cast<std::size_t>(n)] =
        CNum(Real::from_string(res, Prec{bits}), Real::from_string(ims, Prec{bits}));
  }
  return out;
}

Json model_to_json(const ExponentialModel& m) {
  Json terms = Json::array();
  for (const auto& [c, mu] : m.terms) {
    Json t;
    t["c"] = cnum_to_json(c);
    t["mu"] = cnum_to_json(mu);
    terms.push_back(std::move(t));
  }
  Json j;
  j["terms"] = std::move(terms);
  j["tail_rate"] = real_to_json(m.tail_rate);
  return j;
}

ExponentialModel model_from_json(const Json& j, long bits) {
  if (!j.contains("terms")) fail(ErrorCode::BadInput, "model needs a terms array");
  std::vector<std::pair<CNum, CNum>> terms;
  for (const Json& t : j["terms"]) {
    terms.emplace_back(cnum_from_json(t.at("c"), bits), cnum_from_json(t.at("mu"), bits));
  }
  Real tail = j.contains("tail_rate") ? real_from_json(j["tail_rate"], bits)
                                      : Real::pos_inf(Prec{bits});
  return make_exponential_model(std::move(terms), tail);
}

Json poles_to_json(const PoleReport& r) {
  Json poles = Json::array();
  for (const auto& [z, res] : r.poles) {
    Json p;
    p["z"] = cnum_to_json(z);
    p["residue"] = cnum_to_json(res);
    poles.push_back(std::move(p));
  }
  Json j;
  j["poles"] = std::move(poles);
  j["order"] = Json::array({r.order.first, r.order.second});
  j["spurious_rejected"] = r.spurious_rejected;
  return j;
}

Json set_to_json(const ExteriorSet& s) {
  Json pts = Json::array();
  for (const CNum& p : s.points) pts.push_back(cnum_to_json(p));
  Json j;
  j["points"] = std::move(pts);
  j["rmax"] = real_to_json(s.radius_cut);
  j["eps"] = real_to_json(s.merge_eps);
  return j;
}

ExteriorSet set_from_json(const Json& j, long bits) {
  if (!j.contains("points") || !j.contains("rmax")) {
    fail(ErrorCode::BadInput, "set file needs points and rmax");
  }
  std::vector<CNum> pts;
  for (const Json& p : j["points"]) pts.push_back(cnum_from_json(p, bits));
  Real rmax = real_from_json(j["rmax"], bits);
  Real eps = j.contains("eps") ? real_from_json(j["eps"], bits) : Real(1e-9);
  return make_exterior_set(std::move(pts), rmax, eps);
}

std::vector<CNum> points_from_json(const Json& j, long bits) {
  std::vector<CNum> pts;
  if (j.is_array()) {
    for (const Json& p : j) pts.push_back(cnum_from_json(p, bits));
    return pts;
  }
  if (j.contains("points")) {
    for (const Json& p : j["points"]) pts.push_back(cnum_from_json(p, bits));
    return pts;
  }
  if (j.contains("poles")) {
    for (const Json& p : j["poles"]) pts.push_back(cnum_from_json(p.at("z"), bits));
    return pts;
  }
  fail(ErrorCode::BadInput, "no points, poles, or bare array found");
}

CNum parse_cnum_arg(const std::string& text, long bits) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ') s += ch;
  }
  if (s.empty()) fail(ErrorCode::BadInput, "empty complex literal");
  auto parse_real = [&](const std::string& part) {
    if (part.empty() || part == "+") return Real(1L, Prec{bits});
    if (part == "-") return Real(-1L, Prec{bits});
    return Real::from_string(part, Prec{bits});
  };
  if (s.back() != 'i' && s.back() != 'I') {
    return CNum(Real::from_string(s, Prec{bits}));
  }
  std::string body = s.substr(0, s.size() - 1);
  // Split before the sign of the imaginary part, skipping exponent signs.
  for (std::size_t k = body.size(); k-- > 1;) {
    char c = body[k];
    if ((c == '+' || c == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      return CNum(Real::from_string(body.substr(0, k), Prec{bits}),
                  parse_real(body.substr(k)));
    }
  }
  return CNum(Real(0L, Prec{bits}), parse_real(body));
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::IoFailure, std::string("json parse: ") + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoFailure, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(ErrorCode::IoFailure, "read error on " + path);
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoFailure, "cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) fail(ErrorCode::IoFailure, "write error on " + path);
}

}  // namespace szegolab
