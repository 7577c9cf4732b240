#include "countprob/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "countprob/error.hpp"

namespace countprob::io {
namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view text) {
  text = trim(text);
  // strtod accepts the same syntax as the JSON and CLI surfaces (incl. exponents).
  std::string buf(text);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size()) throw Error(ErrorKind::BadInput, "not a number: '" + buf + "'");
  return v;
}

std::int64_t parse_int(std::string_view text) {
  text = trim(text);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw Error(ErrorKind::BadInput, "not an integer: '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

nlohmann::json model_to_json(const CorrelationModel& model) {
  nlohmann::json j;
  j["l_max"] = model.l_max();
  j["c"] = std::vector<double>(model.coefficients().begin(), model.coefficients().end());
  j["n"] = model.n() ? nlohmann::json(*model.n()) : nlohmann::json(nullptr);
  return j;
}

CorrelationModel model_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object() || !j.contains("c")) throw Error(ErrorKind::BadInput, "model JSON needs a \"c\" array");
    auto c = j.at("c").get<std::vector<double>>();
    std::optional<std::int64_t> n;
    if (j.contains("n") && !j.at("n").is_null()) n = j.at("n").get<std::int64_t>();
    if (j.contains("l_max") && j.at("l_max").get<std::int64_t>() != static_cast<std::int64_t>(c.size())) {
      throw Error(ErrorKind::BadShape, "l_max does not match the length of c");
    }
    return validate_model(CorrelationModel(std::move(c), n));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::BadInput, std::string("model JSON: ") + e.what());
  }
}

std::vector<double> parse_coefficients(std::string_view text) {
  std::vector<double> out;
  for (auto part : split(text, ',')) out.push_back(parse_double(part));
  return out;
}

MixtureSpec parse_mixture(std::string_view text) {
  MixtureSpec spec;
  for (auto part : split(text, ',')) {
    const auto fields = split(part, ':');
    if (fields.size() != 2) throw Error(ErrorKind::BadInput, "mixture atoms are written p:weight");
    spec.atoms.push_back({parse_double(fields[0]), parse_double(fields[1])});
  }
  spec.validate();
  return spec;
}

std::vector<double> parse_grid(std::string_view text) {
  const auto fields = split(text, ':');
  if (fields.size() != 3) throw Error(ErrorKind::BadInput, "grid syntax is start:stop:count");
  const double start = parse_double(fields[0]);
  const double stop = parse_double(fields[1]);
  const auto count = parse_int(fields[2]);
  if (count < 1) throw Error(ErrorKind::BadInput, "grid count must be >= 1");
  std::vector<double> u(static_cast<std::size_t>(count));
  if (count == 1) {
    u[0] = start;
    return u;
  }
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (std::int64_t i = 0; i < count; ++i) u[static_cast<std::size_t>(i)] = start + step * static_cast<double>(i);
  u.back() = stop;
  return u;
}

std::vector<std::int64_t> read_counts(std::istream& in) {
  std::vector<std::int64_t> counts;
  std::string line;
  bool first = true;
  bool csv = false;
  while (std::getline(in, line)) {
    std::string_view view = trim(line);
    if (view.empty()) continue;
    if (first) {
      first = false;
      if (view.find(',') != std::string_view::npos) {
        csv = true;
        if (!std::isdigit(static_cast<unsigned char>(view.front()))) continue;  // header row
      }
    }
    if (csv) {
      const auto fields = split(view, ',');
      if (fields.size() != 2) throw Error(ErrorKind::BadInput, "CSV counts need two columns");
      counts.push_back(parse_int(fields[1]));
    } else {
      counts.push_back(parse_int(view));
    }
  }
  return counts;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw Error(ErrorKind::Internal, "double formatting failed");
  return std::string(buf, ptr);
}

void write_pmf_csv(std::ostream& out, const Pmf& pmf) {
  out << "s,p\n";
  for (std::size_t s = 0; s < pmf.values.size(); ++s) out << s << ',' << format_double(pmf.values[s]) << '\n';
}

nlohmann::json pmf_to_json(const Pmf& pmf) {
  nlohmann::json j;
  std::vector<std::size_t> s(pmf.values.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = i;
  j["s"] = s;
  j["p"] = pmf.values;
  j["tail_bound"] = pmf.tail_bound;
  j["error_estimate"] = pmf.error_estimate;
  j["admissible"] = pmf.admissible();
  return j;
}

void write_cf_csv(std::ostream& out, const CfGrid& grid) {
  out << "u,re,im\n";
  for (std::size_t j = 0; j < grid.u.size(); ++j) {
    out << format_double(grid.u[j]) << ',' << format_double(grid.chi[j].real()) << ','
        << format_double(grid.chi[j].imag()) << '\n';
  }
}

nlohmann::json cf_to_json(const CfGrid& grid) {
  std::vector<double> re, im;
  for (const auto& c : grid.chi) {
    re.push_back(c.real());
    im.push_back(c.imag());
  }
  return {{"u", grid.u}, {"re", re}, {"im", im}};
}

nlohmann::json report_to_json(const EstimateReport& report) {
  nlohmann::json j;
  j["c_hat"] = report.c_hat;
  j["std_err"] = report.std_err;
  j["n_samples"] = report.n_samples;
  j["n_bootstrap"] = report.n_bootstrap;
  return j;
}

}  // namespace countprob::io
