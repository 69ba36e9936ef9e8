#include "polyentropy/io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string_view>

namespace polyentropy {
namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw std::runtime_error("line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) {
      return out;
    }
    start = comma + 1;
  }
}

template <class T>
T parse_number(std::string_view text, std::size_t line) {
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    fail(line, "cannot parse '" + std::string(text) + "'");
  }
  return v;
}

template <class T>
std::vector<T> read_pairs(std::istream& in, std::string_view header_value,
                          std::optional<std::size_t> k) {
  std::vector<std::pair<std::size_t, T>> entries;
  std::string raw;
  std::size_t line = 0;
  std::size_t max_id = 0;
  bool any = false;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view s = trim(raw);
    if (s.empty()) {
      continue;
    }
    const auto f = fields(s);
    if (f.size() != 2) {
      fail(line, "expected two comma-separated fields");
    }
    if (!any && entries.empty() && f[0] == "symbol" && f[1] == header_value) {
      any = true;
      continue;
    }
    any = true;
    const auto id = parse_number<std::size_t>(f[0], line);
    const T value = parse_number<T>(f[1], line);
    if (k && id >= *k) {
      fail(line, "symbol " + std::to_string(id) + " outside alphabet of size " +
                     std::to_string(*k));
    }
    max_id = std::max(max_id, id);
    entries.emplace_back(id, value);
  }
  const std::size_t size = k ? *k : (entries.empty() ? 0 : max_id + 1);
  std::vector<T> out(size, T{});
  std::vector<bool> seen(size, false);
  for (const auto& [id, value] : entries) {
    if (seen[id]) {
      throw std::runtime_error("duplicate symbol " + std::to_string(id));
    }
    seen[id] = true;
    out[id] = value;
  }
  return out;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "' for reading");
  }
  return in;
}

template <class F>
auto with_path(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

}  // namespace

std::string format_real(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  return out;
}

Histogram read_histogram(std::istream& in, std::optional<std::size_t> k) {
  return Histogram(read_pairs<std::uint64_t>(in, "count", k));
}

Histogram read_histogram_file(const std::string& path, std::optional<std::size_t> k) {
  auto in = open_input(path);
  return with_path(path, [&] { return read_histogram(in, k); });
}

void write_histogram(std::ostream& out, const Histogram& h, bool header) {
  if (header) {
    out << "symbol,count\n";
  }
  for (std::size_t i = 0; i < h.k(); ++i) {
    out << i << ',' << h[i] << '\n';
  }
}

Distribution read_distribution(std::istream& in, std::optional<std::size_t> k) {
  return Distribution(read_pairs<double>(in, "prob", k));
}

Distribution read_distribution_file(const std::string& path, std::optional<std::size_t> k) {
  auto in = open_input(path);
  return with_path(path, [&] { return read_distribution(in, k); });
}

void write_distribution(std::ostream& out, const Distribution& d, bool header) {
  if (header) {
    out << "symbol,prob\n";
  }
  for (std::size_t i = 0; i < d.k(); ++i) {
    out << i << ',' << format_real(d[i]) << '\n';
  }
}

CoefficientTable to_table(const ChebApprox& p) {
  const auto c = p.coeffs();
  return {p.degree(), p.interval(), p.error(), std::vector<double>(c.begin(), c.end())};
}

void write_coefficient_table(std::ostream& out, const CoefficientTable& t) {
  out << "degree,interval_a,interval_b,error\n";
  out << t.degree << ',' << format_real(t.interval.lo) << ',' << format_real(t.interval.hi) << ','
      << format_real(t.error) << '\n';
  out << "m,a_m\n";
  for (std::size_t m = 0; m < t.coeffs.size(); ++m) {
    out << m << ',' << format_real(t.coeffs[m]) << '\n';
  }
}

std::vector<CoefficientTable> read_coefficient_tables(std::istream& in) {
  std::vector<CoefficientTable> tables;
  std::string raw;
  std::size_t line = 0;
  enum class State { header, values, sub_header, rows } state = State::header;
  CoefficientTable cur;
  const auto finish = [&] {
    if (static_cast<int>(cur.coeffs.size()) != cur.degree + 1) {
      fail(line, "table of degree " + std::to_string(cur.degree) + " has " +
                     std::to_string(cur.coeffs.size()) + " coefficients");
    }
    tables.push_back(std::move(cur));
    cur = {};
  };
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view s = trim(raw);
    if (s.empty()) {
      continue;
    }
    const auto f = fields(s);
    if (state == State::rows && f[0] == "degree") {
      finish();
      state = State::header;
    }
    switch (state) {
      case State::header:
        if (f.size() != 4 || f[0] != "degree" || f[1] != "interval_a" || f[2] != "interval_b" ||
            f[3] != "error") {
          fail(line, "expected header degree,interval_a,interval_b,error");
        }
        state = State::values;
        break;
      case State::values:
        if (f.size() != 4) {
          fail(line, "expected degree,interval_a,interval_b,error values");
        }
        cur.degree = parse_number<int>(f[0], line);
        cur.interval = {parse_number<double>(f[1], line), parse_number<double>(f[2], line)};
        cur.error = parse_number<double>(f[3], line);
        state = State::sub_header;
        break;
      case State::sub_header:
        if (f.size() != 2 || f[0] != "m" || f[1] != "a_m") {
          fail(line, "expected header m,a_m");
        }
        state = State::rows;
        break;
      case State::rows: {
        if (f.size() != 2) {
          fail(line, "expected m,a_m");
        }
        const auto m = parse_number<std::size_t>(f[0], line);
        if (m != cur.coeffs.size()) {
          fail(line, "coefficient index out of order");
        }
        cur.coeffs.push_back(parse_number<double>(f[1], line));
        break;
      }
    }
  }
  if (state == State::rows) {
    finish();
  } else if (state != State::header) {
    fail(line, "truncated coefficient table");
  }
  return tables;
}

}  // namespace polyentropy
