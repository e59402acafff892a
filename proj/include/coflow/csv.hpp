#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "core.hpp"

namespace coflow::io {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

inline constexpr std::string_view kFlowHeader = "coflow_id,release,weight,input,output,size";
inline constexpr std::string_view kCompactHeader = "coflow_id,release,weight,m,flows";
inline constexpr std::string_view kScheduleHeader = "slot,input,output,coflow";

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

inline std::int64_t parse_int(std::string_view s, std::size_t line, const char* field) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError(line, std::string("field '") + field + "' is not an integer: '" + std::string(s) + "'");
  }
  return v;
}

struct PendingCoflow {
  std::int64_t release = 0;
  Decimal weight;
  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> flows;
};

}  // namespace detail

// Reads either accepted instance format; the header row selects the parser.
// Comment lines start with '#'; "# label=..." and "# m=..." carry metadata.
inline Instance read_instance(std::istream& in, std::size_t m_override = 0) {
  using detail::PendingCoflow;
  std::string line;
  std::size_t line_no = 0;
  std::string label;
  std::int64_t declared_m = 0;
  enum class Format { kUnknown, kFlows, kCompact } format = Format::kUnknown;
  std::map<std::int64_t, PendingCoflow> coflows;
  std::int64_t max_port = 0;

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = detail::trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      std::string_view meta = detail::trim(text.substr(1));
      if (meta.starts_with("label=")) label = std::string(meta.substr(6));
      if (meta.starts_with("m=")) declared_m = detail::parse_int(detail::trim(meta.substr(2)), line_no, "m");
      continue;
    }
    if (format == Format::kUnknown) {
      std::string header;
      for (char c : text) {
        if (c != ' ' && c != '\t') header.push_back(c);
      }
      if (header == kFlowHeader) {
        format = Format::kFlows;
      } else if (header == kCompactHeader) {
        format = Format::kCompact;
      } else {
        throw ParseError(line_no, "unrecognized header '" + std::string(text) + "'");
      }
      continue;
    }
    auto fields = detail::split(text, ',');
    if (fields.size() != 6 && format == Format::kFlows) throw ParseError(line_no, "expected 6 fields");
    if (fields.size() != 5 && format == Format::kCompact) throw ParseError(line_no, "expected 5 fields");

    const std::int64_t id = detail::parse_int(fields[0], line_no, "coflow_id");
    const std::int64_t release = detail::parse_int(fields[1], line_no, "release");
    Decimal weight;
    try {
      weight = Decimal::parse(fields[2]);
    } catch (const std::exception& e) {
      throw ParseError(line_no, e.what());
    }
    if (id < 1) throw ParseError(line_no, "coflow_id must be positive");

    auto [it, inserted] = coflows.try_emplace(id);
    PendingCoflow& c = it->second;
    if (inserted) {
      c.release = release;
      c.weight = weight;
    } else if (format == Format::kCompact) {
      throw ParseError(line_no, "coflow " + std::to_string(id) + " listed twice");
    } else if (c.release != release || c.weight != weight) {
      throw ParseError(line_no, "coflow " + std::to_string(id) + " has inconsistent release or weight");
    }

    auto add_flow = [&](std::int64_t i, std::int64_t j, std::int64_t size) {
      if (i < 1 || j < 1) throw ParseError(line_no, "ports are 1-indexed");
      if (size < 0) throw ParseError(line_no, "negative flow size");
      if (!c.flows.emplace(std::pair{i, j}, size).second) {
        throw ParseError(line_no, "duplicate flow (" + std::to_string(id) + "," + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
      }
      max_port = std::max({max_port, i, j});
    };

    if (format == Format::kFlows) {
      add_flow(detail::parse_int(fields[3], line_no, "input"), detail::parse_int(fields[4], line_no, "output"),
               detail::parse_int(fields[5], line_no, "size"));
    } else {
      const std::int64_t m = detail::parse_int(fields[3], line_no, "m");
      if (m < 1) throw ParseError(line_no, "m must be positive");
      if (declared_m != 0 && declared_m != m) throw ParseError(line_no, "inconsistent m");
      declared_m = m;
      if (!fields[4].empty()) {
        for (std::string_view triple : detail::split(fields[4], ';')) {
          if (triple.empty()) continue;
          auto parts = detail::split(triple, ':');
          if (parts.size() != 3) throw ParseError(line_no, "flow '" + std::string(triple) + "' is not i:j:size");
          add_flow(detail::parse_int(parts[0], line_no, "i"), detail::parse_int(parts[1], line_no, "j"),
                   detail::parse_int(parts[2], line_no, "size"));
        }
      }
    }
  }
  if (format == Format::kUnknown) throw ParseError(line_no, "missing header row");

  std::int64_t m = m_override != 0 ? static_cast<std::int64_t>(m_override) : (declared_m != 0 ? declared_m : max_port);
  if (m < 1) throw ParseError(line_no, "cannot infer network size");
  if (max_port > m) throw ParseError(line_no, "port " + std::to_string(max_port) + " exceeds m=" + std::to_string(m));

  std::vector<CoflowMatrix> result;
  std::int64_t expected = 1;
  for (auto& [id, c] : coflows) {
    if (id != expected) throw ParseError(line_no, "coflow ids must be dense 1..n; missing " + std::to_string(expected));
    ++expected;
    DemandMatrix d(static_cast<std::size_t>(m));
    for (const auto& [key, size] : c.flows) {
      d(static_cast<Port>(key.first - 1), static_cast<Port>(key.second - 1)) = size;
    }
    try {
      result.emplace_back(static_cast<std::size_t>(id), std::move(d), c.weight, c.release);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return Instance(static_cast<std::size_t>(m), std::move(result), label);
}

inline Instance read_instance_string(const std::string& text, std::size_t m_override = 0) {
  std::istringstream in(text);
  return read_instance(in, m_override);
}

inline Instance read_instance_file(const std::string& path, std::size_t m_override = 0) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_instance(in, m_override);
}

// One row per nonzero flow, coflows in id order, flows row-major.
inline void write_instance(std::ostream& out, const Instance& instance) {
  if (!instance.label().empty()) out << "# label=" << instance.label() << '\n';
  out << "# m=" << instance.m() << '\n';
  out << kFlowHeader << '\n';
  for (const CoflowMatrix& c : instance.coflows()) {
    const std::string prefix =
        std::to_string(c.id()) + "," + std::to_string(c.release()) + "," + c.weight().to_string() + ",";
    for (Port i = 0; i < instance.m(); ++i) {
      for (Port j = 0; j < instance.m(); ++j) {
        if (c.demand()(i, j) != 0) out << prefix << i + 1 << ',' << j + 1 << ',' << c.demand()(i, j) << '\n';
      }
    }
  }
}

inline void write_instance_compact(std::ostream& out, const Instance& instance) {
  if (!instance.label().empty()) out << "# label=" << instance.label() << '\n';
  out << kCompactHeader << '\n';
  for (const CoflowMatrix& c : instance.coflows()) {
    out << c.id() << ',' << c.release() << ',' << c.weight().to_string() << ',' << instance.m() << ',';
    bool first = true;
    for (Port i = 0; i < instance.m(); ++i) {
      for (Port j = 0; j < instance.m(); ++j) {
        if (c.demand()(i, j) == 0) continue;
        if (!first) out << ';';
        first = false;
        out << i + 1 << ':' << j + 1 << ':' << c.demand()(i, j);
      }
    }
    out << '\n';
  }
}

inline void write_schedule(std::ostream& out, const ScheduleTrace& trace) {
  out << kScheduleHeader << '\n';
  for (std::size_t t = 0; t < trace.slot_count(); ++t) {
    for (const Transfer& x : trace.slot(t)) {
      out << t << ',' << x.input + 1 << ',' << x.output + 1 << ',' << x.coflow + 1 << '\n';
    }
  }
}

inline ScheduleTrace read_schedule(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    if (!header) {
      if (text != kScheduleHeader) throw ParseError(line_no, "expected header '" + std::string(kScheduleHeader) + "'");
      header = true;
      continue;
    }
    auto f = detail::split(text, ',');
    if (f.size() != 4) throw ParseError(line_no, "expected 4 fields");
    std::int64_t slot = detail::parse_int(f[0], line_no, "slot");
    std::int64_t i = detail::parse_int(f[1], line_no, "input");
    std::int64_t j = detail::parse_int(f[2], line_no, "output");
    std::int64_t k = detail::parse_int(f[3], line_no, "coflow");
    if (slot < 0 || i < 1 || j < 1 || k < 1) throw ParseError(line_no, "slot is 0-indexed; ports and coflows 1-indexed");
    if (i > 65535 || j > 65535) throw ParseError(line_no, "port index too large");
    rows.emplace_back(slot, i, j, k);
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const auto& a, const auto& b) { return std::get<0>(a) < std::get<0>(b); });
  ScheduleTrace trace;
  for (const auto& [slot, i, j, k] : rows) {
    trace.pad_to(static_cast<std::size_t>(slot));
    trace.push(static_cast<Port>(i - 1), static_cast<Port>(j - 1), static_cast<CoflowIndex>(k - 1));
  }
  if (!rows.empty()) trace.close_slot();
  return trace;
}

}  // namespace coflow::io
