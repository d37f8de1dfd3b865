#include "pfq/netlist.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "pfq/error.hpp"
#include "text.hpp"

namespace pfq {
namespace {

struct Token {
  std::string_view text;
  int column;  // 1-based byte column
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (is_space(line[i])) {
      ++i;
      continue;
    }
    if (line[i] == '#') break;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i]) && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

std::string quoted(std::string_view s) {
  std::string out = "'";
  for (char c : s.substr(0, 32)) {
    const auto u = static_cast<unsigned char>(c);
    if (u >= 0x20 && u < 0x7f) {
      out += c;
    } else {
      out += '?';
    }
  }
  if (s.size() > 32) out += "...";
  out += "'";
  return out;
}

class LineParser {
 public:
  LineParser(int line, std::vector<Token> tokens) : line_(line), tokens_(std::move(tokens)) {}

  [[noreturn]] void fail(ErrorCode code, const std::string& msg, int column) const {
    throw Error(code, msg, SourceLocation{line_, column});
  }
  [[noreturn]] void fail_at(ErrorCode code, const std::string& msg, std::size_t idx) const {
    fail(code, msg, tokens_[idx].column);
  }

  const Token& keyword() const { return tokens_[0]; }
  std::size_t size() const { return tokens_.size(); }
  const Token& at(std::size_t i) const { return tokens_[i]; }

  void expect_args(std::size_t lo, std::size_t hi, std::string_view usage) const {
    const std::size_t n = tokens_.size() - 1;
    if (n < lo || n > hi) {
      const int col = n > hi ? tokens_[hi + 1].column : tokens_.back().column;
      fail(ErrorCode::kArity,
           "'" + std::string(keyword().text) + "' expects " + std::string(usage) + ", got " +
               std::to_string(n) + " argument(s)",
           col);
    }
  }

  template <class Int>
  Int integer(std::size_t i, std::string_view what) const {
    const auto t = tokens_[i].text;
    Int v{};
    const char* first = t.data();
    if (!t.empty() && t.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || first == t.data() + t.size())
      fail_at(ErrorCode::kBadParameter,
              std::string(what) + " must be an integer, got " + quoted(t), i);
    return v;
  }

  double real(std::size_t i, std::string_view what) const {
    const auto t = tokens_[i].text;
    double v = 0.0;
    const char* first = t.data();
    if (!t.empty() && t.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size() || first == t.data() + t.size() ||
        !std::isfinite(v))
      fail_at(ErrorCode::kBadParameter,
              std::string(what) + " must be a finite real, got " + quoted(t), i);
    return v;
  }

  PathId path(std::size_t i, const Circuit& c) const {
    const auto p = integer<int>(i, "path");
    if (p < 0) fail_at(ErrorCode::kBadParameter, "path ids must be non-negative", i);
    if (!c.paths().contains(p))
      fail_at(ErrorCode::kUndeclaredPath, "path " + std::to_string(p) + " is not declared", i);
    return p;
  }

  // Rest of the line after the keyword, as written.
  std::string rest(std::string_view line) const {
    if (tokens_.size() < 2) return {};
    const auto start = static_cast<std::size_t>(tokens_[1].column - 1);
    const auto& last = tokens_.back();
    const auto end = static_cast<std::size_t>(last.column - 1) + last.text.size();
    return std::string(line.substr(start, end - start));
  }

  int line() const { return line_; }

 private:
  int line_;
  std::vector<Token> tokens_;
};

void add_checked(Circuit& c, Component comp, const LineParser& lp) {
  try {
    c.add(std::move(comp));
  } catch (const Error& e) {
    ErrorCode code = e.code();
    if (code == ErrorCode::kCircuit) code = ErrorCode::kIdenticalPorts;
    if (code == ErrorCode::kConfiguration) code = ErrorCode::kBadParameter;
    lp.fail(code, e.what(), lp.keyword().column);
  }
}

BandMap parse_bandmap(const LineParser& lp, std::size_t n_idx, std::size_t q_idx,
                      std::size_t role_idx) {
  const int n = lp.integer<int>(n_idx, "qubit count");
  if (n < 1 || n > 30) lp.fail_at(ErrorCode::kBadParameter, "qubit count must be in [1, 30]", n_idx);

  std::vector<int> qubits;
  std::string_view q = lp.at(q_idx).text;
  const int base_col = lp.at(q_idx).column;
  std::size_t pos = 0;
  while (true) {
    const std::size_t amp = q.find('&', pos);
    const std::string_view part = q.substr(pos, amp == std::string_view::npos ? q.npos : amp - pos);
    int v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size())
      lp.fail(ErrorCode::kBadParameter, "qubit must be an integer or a '&' list, got " + quoted(q),
              base_col + static_cast<int>(pos));
    if (v < 1 || v > n)
      lp.fail(ErrorCode::kBadParameter,
              "qubit " + std::to_string(v) + " outside [1, " + std::to_string(n) + "]",
              base_col + static_cast<int>(pos));
    qubits.push_back(v);
    if (amp == std::string_view::npos) break;
    pos = amp + 1;
  }

  const std::string_view role = lp.at(role_idx).text;
  CfRole r;
  if (role == "cf1" || role == "CF1") {
    r = CfRole::kCf1;
  } else if (role == "cf2" || role == "CF2") {
    r = CfRole::kCf2;
  } else {
    lp.fail_at(ErrorCode::kBadParameter, "cf role must be cf1 or cf2, got " + quoted(role),
               role_idx);
  }
  try {
    return BandMap::conjunction(n, std::move(qubits), r);
  } catch (const Error& e) {
    lp.fail_at(ErrorCode::kBadParameter, e.what(), q_idx);
  }
}

void parse_statement(Circuit& c, const LineParser& lp, std::string_view raw) {
  const std::string_view kw = lp.keyword().text;
  if (kw == "name") {
    c.set_name(lp.rest(raw));
  } else if (kw == "description") {
    c.set_description(lp.rest(raw));
  } else if (kw == "qubits") {
    lp.expect_args(1, 1, "<n>");
    const int n = lp.integer<int>(1, "qubit count");
    if (n < 1 || n > 30) lp.fail_at(ErrorCode::kBadParameter, "qubit count must be in [1, 30]", 1);
    c.set_qubits(n);
  } else if (kw == "const") {
    lp.expect_args(2, 2, "<key> <real>");
    const std::string key(lp.at(1).text);
    const double value = lp.real(2, "constant value");
    try {
      PhysicalConstants probe;
      probe.set(key, value);
      probe.validate();
    } catch (const Error& e) {
      lp.fail_at(ErrorCode::kBadParameter, e.what(), 1);
    }
    c.set_constant(key, value);
  } else if (kw == "paths") {
    lp.expect_args(1, std::numeric_limits<std::size_t>::max() - 1, "at least one path id");
    for (std::size_t i = 1; i < lp.size(); ++i) {
      const auto p = lp.integer<int>(i, "path");
      if (p < 0) lp.fail_at(ErrorCode::kBadParameter, "path ids must be non-negative", i);
      if (c.paths().contains(p))
        lp.fail_at(ErrorCode::kDuplicatePath, "path " + std::to_string(p) + " declared twice", i);
      c.declare_path(p);
    }
  } else if (kw == "npbs" || kw == "pbs" || kw == "mirror") {
    lp.expect_args(2, 2, "<pathA> <pathB>");
    const PathId a = lp.path(1, c);
    const PathId b = lp.path(2, c);
    if (a == b) lp.fail_at(ErrorCode::kIdenticalPorts, std::string(kw) + " ports must differ", 2);
    if (kw == "npbs") {
      add_checked(c, Npbs{a, b}, lp);
    } else if (kw == "pbs") {
      add_checked(c, Pbs{a, b}, lp);
    } else {
      add_checked(c, Mirror{a, b}, lp);
    }
  } else if (kw == "fs") {
    lp.expect_args(4, 6, "<path> <dk> <dm> <eta> [leak <path>]");
    if (lp.size() == 6) lp.fail_at(ErrorCode::kArity, "'leak' needs a path", 5);
    FrequencyShifter fs;
    fs.path = lp.path(1, c);
    fs.dk = lp.integer<std::int64_t>(2, "dk");
    fs.dm = lp.integer<std::int64_t>(3, "dm");
    fs.eta = lp.real(4, "eta");
    if (!(fs.eta > 0.0 && fs.eta <= 1.0))
      lp.fail_at(ErrorCode::kBadParameter, "eta must lie in (0, 1]", 4);
    if (lp.size() == 7) {
      if (lp.at(5).text != "leak")
        lp.fail_at(ErrorCode::kBadParameter, "expected 'leak', got " + quoted(lp.at(5).text), 5);
      fs.leak_path = lp.path(6, c);
      if (*fs.leak_path == fs.path)
        lp.fail_at(ErrorCode::kIdenticalPorts, "leak path must differ from the shifted path", 6);
    }
    add_checked(c, fs, lp);
  } else if (kw == "ps") {
    lp.expect_args(2, 2, "<path> <radians>");
    const PathId p = lp.path(1, c);
    add_checked(c, PhaseShifter{p, lp.real(2, "phase")}, lp);
  } else if (kw == "hwp") {
    lp.expect_args(1, 1, "<path>");
    add_checked(c, HalfWavePlate{lp.path(1, c)}, lp);
  } else if (kw == "bb") {
    lp.expect_args(2, 2, "<path> <bit>");
    const PathId p = lp.path(1, c);
    const int bit = lp.integer<int>(2, "bit");
    if (bit != 0 && bit != 1) lp.fail_at(ErrorCode::kBadParameter, "bit must be 0 or 1", 2);
    add_checked(c, BlackBox{p, bit}, lp);
  } else if (kw == "cf") {
    lp.expect_args(6, 6, "<pathA> <pathB> <n> <qubit> <role> <epsilon>");
    const PathId a = lp.path(1, c);
    const PathId b = lp.path(2, c);
    if (a == b) lp.fail_at(ErrorCode::kIdenticalPorts, "cf ports must differ", 2);
    BandMap bands = parse_bandmap(lp, 3, 4, 5);
    const double eps = lp.real(6, "epsilon");
    if (!(eps >= 0.0 && eps < 1.0))
      lp.fail_at(ErrorCode::kBadParameter, "epsilon must lie in [0, 1)", 6);
    add_checked(c, CombFilter{a, b, std::move(bands), eps}, lp);
  } else {
    lp.fail(ErrorCode::kUnknownKeyword, "unknown keyword " + quoted(kw), lp.keyword().column);
  }
}

std::string qubit_list(const BandMap& bands) {
  std::string out;
  for (int q : bands.qubits()) {
    if (!out.empty()) out += '&';
    out += std::to_string(q);
  }
  return out;
}

std::string single_line(const std::string& s) {
  std::string out = s;
  for (char& ch : out) {
    if (ch == '\n' || ch == '\r' || ch == '#') ch = ' ';
  }
  return out;
}

}  // namespace

Circuit parse_netlist(std::string_view text) {
  Circuit c;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    auto tokens = tokenize(line);
    if (!tokens.empty()) parse_statement(c, LineParser(line_no, std::move(tokens)), line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return c;
}

std::string serialize_netlist(const Circuit& circuit) {
  using detail::format_real;
  std::string out;
  if (!circuit.name().empty()) out += "name " + single_line(circuit.name()) + "\n";
  if (!circuit.description().empty())
    out += "description " + single_line(circuit.description()) + "\n";
  if (circuit.qubits() > 0) out += "qubits " + std::to_string(circuit.qubits()) + "\n";
  for (const auto& [key, value] : circuit.constants())
    out += "const " + key + " " + format_real(value) + "\n";
  if (!circuit.paths().empty()) {
    out += "paths";
    for (PathId p : circuit.paths()) out += " " + std::to_string(p);
    out += "\n";
  }
  for (const auto& stage : circuit.stages()) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Npbs>) {
            out += "npbs " + std::to_string(x.a) + " " + std::to_string(x.b);
          } else if constexpr (std::is_same_v<T, Pbs>) {
            out += "pbs " + std::to_string(x.a) + " " + std::to_string(x.b);
          } else if constexpr (std::is_same_v<T, FrequencyShifter>) {
            out += "fs " + std::to_string(x.path) + " " + std::to_string(x.dk) + " " +
                   std::to_string(x.dm) + " " + format_real(x.eta);
            if (x.leak_path) out += " leak " + std::to_string(*x.leak_path);
          } else if constexpr (std::is_same_v<T, PhaseShifter>) {
            out += "ps " + std::to_string(x.path) + " " + format_real(x.theta);
          } else if constexpr (std::is_same_v<T, HalfWavePlate>) {
            out += "hwp " + std::to_string(x.path);
          } else if constexpr (std::is_same_v<T, CombFilter>) {
            out += "cf " + std::to_string(x.a) + " " + std::to_string(x.b) + " " +
                   std::to_string(x.bands.qubit_count()) + " " + qubit_list(x.bands) + " " +
                   to_string(x.bands.role()) + " " + format_real(x.epsilon);
          } else if constexpr (std::is_same_v<T, BlackBox>) {
            out += "bb " + std::to_string(x.path) + " " + std::to_string(x.bit);
          } else if constexpr (std::is_same_v<T, Mirror>) {
            out += "mirror " + std::to_string(x.a) + " " + std::to_string(x.b);
          }
        },
        stage);
    out += "\n";
  }
  return out;
}

}  // namespace pfq
