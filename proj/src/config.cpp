#include "delaybound/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace delaybound {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(trim(current));
  return parts;
}

struct Line {
  std::string section;
  std::string key;
  std::string value;
  int number;
};

class Collector {
 public:
  explicit Collector(std::vector<std::string>& errors) : errors_(errors) {}

  bool parse_double(const Line& line, double& out) {
    try {
      std::size_t used = 0;
      out = std::stod(line.value, &used);
      if (trim(line.value.substr(used)).empty()) return true;
    } catch (const std::exception&) {
    }
    fail(line, "expected a number, got '" + line.value + "'");
    return false;
  }

  bool parse_int(const Line& line, long& out) {
    try {
      std::size_t used = 0;
      out = std::stol(line.value, &used);
      if (trim(line.value.substr(used)).empty()) return true;
    } catch (const std::exception&) {
    }
    fail(line, "expected an integer, got '" + line.value + "'");
    return false;
  }

  bool parse_expression(const Line& line, const std::string& text, TimeExpr& out) {
    try {
      out = parse_expr(text);
      return true;
    } catch (const ExprError& e) {
      fail(line, std::string("expression error: ") + e.what());
      return false;
    }
  }

  void fail(const Line& line, const std::string& message) {
    std::ostringstream oss;
    oss << line.section << "." << line.key << " (line " << line.number << "): " << message;
    errors_.push_back(oss.str());
  }

  void fail_field(const std::string& field, const std::string& message) {
    errors_.push_back(field + ": " + message);
  }

 private:
  std::vector<std::string>& errors_;
};

struct RawMatrixEntry {
  int row, col;
  TimeExpr expr;
};

}  // namespace

DdeSystem ScenarioConfig::system() const {
  DdeSystem sys;
  sys.n = n;
  sys.A = A;
  sys.field = field;
  sys.delays = delays;
  sys.F0 = F0;
  sys.forcing_envelope = forcing_envelope;
  return sys;
}

HistoryFunction ScenarioConfig::history() const {
  if (history_const) return HistoryFunction::constant(*history_const);
  return HistoryFunction::expressions(history_exprs);
}

ConfigResult parse_config(const std::string& text) {
  ConfigResult result;
  ScenarioConfig& cfg = result.config;
  Collector check(result.errors);

  std::vector<Line> lines;
  {
    std::istringstream stream(text);
    std::string raw;
    std::string section;
    int number = 0;
    while (std::getline(stream, raw)) {
      ++number;
      const auto hash = raw.find('#');
      if (hash != std::string::npos) raw = raw.substr(0, hash);
      const std::string line = trim(raw);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') {
          result.errors.push_back("line " + std::to_string(number) + ": malformed section header");
          continue;
        }
        section = trim(line.substr(1, line.size() - 2));
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        result.errors.push_back("line " + std::to_string(number) + ": expected key = value");
        continue;
      }
      lines.push_back({section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), number});
    }
  }

  std::vector<RawMatrixEntry> matrix_entries;
  std::vector<TimeExpr> delay_exprs;
  std::optional<double> h_bar, h_floor;
  std::vector<TimeExpr> forcing;
  std::vector<TimeExpr> history_exprs;
  std::optional<std::vector<double>> history_const;
  struct RawMonomial {
    Line line;
    std::string coeff, target, factors;
  };
  struct RawBlock {
    Line line;
    std::string slot, scale, entries;
  };
  std::vector<RawMonomial> monomials;
  std::vector<RawBlock> blocks;

  bool have_n = false, have_t_end = false, have_step = false;
  long n_value = 0;

  for (const auto& line : lines) {
    const std::string path = line.section + "." + line.key;
    if (line.section == "" && line.key == "name") {
      cfg.name = line.value;
    } else if (path == "system.n") {
      have_n = check.parse_int(line, n_value);
    } else if (path == "system.t0") {
      check.parse_double(line, cfg.t0);
    } else if (path == "system.t_end") {
      have_t_end = check.parse_double(line, cfg.t_end);
    } else if (path == "system.step") {
      have_step = check.parse_double(line, cfg.step);
    } else if (path == "system.output_stride") {
      check.parse_double(line, cfg.output_stride);
    } else if (path == "matrix.entry") {
      const auto parts = split(line.value, '|');
      if (parts.size() != 2) {
        check.fail(line, "expected '<row> <col> | <expression>'");
        continue;
      }
      std::istringstream idx(parts[0]);
      int row = 0, col = 0;
      if (!(idx >> row >> col)) {
        check.fail(line, "expected two 1-based indices before '|'");
        continue;
      }
      TimeExpr expr;
      if (check.parse_expression(line, parts[1], expr)) {
        matrix_entries.push_back({row, col, expr});
      }
    } else if (path == "delays.h_bar") {
      double v;
      if (check.parse_double(line, v)) h_bar = v;
    } else if (path == "delays.h_floor") {
      double v;
      if (check.parse_double(line, v)) h_floor = v;
    } else if (path == "delays.delay") {
      TimeExpr expr;
      if (check.parse_expression(line, line.value, expr)) delay_exprs.push_back(expr);
    } else if (path == "field.monomial") {
      const auto parts = split(line.value, '|');
      if (parts.size() != 3) {
        check.fail(line, "expected '<target> | <coefficient> | <slot,comp,exp>[; ...]'");
        continue;
      }
      monomials.push_back({line, parts[1], parts[0], parts[2]});
    } else if (path == "field.linear_block") {
      const auto parts = split(line.value, '|');
      if (parts.size() != 3) {
        check.fail(line, "expected '<slot> | <scale> | <entry>[; ...]' with n*n row-major entries");
        continue;
      }
      blocks.push_back({line, parts[0], parts[1], parts[2]});
    } else if (path == "forcing.F0") {
      check.parse_double(line, cfg.F0);
    } else if (path == "forcing.e") {
      TimeExpr expr;
      if (check.parse_expression(line, line.value, expr)) forcing.push_back(expr);
    } else if (path == "history.const") {
      std::istringstream vals(line.value);
      std::vector<double> v;
      double x;
      while (vals >> x) v.push_back(x);
      if (v.empty()) {
        check.fail(line, "expected whitespace-separated numbers");
      } else {
        history_const = v;
      }
    } else if (path == "history.expr") {
      TimeExpr expr;
      if (check.parse_expression(line, line.value, expr)) history_exprs.push_back(expr);
    } else if (path == "classifier.horizon") {
      check.parse_double(line, cfg.classifier.horizon);
    } else if (path == "classifier.divergence_factor") {
      check.parse_double(line, cfg.classifier.divergence_factor);
    } else if (path == "classifier.decay_threshold") {
      check.parse_double(line, cfg.classifier.decay_threshold);
    } else if (path == "classifier.tail_fraction") {
      check.parse_double(line, cfg.classifier.tail_fraction);
    } else if (path == "region.scalar_horizon") {
      check.parse_double(line, cfg.scalar_horizon);
    } else if (path == "region.angle_step") {
      check.parse_double(line, cfg.angle_step);
    } else if (path == "region.cap") {
      check.parse_double(line, cfg.sweep_cap);
    } else if (path == "region.tol_rel") {
      check.parse_double(line, cfg.sweep_tol_rel);
    } else if (path == "region.initial_radius") {
      check.parse_double(line, cfg.sweep_initial_radius);
    } else if (path == "linearization.zeta_bar") {
      double v;
      if (check.parse_double(line, v)) cfg.zeta_bar = v;
    } else if (path == "linearization.p_margin") {
      check.parse_double(line, cfg.p_margin);
    } else if (path == "verify.seed") {
      long v;
      if (check.parse_int(line, v)) cfg.seed = static_cast<std::uint64_t>(v);
    } else if (path == "verify.count") {
      long v;
      if (check.parse_int(line, v)) cfg.suite_count = static_cast<int>(v);
    } else if (path == "output.dir") {
      cfg.output_dir = line.value;
    } else {
      check.fail(line, "unknown key");
    }
  }

  // Required scalars.
  if (!have_n || n_value < 1) {
    check.fail_field("system.n", "required, must be a positive integer");
  } else {
    cfg.n = static_cast<int>(n_value);
  }
  if (!have_t_end || !(cfg.t_end > cfg.t0)) {
    check.fail_field("system.t_end", "required, must exceed t0");
  }
  if (!have_step || !(cfg.step > 0.0)) {
    check.fail_field("system.step", "required, must be positive");
  }
  if (!(cfg.output_stride > 0.0)) {
    check.fail_field("system.output_stride", "must be positive");
  }

  // Delays.
  if (!delay_exprs.empty()) {
    if (!h_bar) check.fail_field("delays.h_bar", "required when delay channels are declared");
    if (!h_floor) check.fail_field("delays.h_floor", "required when delay channels are declared");
    if (h_bar && h_floor) {
      if (!(*h_floor > 0.0)) check.fail_field("delays.h_floor", "must be positive");
      if (*h_floor > *h_bar) check.fail_field("delays.h_floor", "must not exceed h_bar");
      cfg.delays.channels = delay_exprs;
      cfg.delays.h_bar = *h_bar;
      cfg.delays.h_floor = *h_floor;
      if (have_step && cfg.step > *h_floor / 4.0 + 1e-12) {
        check.fail_field("system.step", "must be <= h_floor / 4");
      }
      if (result.errors.empty()) {
        try {
          cfg.delays.validate(cfg.t0, cfg.t_end, cfg.step);
        } catch (const std::exception& e) {
          check.fail_field("delays.delay", e.what());
        }
      }
    }
  }

  if (cfg.n > 0) {
    // Matrix, defaulting unspecified entries to 0.
    cfg.A = TimeVaryingMatrix::zero(cfg.n);
    for (const auto& entry : matrix_entries) {
      if (entry.row < 1 || entry.row > cfg.n || entry.col < 1 || entry.col > cfg.n) {
        check.fail_field("matrix.entry", "index out of range for n=" + std::to_string(cfg.n));
        continue;
      }
      cfg.A.entry(entry.row - 1, entry.col - 1) = entry.expr;
    }

    // Vector field.
    const int slots = cfg.delays.count() + 1;
    cfg.field.dim = cfg.n;
    cfg.field.slots = slots;
    for (const auto& raw : monomials) {
      MonomialTerm term;
      long target;
      Line tl = raw.line;
      tl.value = raw.target;
      if (!check.parse_int(tl, target)) continue;
      if (target < 1 || target > cfg.n) {
        check.fail(raw.line, "target component out of range");
        continue;
      }
      term.target = static_cast<int>(target);
      if (!check.parse_expression(raw.line, raw.coeff, term.coefficient)) continue;
      bool factors_ok = true;
      for (const auto& factor_text : split(raw.factors, ';')) {
        const auto triple = split(factor_text, ',');
        MonomialFactor factor;
        if (triple.size() != 3) {
          check.fail(raw.line, "factor must be 'slot,component,exponent'");
          factors_ok = false;
          break;
        }
        try {
          factor.slot = std::stoi(triple[0]);
          factor.component = std::stoi(triple[1]);
          factor.exponent = std::stoi(triple[2]);
        } catch (const std::exception&) {
          check.fail(raw.line, "factor indices must be integers");
          factors_ok = false;
          break;
        }
        if (factor.slot < 1 || factor.slot > slots || factor.component < 1 ||
            factor.component > cfg.n || factor.exponent < 1) {
          check.fail(raw.line, "factor slot/component/exponent out of range");
          factors_ok = false;
          break;
        }
        term.factors.push_back(factor);
      }
      if (factors_ok && term.factors.empty()) {
        check.fail(raw.line, "monomial needs at least one factor (total degree >= 1)");
        factors_ok = false;
      }
      if (factors_ok) cfg.field.monomials.push_back(std::move(term));
    }
    for (const auto& raw : blocks) {
      LinearBlockTerm block;
      long slot;
      Line sl = raw.line;
      sl.value = raw.slot;
      if (!check.parse_int(sl, slot)) continue;
      if (slot < 1 || slot > slots) {
        check.fail(raw.line, "slot out of range");
        continue;
      }
      block.slot = static_cast<int>(slot);
      if (!check.parse_expression(raw.line, raw.scale, block.scale)) continue;
      const auto entry_texts = split(raw.entries, ';');
      if (static_cast<int>(entry_texts.size()) != cfg.n * cfg.n) {
        check.fail(raw.line, "expected n*n row-major entries separated by ';'");
        continue;
      }
      std::vector<TimeExpr> entries;
      bool ok = true;
      for (const auto& entry_text : entry_texts) {
        TimeExpr expr;
        if (!check.parse_expression(raw.line, entry_text, expr)) {
          ok = false;
          break;
        }
        entries.push_back(std::move(expr));
      }
      if (!ok) continue;
      block.matrix = TimeVaryingMatrix(cfg.n, std::move(entries));
      cfg.field.blocks.push_back(std::move(block));
    }

    // Forcing.
    if (cfg.F0 < 0.0) check.fail_field("forcing.F0", "must be >= 0");
    if (!forcing.empty() && static_cast<int>(forcing.size()) != cfg.n) {
      check.fail_field("forcing.e", "expected n components");
    } else {
      cfg.forcing_envelope = forcing;
    }
    if (cfg.F0 > 0.0 && forcing.empty()) {
      check.fail_field("forcing.e", "required when F0 > 0");
    }
    if (cfg.F0 > 0.0 && static_cast<int>(forcing.size()) == cfg.n && result.errors.empty()) {
      double sup = 0.0;
      const int samples = 10000;
      for (int k = 0; k <= samples; ++k) {
        const double t = cfg.t0 + (cfg.t_end - cfg.t0) * k / samples;
        double sq = 0.0;
        for (const auto& e : forcing) {
          const double v = e.eval(t);
          sq += v * v;
        }
        sup = std::max(sup, std::sqrt(sq));
      }
      if (std::abs(sup - 1.0) > 1e-3) {
        std::ostringstream oss;
        oss << "forcing.e: envelope sup-norm over the horizon is " << sup
            << ", expected 1 within 1e-3";
        result.warnings.push_back(oss.str());
      }
    }

    // History.
    if (history_const && !history_exprs.empty()) {
      check.fail_field("history", "give either const or expr components, not both");
    } else if (history_const) {
      if (static_cast<int>(history_const->size()) != cfg.n) {
        check.fail_field("history.const", "expected n components");
      } else {
        Eigen::VectorXd v(cfg.n);
        for (int i = 0; i < cfg.n; ++i) v(i) = (*history_const)[i];
        cfg.history_const = v;
      }
    } else if (!history_exprs.empty()) {
      if (static_cast<int>(history_exprs.size()) != cfg.n) {
        check.fail_field("history.expr", "expected n components");
      } else {
        cfg.history_exprs = history_exprs;
      }
    } else {
      check.fail_field("history", "required (const or expr)");
    }
  }

  // Classifier and sweep parameters.
  if (!(cfg.classifier.divergence_factor > 1.0)) {
    check.fail_field("classifier.divergence_factor", "must exceed 1");
  }
  if (!(cfg.classifier.decay_threshold > 0.0)) {
    check.fail_field("classifier.decay_threshold", "must be positive");
  }
  if (!(cfg.classifier.tail_fraction > 0.0 && cfg.classifier.tail_fraction < 1.0)) {
    check.fail_field("classifier.tail_fraction", "must lie in (0, 1)");
  }
  if (cfg.angle_step == 0.0) {
    cfg.angle_step = std::numbers::pi / 100.0;
  }
  const double two_pi = 2.0 * std::numbers::pi;
  const double ratio = two_pi / cfg.angle_step;
  if (!(cfg.angle_step > 0.0) || std::abs(ratio - std::round(ratio)) > 1e-6) {
    check.fail_field("region.angle_step", "must divide 2*pi");
  }
  if (cfg.zeta_bar && !(*cfg.zeta_bar > 0.0)) {
    check.fail_field("linearization.zeta_bar", "must be positive");
  }

  return result;
}

ConfigResult load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    ConfigResult result;
    result.errors.push_back("cannot open config file: " + path);
    return result;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string dump_config(const ScenarioConfig& cfg) {
  std::ostringstream out;
  char buf[64];
  auto num = [&buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  out << "name = " << cfg.name << "\n\n[system]\n";
  out << "n = " << cfg.n << "\n";
  out << "t0 = " << num(cfg.t0) << "\n";
  out << "t_end = " << num(cfg.t_end) << "\n";
  out << "step = " << num(cfg.step) << "\n";
  out << "output_stride = " << num(cfg.output_stride) << "\n";
  out << "\n[matrix]\n";
  for (int i = 0; i < cfg.n; ++i) {
    for (int j = 0; j < cfg.n; ++j) {
      out << "entry = " << (i + 1) << " " << (j + 1) << " | " << cfg.A.entry(i, j).str() << "\n";
    }
  }
  if (cfg.delays.count() > 0) {
    out << "\n[delays]\n";
    out << "h_bar = " << num(cfg.delays.h_bar) << "\n";
    out << "h_floor = " << num(cfg.delays.h_floor) << "\n";
    for (const auto& d : cfg.delays.channels) out << "delay = " << d.str() << "\n";
  }
  if (!cfg.field.empty()) {
    out << "\n[field]\n";
    for (const auto& term : cfg.field.monomials) {
      out << "monomial = " << term.target << " | " << term.coefficient.str() << " | ";
      for (std::size_t k = 0; k < term.factors.size(); ++k) {
        if (k) out << " ; ";
        out << term.factors[k].slot << "," << term.factors[k].component << ","
            << term.factors[k].exponent;
      }
      out << "\n";
    }
    for (const auto& block : cfg.field.blocks) {
      out << "linear_block = " << block.slot << " | " << block.scale.str() << " | ";
      bool first = true;
      for (int i = 0; i < cfg.n; ++i) {
        for (int j = 0; j < cfg.n; ++j) {
          if (!first) out << " ; ";
          first = false;
          out << block.matrix.entry(i, j).str();
        }
      }
      out << "\n";
    }
  }
  out << "\n[forcing]\n";
  out << "F0 = " << num(cfg.F0) << "\n";
  for (const auto& e : cfg.forcing_envelope) out << "e = " << e.str() << "\n";
  out << "\n[history]\n";
  if (cfg.history_const) {
    out << "const =";
    for (int i = 0; i < cfg.history_const->size(); ++i) out << " " << num((*cfg.history_const)(i));
    out << "\n";
  } else {
    for (const auto& e : cfg.history_exprs) out << "expr = " << e.str() << "\n";
  }
  out << "\n[classifier]\n";
  out << "horizon = " << num(cfg.classifier.horizon) << "\n";
  out << "divergence_factor = " << num(cfg.classifier.divergence_factor) << "\n";
  out << "decay_threshold = " << num(cfg.classifier.decay_threshold) << "\n";
  out << "tail_fraction = " << num(cfg.classifier.tail_fraction) << "\n";
  out << "\n[region]\n";
  out << "scalar_horizon = " << num(cfg.scalar_horizon) << "\n";
  out << "angle_step = " << num(cfg.angle_step) << "\n";
  out << "cap = " << num(cfg.sweep_cap) << "\n";
  out << "tol_rel = " << num(cfg.sweep_tol_rel) << "\n";
  out << "initial_radius = " << num(cfg.sweep_initial_radius) << "\n";
  if (cfg.zeta_bar) {
    out << "\n[linearization]\n";
    out << "zeta_bar = " << num(*cfg.zeta_bar) << "\n";
    out << "p_margin = " << num(cfg.p_margin) << "\n";
  }
  out << "\n[verify]\n";
  out << "seed = " << cfg.seed << "\n";
  out << "count = " << cfg.suite_count << "\n";
  out << "\n[output]\n";
  out << "dir = " << cfg.output_dir << "\n";
  return out.str();
}

}  // namespace delaybound
