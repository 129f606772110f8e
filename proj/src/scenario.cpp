#include "delaybound/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace delaybound {

namespace {

// Second-order oscillator with time-varying drift lambda(t), delayed linear
// coupling and a cubic delayed nonlinearity:
//   xdot = (A0(t) + A1(t)) x + rho A1(t) x(t-h) + b [0, x2^3(t-h)] + F0 e(t)
// with A0 = diag(lambda, lambda) and A1 = [[0, 1], [-omega(t), -alpha1]].
// rho, b, h, alpha1 and the history amplitude are artifact defaults chosen
// inside the autonomous stability range; they are not sourced values.
std::string oscillator_config(const std::string& name, const std::string& lambda,
                              double F0) {
  const std::string omega = "1 + 0.1*(sin(t) + sin(pi*t))";
  std::string text;
  text += "name = " + name + "\n";
  text +=
      "\n[system]\n"
      "n = 2\n"
      "t0 = 0\n"
      "t_end = 20\n"
      "step = 0.01\n"
      "output_stride = 0.1\n";
  text += "\n[matrix]\n";
  text += "entry = 1 1 | " + lambda + "\n";
  text += "entry = 2 2 | " + lambda + "\n";
  text +=
      "\n[delays]\n"
      "h_bar = 0.5\n"
      "h_floor = 0.5\n"
      "delay = 0.5\n";
  text += "\n[field]\n";
  text += "linear_block = 1 | 1 | 0 ; 1 ; -(" + omega + ") ; -1\n";
  text += "linear_block = 2 | 0.1 | 0 ; 1 ; -(" + omega + ") ; -1\n";
  text += "monomial = 2 | 0.1 | 2,2,3\n";
  text += "\n[forcing]\n";
  text += "F0 = " + std::to_string(F0) + "\n";
  if (F0 > 0.0) {
    text += "e = 0\n";
    text += "e = sin(10*t)\n";
  }
  text +=
      "\n[history]\n"
      "const = 0.18 0.24\n";
  text +=
      "\n[classifier]\n"
      "horizon = 20\n";
  text +=
      "\n[region]\n"
      "scalar_horizon = 200\n";
  text +=
      "\n[linearization]\n"
      "zeta_bar = 1\n";
  text +=
      "\n[verify]\n"
      "seed = 7\n"
      "count = 100\n";
  return text;
}

std::string delay_linear_config() {
  return
      "name = oracle_delay_linear\n"
      "\n[system]\n"
      "n = 1\n"
      "t0 = 0\n"
      "t_end = 8\n"
      "step = 0.015625\n"  // 1/64
      "output_stride = 0.125\n"
      "\n[matrix]\n"
      "entry = 1 1 | 0\n"
      "\n[delays]\n"
      "h_bar = 1\n"
      "h_floor = 1\n"
      "delay = 1\n"
      "\n[field]\n"
      "linear_block = 2 | 1 | -1\n"
      "\n[history]\n"
      "const = 1\n";
}

std::string diag_config() {
  return
      "name = oracle_diag\n"
      "\n[system]\n"
      "n = 2\n"
      "t0 = 0\n"
      "t_end = 3\n"
      "step = 0.001\n"
      "output_stride = 0.1\n"
      "\n[matrix]\n"
      "entry = 1 1 | -1\n"
      "entry = 2 2 | -2\n"
      "\n[history]\n"
      "const = 1 0\n";
}

std::string rotation_config() {
  return
      "name = oracle_rotation\n"
      "\n[system]\n"
      "n = 2\n"
      "t0 = 0\n"
      "t_end = 3\n"
      "step = 0.001\n"
      "output_stride = 0.1\n"
      "\n[matrix]\n"
      "entry = 1 2 | 1\n"
      "entry = 2 1 | -1\n"
      "\n[history]\n"
      "const = 1 0\n";
}

const char* kLambdaA = "-3 + 0.1*sin(5*t)";
const char* kLambdaB = "-3 + exp(-t)";

struct Entry {
  const char* name;
  const char* summary;
  std::string (*text)();
};

std::string sec5_case_a_text() { return oscillator_config("sec5_case_a", kLambdaA, 0.5); }
std::string sec5_case_a_free_text() {
  return oscillator_config("sec5_case_a_free", kLambdaA, 0.0);
}
std::string sec5_case_b_text() { return oscillator_config("sec5_case_b", kLambdaB, 0.5); }
std::string sec5_case_b_free_text() {
  return oscillator_config("sec5_case_b_free", kLambdaB, 0.0);
}

const Entry kRegistry[] = {
    {"sec5_case_a", "oscillator, sinusoidal drift modulation, forced (F0 = 0.5)",
     sec5_case_a_text},
    {"sec5_case_a_free", "oscillator, sinusoidal drift modulation, unforced",
     sec5_case_a_free_text},
    {"sec5_case_b", "oscillator, decaying drift modulation, forced (F0 = 0.5)",
     sec5_case_b_text},
    {"sec5_case_b_free", "oscillator, decaying drift modulation, unforced",
     sec5_case_b_free_text},
    {"oracle_delay_linear", "ydot = -y(t-1), constant history 1; closed-form knots",
     delay_linear_config},
    {"oracle_diag", "A = diag(-1, -2); growth rate -1, condition number e^t", diag_config},
    {"oracle_rotation", "A = [[0, 1], [-1, 0]]; growth rate 0, condition number 1",
     rotation_config},
};

void attach_spots(ReferenceScenario& s) {
  if (s.name == "oracle_delay_linear") {
    // Piecewise polynomial from stepping the delay interval by interval:
    // y = 1 - t on [0, 1], then y(2) = -1/2.
    s.spots.push_back({"y", 1.0, 0.0, 1e-8, "method of steps closed form"});
    s.spots.push_back({"y", 2.0, -0.5, 1e-8, "method of steps closed form"});
  } else if (s.name == "oracle_diag") {
    s.spots.push_back({"p", 1.5, -1.0, 1e-4, "diagonal closed form"});
    s.spots.push_back({"c", 1.0, std::exp(1.0), std::exp(1.0) * 1e-6,
                       "diagonal closed form"});
  } else if (s.name == "oracle_rotation") {
    s.spots.push_back({"p", 1.5, 0.0, 1e-6, "rotation closed form"});
    s.spots.push_back({"c", 1.5, 1.0, 1e-6, "rotation closed form"});
  } else if (s.name.rfind("sec5_case_a", 0) == 0) {
    // Diagonal A0 means the fundamental matrix is diag(eta, eta), so the
    // growth rate equals lambda(t) and the condition number is 1.
    s.spots.push_back({"p", 1.0, -3.0 + 0.1 * std::sin(5.0), 1e-4,
                       "diagonal fundamental matrix"});
    s.spots.push_back({"c", 1.0, 1.0, 1e-6, "diagonal fundamental matrix"});
  } else if (s.name.rfind("sec5_case_b", 0) == 0) {
    s.spots.push_back({"p", 1.0, -3.0 + std::exp(-1.0), 1e-4,
                       "diagonal fundamental matrix"});
    s.spots.push_back({"c", 1.0, 1.0, 1e-6, "diagonal fundamental matrix"});
  }
}

}  // namespace

std::vector<std::string> list_scenarios() {
  std::vector<std::string> names;
  for (const auto& entry : kRegistry) names.push_back(entry.name);
  return names;
}

ReferenceScenario load_scenario(const std::string& name) {
  for (const auto& entry : kRegistry) {
    if (name == entry.name) {
      ReferenceScenario s;
      s.name = entry.name;
      s.summary = entry.summary;
      s.config_text = entry.text();
      ConfigResult parsed = parse_config(s.config_text);
      if (!parsed.ok()) {
        std::string message = "built-in scenario '" + name + "' failed validation:";
        for (const auto& e : parsed.errors) message += "\n  " + e;
        throw std::logic_error(message);
      }
      s.config = parsed.config;
      attach_spots(s);
      return s;
    }
  }
  throw std::invalid_argument("unknown scenario: " + name);
}

}  // namespace delaybound
