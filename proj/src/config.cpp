#include "trapdecay/config.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

namespace trapdecay {

namespace {

const std::set<std::string, std::less<>> kKnownKeys = {
    "half_width", "gamma",   "omega_bar",   "initial",     "gamma0",    "gbar",
    "n_photons",  "exact_ladder", "t_max",  "samples",     "threshold", "sweep_param",
    "sweep_values", "probe_time", "output", "format",
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> items;
  if (trim(s).empty()) return items;
  std::size_t begin = 0;
  while (true) {
    const auto comma = s.find(',', begin);
    items.push_back(trim(s.substr(begin, comma - begin)));
    if (comma == std::string_view::npos) break;
    begin = comma + 1;
  }
  return items;
}

[[noreturn]] void syntax(const std::string& key, const std::string& what) {
  throw Error(ErrorCode::ConfigSyntax, key + ": " + what, key);
}

[[noreturn]] void range(const std::string& key, const std::string& what) {
  throw Error(ErrorCode::ConfigRange, key + ": " + what, key);
}

class Document {
 public:
  explicit Document(std::map<std::string, std::string> entries) : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  double real(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    auto v = parse_real(entries_.at(key));
    if (!v) syntax(key, "expected a real number");
    return *v;
  }

  std::vector<double> reals(const std::string& key) const {
    std::vector<double> out;
    for (auto item : split_list(entries_.at(key))) {
      auto v = parse_real(item);
      if (!v) syntax(key, "expected a comma separated list of reals");
      out.push_back(*v);
    }
    return out;
  }

  std::vector<std::complex<double>> complexes(const std::string& key) const {
    std::vector<std::complex<double>> out;
    for (auto item : split_list(entries_.at(key))) {
      auto v = parse_complex(item);
      if (!v) syntax(key, "expected a comma separated list of complex numbers");
      out.push_back(*v);
    }
    return out;
  }

  long long integer(const std::string& key, long long fallback) const {
    if (!has(key)) return fallback;
    const std::string& text = entries_.at(key);
    long long value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) syntax(key, "expected an integer");
    return value;
  }

  bool boolean(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string& text = entries_.at(key);
    if (text == "true") return true;
    if (text == "false") return false;
    syntax(key, "expected true or false");
  }

  const std::string& text(const std::string& key) const { return entries_.at(key); }

 private:
  std::map<std::string, std::string> entries_;
};

std::map<std::string, std::string> tokenize(std::string_view text) {
  std::map<std::string, std::string> entries;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    auto end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    const auto line = trim(text.substr(begin, end - begin));
    begin = end + 1;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      const std::string key(line);
      syntax(key, "expected key = value");
    }
    const std::string key(trim(line.substr(0, eq)));
    if (!kKnownKeys.contains(key)) syntax(key, "unknown key");
    if (!entries.emplace(key, std::string(trim(line.substr(eq + 1)))).second) {
      syntax(key, "duplicate key");
    }
  }
  return entries;
}

template <typename T>
std::string join(const std::vector<T>& items, std::string (*fmt)(T)) {
  std::string out;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k) out += ", ";
    out += fmt(items[k]);
  }
  return out;
}

}  // namespace

bool operator==(const RunConfig& a, const RunConfig& b) {
  const auto& p = a.params;
  const auto& q = b.params;
  const bool params_equal = p.half_width == q.half_width && p.omega_bar == q.omega_bar &&
                            p.gamma.size() == q.gamma.size() && p.gamma == q.gamma &&
                            p.initial.size() == q.initial.size() && p.initial == q.initial;
  bool drive_equal = a.drive.has_value() == b.drive.has_value();
  if (drive_equal && a.drive) {
    drive_equal = a.drive->gamma0 == b.drive->gamma0 && a.drive->gbar == b.drive->gbar &&
                  a.drive->n_photons == b.drive->n_photons &&
                  a.drive->exact_ladder == b.drive->exact_ladder;
  }
  return params_equal && drive_equal && a.t_max == b.t_max && a.samples == b.samples &&
         a.threshold == b.threshold && a.sweep == b.sweep && a.output == b.output &&
         a.format == b.format;
}

RunConfig default_config() { return parse_config(""); }

std::optional<double> parse_real(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::optional<std::complex<double>> parse_complex(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (text.back() != 'i') {
    auto re = parse_real(text);
    if (!re) return std::nullopt;
    return std::complex<double>(*re, 0);
  }
  text.remove_suffix(1);
  // Split at the last sign that is not part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = text.size(); k-- > 1;) {
    if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  const std::string_view re_text = split == std::string_view::npos ? "0" : text.substr(0, split);
  std::string im_text(split == std::string_view::npos ? text : text.substr(split));
  if (im_text.empty() || im_text == "+" || im_text == "-") im_text += "1";
  auto re = parse_real(re_text);
  auto im = parse_real(im_text);
  if (!re || !im) return std::nullopt;
  return std::complex<double>(*re, *im);
}

std::string format_shortest(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string format_complex(std::complex<double> value) {
  const double im = value.imag();
  return format_shortest(value.real()) + (std::signbit(im) ? "-" : "+") +
         format_shortest(std::fabs(im)) + "i";
}

RunConfig parse_config(std::string_view text, const std::map<std::string, std::string>& overrides) {
  auto entries = tokenize(text);
  for (const auto& [key, value] : overrides) {
    if (!kKnownKeys.contains(key)) syntax(key, "unknown key");
    entries[key] = std::string(trim(value));
  }
  const Document doc(std::move(entries));
  RunConfig config;

  if (doc.has("gamma0") || doc.has("gbar") || doc.has("n_photons") || doc.has("exact_ladder")) {
    DrivingFieldSpec<double> drive;
    drive.gamma0 = doc.real("gamma0", 1.0);
    if (doc.has("gbar")) drive.gbar = doc.complexes("gbar");
    drive.n_photons = doc.real("n_photons", 1.0);
    drive.exact_ladder = doc.boolean("exact_ladder", false);
    if (!(drive.gamma0 >= 0)) range("gamma0", "must be nonnegative");
    if (!(drive.n_photons > 0)) range("n_photons", "must be positive");
    config.drive = std::move(drive);
  }

  std::optional<std::vector<double>> gamma;
  if (doc.has("gamma")) gamma = doc.reals("gamma");

  long long half_width = 1;
  if (doc.has("half_width")) {
    half_width = doc.integer("half_width", 1);
    if (half_width < 0 || half_width > 64) range("half_width", "must lie in [0, 64]");
  } else if (gamma) {
    if (gamma->size() % 2 == 0) range("gamma", "needs an odd number of levels");
    half_width = static_cast<long long>(gamma->size() / 2);
  } else if (config.drive) {
    half_width = config.drive->half_width();
  }
  const auto n = static_cast<int>(half_width);
  const auto levels = static_cast<Eigen::Index>(2 * n + 1);
  config.params.half_width = n;

  if (config.drive && config.drive->half_width() != n) {
    range("gbar", "length must equal half_width");
  }

  if (gamma) {
    if (static_cast<Eigen::Index>(gamma->size()) != levels) {
      range("gamma", "expected " + std::to_string(levels) + " rates");
    }
    config.params.gamma = Eigen::Map<const Eigen::VectorXd>(gamma->data(), levels);
  } else if (config.drive) {
    try {
      config.params.gamma = effective_rates(*config.drive);
    } catch (const Error& e) {
      range("n_photons", e.what());
    }
  } else {
    config.params.gamma = Eigen::VectorXd::Constant(levels, 0.5);
    config.params.gamma(n) = 1.0;
  }
  for (Eigen::Index k = 0; k < levels; ++k) {
    if (!(config.params.gamma(k) >= 0)) range("gamma", "rates must be nonnegative");
  }

  config.params.omega_bar = doc.real("omega_bar", 0.1);
  if (!(config.params.omega_bar >= 0)) range("omega_bar", "must be nonnegative");

  if (doc.has("initial")) {
    const auto initial = doc.complexes("initial");
    if (static_cast<Eigen::Index>(initial.size()) != levels) {
      range("initial", "expected " + std::to_string(levels) + " amplitudes");
    }
    config.params.initial = Eigen::Map<const Eigen::VectorXcd>(initial.data(), levels);
  } else {
    config.params.initial = MultipletParams<double>::central_state(n);
  }
  try {
    validate(config.params);
  } catch (const Error& e) {
    range("initial", e.what());
  }

  config.t_max = doc.real("t_max", 50.0);
  if (!(config.t_max > 0)) range("t_max", "must be positive");
  const long long samples = doc.integer("samples", 1000);
  if (samples < 2) range("samples", "must be at least 2");
  config.samples = static_cast<std::size_t>(samples);
  config.threshold = doc.real("threshold", 0.1);
  if (!(config.threshold > 0)) range("threshold", "must be positive");

  if (doc.has("sweep_param")) {
    SweepSpec sweep;
    const auto& name = doc.text("sweep_param");
    if (name == "omega_bar") {
      sweep.parameter = SweepParameter::omega_bar;
      sweep.probe_time = 300;
    } else if (name == "gamma_side") {
      sweep.parameter = SweepParameter::gamma_side;
      sweep.probe_time = 20;
    } else {
      range("sweep_param", "must be omega_bar or gamma_side");
    }
    if (!doc.has("sweep_values")) range("sweep_values", "required with sweep_param");
    sweep.values = doc.reals("sweep_values");
    if (sweep.values.empty()) range("sweep_values", "must not be empty");
    for (double v : sweep.values) {
      if (!(v >= 0)) range("sweep_values", "must be nonnegative");
    }
    sweep.probe_time = doc.real("probe_time", sweep.probe_time);
    if (!(sweep.probe_time >= 0)) range("probe_time", "must be nonnegative");
    config.sweep = std::move(sweep);
  } else if (doc.has("sweep_values") || doc.has("probe_time")) {
    range("sweep_param", "required when sweep_values or probe_time is set");
  }

  if (doc.has("output")) config.output = doc.text("output");
  if (doc.has("format")) {
    const auto& f = doc.text("format");
    if (f == "csv") {
      config.format = OutputFormat::csv;
    } else if (f == "json") {
      config.format = OutputFormat::json;
    } else {
      range("format", "must be csv or json");
    }
  }
  return config;
}

std::string render_config(const RunConfig& config) {
  std::ostringstream out;
  const auto& p = config.params;
  std::vector<double> gamma(p.gamma.data(), p.gamma.data() + p.gamma.size());
  std::vector<std::complex<double>> initial(p.initial.data(), p.initial.data() + p.initial.size());
  out << "half_width = " << p.half_width << '\n';
  out << "gamma = " << join<double>(gamma, format_shortest) << '\n';
  out << "omega_bar = " << format_shortest(p.omega_bar) << '\n';
  out << "initial = " << join<std::complex<double>>(initial, format_complex) << '\n';
  if (config.drive) {
    out << "gamma0 = " << format_shortest(config.drive->gamma0) << '\n';
    if (!config.drive->gbar.empty()) {
      out << "gbar = " << join<std::complex<double>>(config.drive->gbar, format_complex) << '\n';
    }
    out << "n_photons = " << format_shortest(config.drive->n_photons) << '\n';
    out << "exact_ladder = " << (config.drive->exact_ladder ? "true" : "false") << '\n';
  }
  out << "t_max = " << format_shortest(config.t_max) << '\n';
  out << "samples = " << config.samples << '\n';
  out << "threshold = " << format_shortest(config.threshold) << '\n';
  if (config.sweep) {
    out << "sweep_param = " << to_string(config.sweep->parameter) << '\n';
    out << "sweep_values = " << join<double>(config.sweep->values, format_shortest) << '\n';
    out << "probe_time = " << format_shortest(config.sweep->probe_time) << '\n';
  }
  if (!config.output.empty()) out << "output = " << config.output << '\n';
  out << "format = " << (config.format == OutputFormat::csv ? "csv" : "json") << '\n';
  return out.str();
}

}  // namespace trapdecay
