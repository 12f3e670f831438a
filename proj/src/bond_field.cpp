#include "isinghom/bond_field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "isinghom/json_util.hpp"
#include "json.hpp"

namespace isinghom {

namespace {

void check_weights(const std::vector<double>& w, int period, const char* which,
                   const std::optional<MixturePhases>& phases) {
  const std::size_t n = static_cast<std::size_t>(period) * static_cast<std::size_t>(period);
  if (w.size() != n)
    throw std::invalid_argument(std::string("bond field: ") + which + " array is not T x T");
  for (double x : w) {
    if (!std::isfinite(x) || x <= 0.0)
      throw std::invalid_argument("bond field: non-positive weight");
    if (phases && x != phases->alpha && x != phases->beta)
      throw std::invalid_argument("bond field: weight outside {alpha, beta} in mixture field");
  }
}

}  // namespace

BondField::BondField(int period, std::vector<double> horizontal, std::vector<double> vertical,
                     std::optional<MixturePhases> phases)
    : period_(period), h_(std::move(horizontal)), v_(std::move(vertical)),
      phases_(std::move(phases)) {
  if (period_ < 1) throw std::invalid_argument("bond field: period must be positive");
  if (phases_) {
    if (!std::isfinite(phases_->alpha) || !std::isfinite(phases_->beta) ||
        phases_->alpha <= 0.0 || !(phases_->alpha < phases_->beta))
      throw std::invalid_argument("bond field: mixture phases need 0 < alpha < beta");
  }
  check_weights(h_, period_, "horizontal", phases_);
  check_weights(v_, period_, "vertical", phases_);
  min_w_ = std::min(*std::min_element(h_.begin(), h_.end()),
                    *std::min_element(v_.begin(), v_.end()));
  max_w_ = std::max(*std::max_element(h_.begin(), h_.end()),
                    *std::max_element(v_.begin(), v_.end()));
}

double BondField::alpha() const {
  if (!phases_) throw std::logic_error("bond field: not a tagged mixture");
  return phases_->alpha;
}

double BondField::beta() const {
  if (!phases_) throw std::logic_error("bond field: not a tagged mixture");
  return phases_->beta;
}

bool BondField::operator==(const BondField& other) const {
  return period_ == other.period_ && h_ == other.h_ && v_ == other.v_ &&
         phases_.has_value() == other.phases_.has_value() &&
         (!phases_ || (phases_->alpha == other.phases_->alpha &&
                       phases_->beta == other.phases_->beta));
}

VolumeFractions volume_fractions(const BondField& field) {
  if (!field.is_mixture())
    throw std::invalid_argument("volume fractions: field is not a tagged mixture");
  const double beta = field.beta();
  long long ch = 0, cv = 0;
  for (double w : field.horizontal_cell()) ch += (w == beta);
  for (double w : field.vertical_cell()) cv += (w == beta);
  const long long cell = static_cast<long long>(field.period()) * field.period();
  VolumeFractions out;
  out.horizontal_beta_count = ch;
  out.vertical_beta_count = cv;
  out.theta_h = Rational(ch, cell);
  out.theta_v = Rational(cv, cell);
  out.theta = Rational(ch + cv, 2 * cell);
  return out;
}

BondField random_mixture(int period, double theta, std::uint64_t seed, double alpha, double beta) {
  if (period < 1) throw std::invalid_argument("random mixture: period must be positive");
  if (!(theta >= 0.0 && theta <= 1.0))
    throw std::invalid_argument("random mixture: theta outside [0, 1]");
  const long long cell = static_cast<long long>(period) * period;
  const long long slots = 2 * cell;
  const long long count = std::llround(theta * static_cast<double>(slots));
  std::vector<std::size_t> order(static_cast<std::size_t>(slots));
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<double> h(static_cast<std::size_t>(cell), alpha);
  std::vector<double> v(static_cast<std::size_t>(cell), alpha);
  for (long long i = 0; i < count; ++i) {
    std::size_t s = order[static_cast<std::size_t>(i)];
    if (s < static_cast<std::size_t>(cell))
      h[s] = beta;
    else
      v[s - static_cast<std::size_t>(cell)] = beta;
  }
  return BondField(period, std::move(h), std::move(v), MixturePhases{alpha, beta});
}

BondField transpose(const BondField& field) {
  const int t = field.period();
  const std::size_t n = static_cast<std::size_t>(t);
  std::vector<double> h(n * n), v(n * n);
  // Reflection across the diagonal maps the horizontal bond at (x, y) to the
  // vertical bond at (y, x) and vice versa.
  for (int y = 0; y < t; ++y)
    for (int x = 0; x < t; ++x) {
      h[n * static_cast<std::size_t>(y) + static_cast<std::size_t>(x)] =
          field.vertical_cell()[n * static_cast<std::size_t>(x) + static_cast<std::size_t>(y)];
      v[n * static_cast<std::size_t>(y) + static_cast<std::size_t>(x)] =
          field.horizontal_cell()[n * static_cast<std::size_t>(x) + static_cast<std::size_t>(y)];
    }
  std::optional<MixturePhases> phases;
  if (field.is_mixture()) phases = MixturePhases{field.alpha(), field.beta()};
  return BondField(t, std::move(h), std::move(v), phases);
}

BondField scale(const BondField& field, double factor) {
  if (!std::isfinite(factor) || factor <= 0.0)
    throw std::invalid_argument("scale: factor must be positive");
  std::vector<double> h = field.horizontal_cell();
  std::vector<double> v = field.vertical_cell();
  for (double& x : h) x *= factor;
  for (double& x : v) x *= factor;
  std::optional<MixturePhases> phases;
  if (field.is_mixture()) phases = MixturePhases{field.alpha() * factor, field.beta() * factor};
  return BondField(field.period(), std::move(h), std::move(v), phases);
}

namespace {

void append_matrix(std::string& out, const std::vector<double>& m, int t) {
  out += '[';
  for (int y = 0; y < t; ++y) {
    if (y) out += ',';
    out += '[';
    for (int x = 0; x < t; ++x) {
      if (x) out += ',';
      out += fmt_double(m[static_cast<std::size_t>(y) * static_cast<std::size_t>(t) +
                          static_cast<std::size_t>(x)]);
    }
    out += ']';
  }
  out += ']';
}

}  // namespace

std::string serialize(const BondField& field) {
  std::string out = "{\"T\":" + std::to_string(field.period());
  if (field.is_mixture()) {
    out += ",\"alpha\":" + fmt_double(field.alpha());
    out += ",\"beta\":" + fmt_double(field.beta());
  }
  out += ",\"horizontal\":";
  append_matrix(out, field.horizontal_cell(), field.period());
  out += ",\"vertical\":";
  append_matrix(out, field.vertical_cell(), field.period());
  out += '}';
  return out;
}

BondField parse_bond_field(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed bond-field document: ") + e.what());
  }
  try {
    const int t = j.at("T").get<int>();
    auto read_matrix = [&](const char* key) {
      const auto& rows = j.at(key);
      if (!rows.is_array() || rows.size() != static_cast<std::size_t>(t))
        throw std::runtime_error(std::string("bond-field document: bad ") + key);
      std::vector<double> m;
      m.reserve(static_cast<std::size_t>(t) * static_cast<std::size_t>(t));
      for (const auto& row : rows) {
        if (!row.is_array() || row.size() != static_cast<std::size_t>(t))
          throw std::runtime_error(std::string("bond-field document: ragged ") + key);
        for (const auto& x : row) m.push_back(x.get<double>());
      }
      return m;
    };
    std::vector<double> h = read_matrix("horizontal");
    std::vector<double> v = read_matrix("vertical");
    std::optional<MixturePhases> phases;
    const bool has_a = j.contains("alpha"), has_b = j.contains("beta");
    if (has_a != has_b)
      throw std::runtime_error("bond-field document: alpha and beta must appear together");
    if (has_a) phases = MixturePhases{j.at("alpha").get<double>(), j.at("beta").get<double>()};
    return BondField(t, std::move(h), std::move(v), phases);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed bond-field document: ") + e.what());
  }
}

std::string field_hash(const BondField& field) { return fnv1a_hex(serialize(field)); }

}  // namespace isinghom
