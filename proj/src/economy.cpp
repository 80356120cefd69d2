#include "eqlab/economy.hpp"

#include "eqlab/error.hpp"
#include "eqlab/random.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace eqlab {

bool strictly_positive(const Vector& v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return std::isfinite(x) && x > 0.0; });
}

PriceVector::PriceVector(Vector values) : values_(std::move(values)) {
  if (values_.size() < 2 || !strictly_positive(values_)) {
    throw DomainError("price out of domain");
  }
}

double UtilitySpec::value(const Vector& x) const {
  double u = 0.0;
  for (Eigen::Index l = 0; l < a.size(); ++l) u += a(l) * std::pow(x(l), b(l));
  return u;
}

Vector UtilitySpec::gradient(const Vector& x) const {
  Vector g(a.size());
  for (Eigen::Index l = 0; l < a.size(); ++l) {
    g(l) = a(l) * b(l) * std::pow(x(l), b(l) - 1.0);
  }
  return g;
}

Vector Economy::aggregate_endowment() const {
  Vector total = Vector::Zero(goods);
  for (const auto& c : consumers) {
    if (c.endowment.size() == goods) total += c.endowment;
  }
  return total;
}

bool ValidationReport::has(const std::string& rule) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.rule == rule; });
}

namespace {

constexpr double kShareTolerance = 1e-12;

std::string label(const char* kind, std::size_t index) {
  return std::string(kind) + " " + std::to_string(index + 1);
}

bool all_finite(const Vector& v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return std::isfinite(x); });
}

}  // namespace

ValidationReport validate_economy(const Economy& e) {
  ValidationReport report;
  auto fail = [&](std::string rule, std::string message) {
    report.violations.push_back({std::move(rule), std::move(message)});
  };

  if (e.goods < 2) {
    fail("dimension", "economy needs at least two goods");
    return report;
  }
  if (e.consumers.empty()) fail("consumers", "economy has no consumers");

  const Eigen::Index L = e.goods;
  const std::size_t mu = e.producers.size();
  bool shapes_ok = true;

  for (std::size_t i = 0; i < e.consumers.size(); ++i) {
    const auto& c = e.consumers[i];
    const auto who = label("consumer", i);
    if (c.utility.a.size() != L - 1 || c.utility.b.size() != L - 1) {
      fail("utility.dimension", who + ": utility needs L-1 coefficients and exponents");
      shapes_ok = false;
    } else {
      for (Eigen::Index l = 0; l < L - 1; ++l) {
        if (!(std::isfinite(c.utility.a(l)) && c.utility.a(l) > 0.0)) {
          fail("utility.a", who + ": coefficient a must be positive");
        }
        if (!(c.utility.b(l) > 0.0 && c.utility.b(l) < 1.0)) {
          fail("utility.b", who + ": exponent b must lie in (0, 1)");
        }
      }
    }
    if (c.endowment.size() != L) {
      fail("endowment.dimension", who + ": endowment needs L entries");
      shapes_ok = false;
    } else {
      if (!all_finite(c.endowment) || (c.endowment.array() < 0.0).any()) {
        fail("endowment.sign", who + ": endowment must be nonnegative");
      } else if (c.endowment.isZero(0.0)) {
        fail("endowment.zero", who + ": endowment must be nonzero");
      }
      if (e.mode == Mode::kSecondType && c.endowment(L - 1) <= 0.0) {
        fail("endowment.numeraire",
             who + ": second-type economies need a positive numeraire endowment");
      }
    }
    if (c.shares.size() != static_cast<Eigen::Index>(mu)) {
      fail("shares.dimension", who + ": one share per producer required");
      shapes_ok = false;
    } else if (!all_finite(c.shares) || (c.shares.array() < 0.0).any() ||
               (c.shares.array() > 1.0).any()) {
      fail("shares.range", who + ": shares must lie in [0, 1]");
    }
  }

  for (std::size_t j = 0; j < mu; ++j) {
    const auto& p = e.producers[j];
    const auto who = label("producer", j);
    if (p.output < 0 || p.output >= e.goods) {
      fail("producer.output", who + ": output good out of range");
    }
    if (p.inputs.empty()) fail("producer.inputs", who + ": needs at least one input");
    if (p.alpha.size() != static_cast<Eigen::Index>(p.inputs.size())) {
      fail("producer.alpha.dimension", who + ": one exponent per input required");
    }
    std::vector<int> seen;
    for (int k : p.inputs) {
      if (k < 0 || k >= e.goods) {
        fail("producer.inputs", who + ": input good out of range");
      } else if (k == p.output) {
        fail("producer.inputs", who + ": output good cannot be an input");
      } else if (std::find(seen.begin(), seen.end(), k) != seen.end()) {
        fail("producer.inputs", who + ": duplicate input good");
      }
      seen.push_back(k);
    }
    if (!(std::isfinite(p.scale) && p.scale > 0.0)) {
      fail("producer.scale", who + ": scale A must be positive");
    }
    if (!strictly_positive(p.alpha)) {
      fail("producer.alpha", who + ": exponents must be positive");
    } else if (!(p.returns_to_scale() < 1.0)) {
      fail("producer.returns", who + ": exponents must sum to less than one");
    }
    if (shapes_ok) {
      double total = 0.0;
      for (const auto& c : e.consumers) total += c.shares(static_cast<Eigen::Index>(j));
      if (std::abs(total - 1.0) > kShareTolerance) {
        std::ostringstream msg;
        msg << who << ": shares must sum to 1 (got " << total << ")";
        fail("shares.sum", msg.str());
      }
    }
  }

  if (shapes_ok && !e.consumers.empty()) {
    const Vector total = e.aggregate_endowment();
    for (Eigen::Index l = 0; l < L; ++l) {
      // A good nobody owns is admissible only if some producer makes it.
      const bool produced =
          std::any_of(e.producers.begin(), e.producers.end(),
                      [&](const ProducerSpec& p) { return p.output == l; });
      if (!(total(l) > 0.0) && !produced) {
        fail("endowment.aggregate",
             "aggregate endowment not strictly positive in good " +
                 std::to_string(l + 1));
      }
    }
  }
  return report;
}

void require_valid(const Economy& economy) {
  const auto report = validate_economy(economy);
  if (report.ok()) return;
  std::string msg = "invalid economy:";
  for (const auto& v : report.violations) msg += " [" + v.rule + "] " + v.message + ";";
  throw DomainError(msg);
}

Economy generate_random_economy(std::uint64_t seed, int goods, int consumers,
                                int producers) {
  if (goods < 2 || consumers < 1 || producers < 0) {
    throw DomainError("bad dimensions");
  }
  Rng rng(seed);
  Economy e;
  e.goods = goods;
  e.mode = Mode::kFirstType;
  const Eigen::Index L = goods;

  std::vector<Vector> share_columns;
  for (int j = 0; j < producers; ++j) {
    Vector w(consumers);
    for (int i = 0; i < consumers; ++i) w(i) = rng.exponential();
    share_columns.push_back(w / w.sum());
  }

  for (int i = 0; i < consumers; ++i) {
    ConsumerSpec c;
    c.utility.a.resize(L - 1);
    c.utility.b.resize(L - 1);
    for (Eigen::Index l = 0; l < L - 1; ++l) {
      c.utility.a(l) = rng.uniform(0.5, 4.0);
      c.utility.b(l) = rng.uniform(0.2, 0.8);
    }
    c.endowment.resize(L);
    for (Eigen::Index l = 0; l < L - 1; ++l) {
      // A third of the non-numeraire holdings are exactly zero.
      c.endowment(l) = rng.uniform() < 1.0 / 3.0 ? 0.0 : rng.uniform(0.0, 5.0);
    }
    c.endowment(L - 1) = rng.uniform(5.0, 20.0);
    c.shares.resize(producers);
    for (int j = 0; j < producers; ++j) c.shares(j) = share_columns[j](i);
    e.consumers.push_back(std::move(c));
  }

  const Vector total = e.aggregate_endowment();
  for (Eigen::Index l = 0; l < L; ++l) {
    if (total(l) <= 0.0) e.consumers.front().endowment(l) += 0.1;
  }

  for (int j = 0; j < producers; ++j) {
    ProducerSpec p;
    p.output = static_cast<int>(rng.below(static_cast<std::uint64_t>(goods)));
    std::vector<int> others;
    for (int k = 0; k < goods; ++k) {
      if (k != p.output) others.push_back(k);
    }
    // Nonempty random subset of the remaining goods.
    const auto mask_count = (std::uint64_t{1} << others.size()) - 1;
    const auto mask = 1 + rng.below(mask_count);
    for (std::size_t k = 0; k < others.size(); ++k) {
      if (mask & (std::uint64_t{1} << k)) p.inputs.push_back(others[k]);
    }
    p.scale = rng.uniform(0.5, 2.0);
    Vector raw(static_cast<Eigen::Index>(p.inputs.size()));
    for (Eigen::Index k = 0; k < raw.size(); ++k) raw(k) = rng.uniform(0.1, 1.0);
    p.alpha = raw * (rng.uniform(0.2, 0.8) / raw.sum());
    e.producers.push_back(std::move(p));
  }
  return e;
}

Economy desk_economy() {
  Economy e;
  e.goods = 2;
  e.mode = Mode::kFirstType;
  ConsumerSpec c;
  c.utility = {make_vector({2.0}), make_vector({0.5})};
  c.endowment = make_vector({0.0, 10.0});
  c.shares = make_vector({1.0});
  e.consumers.push_back(c);
  ProducerSpec p;
  p.output = 0;
  p.inputs = {1};
  p.scale = 1.0;
  p.alpha = make_vector({0.5});
  e.producers.push_back(p);
  return e;
}

Economy no_trade_economy() {
  Economy e;
  e.goods = 2;
  e.mode = Mode::kFirstType;
  ConsumerSpec c;
  c.utility = {make_vector({2.0}), make_vector({0.5})};
  c.endowment = make_vector({1.0, 5.0});
  c.shares = Vector(0);
  e.consumers.push_back(c);
  return e;
}

const char* to_string(Mode mode) {
  return mode == Mode::kFirstType ? "first" : "second";
}

}  // namespace eqlab
