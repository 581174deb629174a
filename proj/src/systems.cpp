#include "lacuna/systems.hpp"

#include <algorithm>
#include <bit>

namespace lacuna {

Rational ExactReal::rational_value() const {
  if (q_.is_zero()) return Rational(0);
  if (p_ % 2 != 0)
    throw IrrationalData("exact real: odd amplitude power, value irrational");
  return q_ * pow(amp_sq_, p_ / 2);
}

double ExactReal::to_double() const {
  if (q_.is_zero()) return 0.0;
  return q_.to_double() * std::pow(amp_sq_.to_double(), 0.5 * p_);
}

std::string kind_name(SystemKind kind) {
  switch (kind) {
    case SystemKind::Rademacher: return "rademacher";
    case SystemKind::Walsh: return "walsh";
    case SystemKind::TrigSine: return "trig-sine";
    case SystemKind::TrigCosine: return "trig-cosine";
    case SystemKind::CustomStep: return "custom-step";
  }
  return "?";
}

bool ExponentPattern::valid_full() const {
  int ones = 0, twos = 0;
  for (int v : theta) {
    if (v == 1) ++ones;
    else if (v == 2) ++twos;
    else if (v != 0) return false;
  }
  return ones >= 1 && twos <= 1;
}

bool ExponentPattern::valid_square_free() const {
  int ones = 0;
  for (int v : theta) {
    if (v == 1) ++ones;
    else if (v != 0) return false;
  }
  return ones >= 1;
}

std::vector<ExponentPattern> enumerate_patterns(int s, bool square_free_only) {
  if (s < 1) throw Error("patterns: s must be >= 1");
  if (s > 16) throw TooManyIndices("patterns: s exceeds enumeration bound 16");
  std::vector<ExponentPattern> out;
  // {0,1} part: every nonempty support, lexicographic in theta.
  std::vector<int> theta(s, 0);
  const int base = square_free_only ? 2 : 3;
  while (true) {
    // Increment base-`base` counter (theta[s-1] least significant).
    int pos = s - 1;
    while (pos >= 0) {
      if (++theta[pos] < base) break;
      theta[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
    ExponentPattern p{theta};
    if (square_free_only ? p.valid_square_free() : p.valid_full()) out.push_back(p);
  }
  std::sort(out.begin(), out.end(),
            [](const ExponentPattern& a, const ExponentPattern& b) {
              return a.theta < b.theta;
            });
  return out;
}

SystemSpec SystemSpec::rademacher(int m) {
  // Size is not limited by the step cap: only materialising a member as a
  // step function is (expectations use the closed form).
  if (m < 1 || m > (1 << 20)) throw Error("system: rademacher size out of range");
  SystemSpec s;
  s.kind_ = SystemKind::Rademacher;
  s.count_ = m;
  s.amplitude_ = SqrtRational::of_rational(Rational(1));
  s.bound_ = s.amplitude_;
  return s;
}

SystemSpec SystemSpec::walsh(int m) {
  if (m < 1 || m > (1 << 20)) throw Error("system: walsh size out of range");
  SystemSpec s;
  s.kind_ = SystemKind::Walsh;
  s.count_ = m;
  s.amplitude_ = SqrtRational::of_rational(Rational(1));
  s.bound_ = s.amplitude_;
  return s;
}

namespace {

void check_freqs(const std::vector<long long>& freqs) {
  if (freqs.empty()) throw Error("system: empty frequency list");
  long long prev = 0;
  for (long long k : freqs) {
    if (k <= prev)
      throw Error("system: frequencies must be strictly increasing positive");
    prev = k;
  }
}

}  // namespace

SystemSpec SystemSpec::trig_sine(std::vector<long long> freqs,
                                 SqrtRational amplitude) {
  check_freqs(freqs);
  SystemSpec s;
  s.kind_ = SystemKind::TrigSine;
  s.count_ = static_cast<int>(freqs.size());
  s.freqs_ = std::move(freqs);
  s.amplitude_ = amplitude;
  s.bound_ = amplitude;
  return s;
}

SystemSpec SystemSpec::trig_cosine(std::vector<long long> freqs,
                                   SqrtRational amplitude) {
  check_freqs(freqs);
  SystemSpec s;
  s.kind_ = SystemKind::TrigCosine;
  s.count_ = static_cast<int>(freqs.size());
  s.freqs_ = std::move(freqs);
  s.amplitude_ = amplitude;
  s.bound_ = amplitude;
  return s;
}

SystemSpec SystemSpec::custom_step(std::vector<StepFunction> functions) {
  if (functions.empty()) throw Error("system: empty custom function list");
  for (const auto& f : functions)
    if (f.domain_length() != functions.front().domain_length())
      throw Error("system: custom functions must share a domain");
  SystemSpec s;
  s.kind_ = SystemKind::CustomStep;
  s.count_ = static_cast<int>(functions.size());
  s.funcs_ = std::move(functions);
  Rational m(0);
  for (const auto& f : s.funcs_) m = max(m, f.max_abs());
  if (m.is_zero()) m = Rational(1);
  s.amplitude_ = SqrtRational::of_rational(m);
  s.bound_ = s.amplitude_;
  return s;
}

int SystemSpec::size() const { return count_; }

void SystemSpec::set_bound(const SqrtRational& d) {
  if (d.squared() < bound_.squared())
    throw BoundViolated("system: D below the natural uniform bound");
  bound_ = d;
}

Rational SystemSpec::member_norm2_sq(int index) const {
  if (index < 1 || index > count_) throw Error("system: index out of range");
  switch (kind_) {
    case SystemKind::Rademacher:
    case SystemKind::Walsh:
      return Rational(1);
    case SystemKind::TrigSine:
    case SystemKind::TrigCosine:
      // E[(amp sin)^2] = amp^2/2.
      return amplitude_.squared() / Rational(2);
    case SystemKind::CustomStep: {
      const StepFunction& f = funcs_[index - 1];
      return f.squared().mean();
    }
  }
  return Rational(0);
}

StepFunction SystemSpec::member_step(int index) const {
  if (index < 1 || index > count_) throw Error("system: index out of range");
  switch (kind_) {
    case SystemKind::Rademacher:
      if (index > 20)
        throw SizeExceeded("system: rademacher step beyond 2^20 pieces");
      return StepFunction::rademacher(index, Rational(1));
    case SystemKind::Walsh: {
      const int n = index;
      const int level = std::bit_width(static_cast<unsigned>(n));
      if (level > 20)
        throw SizeExceeded("system: walsh step beyond 2^20 pieces");
      const long long cells = 1LL << level;
      std::vector<Rational> bp, val;
      bp.reserve(cells + 1);
      val.reserve(cells);
      Rational width(1, cells);
      for (long long c = 0; c <= cells; ++c) bp.push_back(width * Rational(c));
      for (long long c = 0; c < cells; ++c) {
        int parity = 0;
        for (int b = 0; b < level; ++b) {
          if (n & (1 << b)) {
            // r_{b+1} sign on cell c of the 2^level grid.
            parity ^= static_cast<int>((c >> (level - b - 1)) & 1);
          }
        }
        val.push_back(parity ? -1 : 1);
      }
      return StepFunction(std::move(bp), std::move(val));
    }
    case SystemKind::CustomStep:
      return funcs_[index - 1];
    case SystemKind::TrigSine:
    case SystemKind::TrigCosine:
      throw UnsupportedKind("system: trig members have no step form");
  }
  throw UnsupportedKind("system: unknown kind");
}

double SystemSpec::member_eval(int index, double x) const {
  if (index < 1 || index > count_) throw Error("system: index out of range");
  switch (kind_) {
    case SystemKind::TrigSine:
      return amplitude_.value() *
             std::sin(2.0 * M_PI * static_cast<double>(freqs_[index - 1]) * x);
    case SystemKind::TrigCosine:
      return amplitude_.value() *
             std::cos(2.0 * M_PI * static_cast<double>(freqs_[index - 1]) * x);
    default:
      return member_step(index).eval(x);
  }
}

std::string SystemSpec::describe() const {
  std::string out = kind_name(kind_) + ":";
  switch (kind_) {
    case SystemKind::Rademacher:
    case SystemKind::Walsh:
      out += std::to_string(count_);
      break;
    case SystemKind::TrigSine:
    case SystemKind::TrigCosine:
      for (std::size_t i = 0; i < freqs_.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(freqs_[i]);
      }
      out += " amp=" + amplitude_.str();
      break;
    case SystemKind::CustomStep:
      out += std::to_string(count_) + " functions";
      break;
  }
  return out;
}

namespace {

// Expectation of a trig monomial by expansion into complex exponentials,
// iterating sign choices in Gray-code order. Returns the exact rational
// coefficient of amp^F.
Rational trig_expansion(const std::vector<long long>& factor_freqs, bool sine) {
  const int F = static_cast<int>(factor_freqs.size());
  if (F == 0) return Rational(1);
  if (F > 26) throw TooManyIndices("expectation: too many trig factors");
  if (sine && (F % 2 == 1)) return Rational(0);

  long long sum = 0;
  for (long long k : factor_freqs) sum += k;
  long long acc = 0;  // cosine: count; sine: signed product sum
  int prod = 1;
  std::vector<int> sign(F, 1);
  const unsigned long long total = 1ULL << F;
  if (sum == 0) acc += sine ? prod : 1;  // all-plus combo (impossible: k>0)
  for (unsigned long long i = 1; i < total; ++i) {
    int b = std::countr_zero(i);
    sign[b] = -sign[b];
    sum += static_cast<long long>(2 * sign[b]) * factor_freqs[b];
    prod = -prod;
    if (sum == 0) acc += sine ? prod : 1;
  }
  if (acc == 0) return Rational(0);
  Rational q(acc, static_cast<Rational::int_t>(1) << F);
  if (sine && (F / 2) % 2 == 1) q = -q;
  return q;
}

}  // namespace

ExactReal monomial_expectation(const SystemSpec& system,
                               const std::vector<int>& indices,
                               const ExponentPattern& theta) {
  if (indices.size() != theta.theta.size())
    throw PatternMismatch("expectation: pattern/indices length mismatch");
  for (int idx : indices)
    if (idx < 1 || idx > system.size())
      throw Error("expectation: index out of range");

  switch (system.kind()) {
    case SystemKind::Rademacher: {
      // Squares are identically 1; any distinct first-power factor kills the
      // mean by independence.
      for (int v : theta.theta)
        if (v == 1) return ExactReal::of_rational(Rational(0));
      return ExactReal::of_rational(Rational(1));
    }
    case SystemKind::Walsh: {
      unsigned x = 0;
      for (std::size_t i = 0; i < indices.size(); ++i)
        if (theta.theta[i] == 1) x ^= static_cast<unsigned>(indices[i]);
      return ExactReal::of_rational(Rational(x == 0 ? 1 : 0));
    }
    case SystemKind::CustomStep: {
      StepFunction acc = StepFunction::constant(
          Rational(1), system.custom_functions().front().domain_length());
      for (std::size_t i = 0; i < indices.size(); ++i) {
        if (theta.theta[i] == 0) continue;
        StepFunction f = system.member_step(indices[i]);
        if (theta.theta[i] == 2) f = f.squared();
        acc = StepFunction::combine(
            acc, f, [](const Rational& a, const Rational& b) { return a * b; });
      }
      return ExactReal::of_rational(acc.mean());
    }
    case SystemKind::TrigSine:
    case SystemKind::TrigCosine: {
      std::vector<long long> factors;
      for (std::size_t i = 0; i < indices.size(); ++i) {
        long long k = system.freqs()[indices[i] - 1];
        for (int rep = 0; rep < theta.theta[i]; ++rep) factors.push_back(k);
      }
      Rational q =
          trig_expansion(factors, system.kind() == SystemKind::TrigSine);
      return ExactReal(q, system.amplitude().squared(),
                       static_cast<int>(factors.size()));
    }
  }
  throw UnsupportedKind("expectation: unknown kind");
}

StrongMultReport is_strongly_multiplicative(const SystemSpec& system,
                                            const std::vector<int>& indices) {
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t j = i + 1; j < indices.size(); ++j)
      if (indices[i] == indices[j])
        throw Error("strong multiplicativity: indices must be distinct");
  StrongMultReport rep;
  rep.ok = true;
  for (const auto& pat :
       enumerate_patterns(static_cast<int>(indices.size()), false)) {
    ExactReal e = monomial_expectation(system, indices, pat);
    if (!e.is_zero()) {
      double v = e.abs_double();
      if (!rep.ok && v <= rep.worst_abs) continue;
      rep.ok = false;
      rep.worst = pat;
      rep.worst_abs = v;
    }
  }
  return rep;
}

}  // namespace lacuna
