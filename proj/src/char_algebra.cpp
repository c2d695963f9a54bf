#include "theta_quartic/char_algebra.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "theta_quartic/errors.hpp"

namespace tq {
namespace {

int parity_of(unsigned bits) { return std::popcount(bits) & 1; }

int floor_mod2(int x) { return ((x % 2) + 2) % 2; }

std::string bits_to_string(unsigned bits) {
  std::string s(3, '0');
  for (int i = 0; i < 3; ++i) s[i] = ((bits >> (2 - i)) & 1u) ? '1' : '0';
  return s;
}

}  // namespace

F2Vector F2Vector::from_parts(const std::array<int, 3>& lambda, const std::array<int, 3>& mu) {
  unsigned code = 0;
  for (int i = 0; i < 3; ++i) {
    code |= static_cast<unsigned>(floor_mod2(lambda[i])) << (5 - i);
    code |= static_cast<unsigned>(floor_mod2(mu[i])) << (2 - i);
  }
  return from_code(code);
}

std::string F2Vector::to_string() const {
  return "[" + bits_to_string(lambda_bits()) + "|" + bits_to_string(mu_bits()) + "]";
}

int symplectic_form(F2Vector v, F2Vector w) {
  return parity_of((v.lambda_bits() & w.mu_bits()) ^ (v.mu_bits() & w.lambda_bits()));
}

int eval_form(QuadForm q, F2Vector w) {
  const unsigned lambda = w.lambda_bits();
  const unsigned mu = w.mu_bits();
  return parity_of((lambda & mu) ^ (lambda & q.m_prime_bits()) ^ (q.m_double_prime_bits() & mu));
}

int arf(QuadForm q) { return parity_of(q.m_prime_bits() & q.m_double_prime_bits()); }

std::array<QuadForm, 64> all_forms() {
  std::array<QuadForm, 64> out;
  for (unsigned c = 0; c < 64; ++c) out[c] = QuadForm::from_code(c);
  return out;
}

std::vector<QuadForm> odd_forms() {
  std::vector<QuadForm> out;
  for (QuadForm q : all_forms())
    if (is_odd(q)) out.push_back(q);
  return out;
}

std::vector<QuadForm> even_forms() {
  std::vector<QuadForm> out;
  for (QuadForm q : all_forms())
    if (is_even(q)) out.push_back(q);
  return out;
}

bool is_azygetic_triple(QuadForm q1, QuadForm q2, QuadForm q3) {
  if (q1 == q2 || q1 == q3 || q2 == q3) throw InputError("is_azygetic_triple: repeated form");
  return ((arf(q1) + arf(q2) + arf(q3) + arf(q1 + q2 + q3)) & 1) == 1;
}

bool is_azygetic(std::span<const QuadForm> forms) {
  const std::size_t n = forms.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (forms[i] == forms[j]) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (!is_azygetic_triple(forms[i], forms[j], forms[k])) return false;
  return true;
}

bool is_aronhold(std::span<const QuadForm> forms) {
  if (forms.size() != 7) return false;
  if (!std::all_of(forms.begin(), forms.end(), [](QuadForm q) { return is_odd(q); })) return false;
  return is_azygetic(forms);
}

AronholdSystem AronholdSystem::from_forms(const std::array<QuadForm, 7>& forms) {
  if (!is_aronhold(forms)) throw InputError("not an Aronhold system");
  return AronholdSystem(forms);
}

QuadForm AronholdSystem::sum() const {
  QuadForm s;
  for (QuadForm q : forms_) s = s + q;
  return s;
}

AronholdSystem weber_example_system() {
  return AronholdSystem::from_forms({
      QuadForm::from_parts({1, 1, 1}, {1, 1, 1}),
      QuadForm::from_parts({0, 0, 1}, {0, 1, 1}),
      QuadForm::from_parts({0, 1, 1}, {0, 0, 1}),
      QuadForm::from_parts({1, 0, 1}, {1, 0, 0}),
      QuadForm::from_parts({1, 0, 0}, {1, 0, 1}),
      QuadForm::from_parts({1, 1, 0}, {0, 1, 0}),
      QuadForm::from_parts({0, 1, 0}, {1, 1, 0}),
  });
}

AronholdSystem universal_matrix_system() {
  return AronholdSystem::from_forms({
      QuadForm::from_parts({1, 1, 1}, {1, 1, 1}),
      QuadForm::from_parts({1, 1, 0}, {1, 0, 0}),
      QuadForm::from_parts({1, 0, 1}, {0, 0, 1}),
      QuadForm::from_parts({1, 0, 0}, {1, 1, 0}),
      QuadForm::from_parts({0, 1, 0}, {0, 1, 1}),
      QuadForm::from_parts({0, 0, 1}, {1, 0, 1}),
      QuadForm::from_parts({0, 1, 1}, {0, 1, 0}),
  });
}

namespace {

// Depth-first search over odd forms in increasing code order; a candidate is
// kept only if it forms an azygetic (even-sum) triple with every pair already chosen.
void extend_aronhold(const std::vector<QuadForm>& odd, std::size_t start, std::array<QuadForm, 7>& chosen,
                     std::size_t depth, std::vector<AronholdSystem>& out) {
  if (depth == 7) {
    out.push_back(AronholdSystem::from_forms(chosen));
    return;
  }
  for (std::size_t c = start; c < odd.size(); ++c) {
    const QuadForm x = odd[c];
    bool ok = true;
    for (std::size_t i = 0; i < depth && ok; ++i)
      for (std::size_t j = i + 1; j < depth && ok; ++j) ok = is_even(chosen[i] + chosen[j] + x);
    if (!ok) continue;
    chosen[depth] = x;
    extend_aronhold(odd, c + 1, chosen, depth + 1, out);
  }
}

}  // namespace

std::vector<AronholdSystem> enumerate_aronhold() {
  const std::vector<QuadForm> odd = odd_forms();
  std::vector<AronholdSystem> out;
  out.reserve(288);
  std::array<QuadForm, 7> chosen{};
  extend_aronhold(odd, 0, chosen, 0, out);
  // Depth-first order over sorted candidates already is lexicographic; keep the sort explicit.
  std::sort(out.begin(), out.end(),
            [](const AronholdSystem& a, const AronholdSystem& b) { return a.forms() < b.forms(); });
  return out;
}

QuadForm DerivedForms::pair(int i, int j) const {
  if (i == j || i < 0 || j < 0 || i > 6 || j > 6) throw InputError("DerivedForms::pair: bad indices");
  if (i > j) std::swap(i, j);
  int index = 0;
  for (int a = 0; a < 7; ++a)
    for (int b = a + 1; b < 7; ++b, ++index)
      if (a == i && b == j) return pairs[index];
  return pairs[0];  // unreachable
}

DerivedForms derived_forms(std::span<const QuadForm, 7> system) {
  if (!is_aronhold(system)) throw InputError("derived_forms: input is not an Aronhold system");
  DerivedForms out;
  out.sum = QuadForm{};
  for (QuadForm q : system) out.sum = out.sum + q;
  std::size_t p = 0;
  std::size_t t = 0;
  for (int i = 0; i < 7; ++i) {
    for (int j = i + 1; j < 7; ++j) {
      out.pairs[p++] = out.sum + system[i] + system[j];
      for (int k = j + 1; k < 7; ++k) out.triples[t++] = system[i] + system[j] + system[k];
    }
  }
  return out;
}

DerivedForms derived_forms(const AronholdSystem& system) {
  return derived_forms(std::span<const QuadForm, 7>(system.forms()));
}

std::vector<std::array<QuadForm, 3>> complete_4tuple(std::span<const QuadForm, 4> quad) {
  if (!std::all_of(quad.begin(), quad.end(), [](QuadForm q) { return is_odd(q); }) ||
      !is_azygetic(std::span<const QuadForm>(quad.data(), quad.size())))
    throw InputError("complete_4tuple: input is not an azygetic 4-tuple of odd forms");

  std::vector<QuadForm> candidates;
  for (QuadForm q : odd_forms()) {
    if (std::find(quad.begin(), quad.end(), q) != quad.end()) continue;
    std::array<QuadForm, 5> five{quad[0], quad[1], quad[2], quad[3], q};
    if (is_azygetic(five)) candidates.push_back(q);
  }

  std::vector<std::array<QuadForm, 3>> out;
  std::array<QuadForm, 7> seven{quad[0], quad[1], quad[2], quad[3]};
  for (std::size_t a = 0; a < candidates.size(); ++a)
    for (std::size_t b = a + 1; b < candidates.size(); ++b)
      for (std::size_t c = b + 1; c < candidates.size(); ++c) {
        seven[4] = candidates[a];
        seven[5] = candidates[b];
        seven[6] = candidates[c];
        if (is_aronhold(seven)) out.push_back({candidates[a], candidates[b], candidates[c]});
      }
  return out;
}

Characteristic::Characteristic(QuadForm q) {
  for (int i = 0; i < 3; ++i) {
    mp_[i] = q.coords().lambda(i);
    mpp_[i] = q.coords().mu(i);
  }
}

bool Characteristic::is_reduced() const {
  auto in01 = [](int x) { return x == 0 || x == 1; };
  return std::all_of(mp_.begin(), mp_.end(), in01) && std::all_of(mpp_.begin(), mpp_.end(), in01);
}

int Characteristic::parity() const { return floor_mod2(dot(mp_, mpp_)); }

QuadForm Characteristic::to_form() const { return QuadForm::from_parts(mp_, mpp_); }

Characteristic operator+(const Characteristic& a, const Characteristic& b) {
  Characteristic r;
  for (int i = 0; i < 3; ++i) {
    r.mp_[i] = a.mp_[i] + b.mp_[i];
    r.mpp_[i] = a.mpp_[i] + b.mpp_[i];
  }
  return r;
}

Characteristic operator-(const Characteristic& a) { return -1 * a; }

Characteristic operator-(const Characteristic& a, const Characteristic& b) { return a + (-b); }

Characteristic operator*(int s, const Characteristic& a) {
  Characteristic r;
  for (int i = 0; i < 3; ++i) {
    r.mp_[i] = s * a.mp_[i];
    r.mpp_[i] = s * a.mpp_[i];
  }
  return r;
}

std::string Characteristic::to_string() const {
  std::ostringstream os;
  const bool reduced = is_reduced();
  auto half = [&](const Half& h) {
    for (int i = 0; i < 3; ++i) {
      if (!reduced && i > 0) os << ',';
      os << h[i];
    }
  };
  os << '[';
  half(mp_);
  os << '|';
  half(mpp_);
  os << ']';
  return os.str();
}

int dot(const Characteristic::Half& a, const Characteristic::Half& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Characteristic lift_sum(std::initializer_list<QuadForm> forms) {
  Characteristic s;
  for (QuadForm q : forms) s = s + Characteristic(q);
  return s;
}

Reduction reduce_characteristic(const Characteristic& m) {
  Characteristic::Half rp{}, rpp{}, npp{};
  for (int i = 0; i < 3; ++i) {
    rp[i] = floor_mod2(m.mp()[i]);
    rpp[i] = floor_mod2(m.mpp()[i]);
    npp[i] = (m.mpp()[i] - rpp[i]) / 2;
  }
  const int sign = floor_mod2(dot(rp, npp)) == 0 ? 1 : -1;
  return {Characteristic(rp, rpp), sign};
}

}  // namespace tq
