#pragma once

// Quadratic forms on the 6-dimensional symplectic space over F2 and integer
// theta characteristics.
//
// Coordinates: a vector w = (lambda, mu) in F2^3 x F2^3 relative to a fixed
// symplectic basis e_1..e_3, f_1..f_3. A quadratic form q is identified with the
// column vector [m'; m''] such that
//
//     q(w) = lambda.mu + lambda.m' + m''.mu
//
// so the origin q0 (all zero coordinates) is q0(w) = lambda.mu. Its Arf invariant
// is m'.m'' mod 2.

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace tq {

/// Element of F2^6. Bits 5..3 hold lambda_1..lambda_3, bits 2..0 hold mu_1..mu_3,
/// so integer order on code() is lexicographic order on [l1 l2 l3 | m1 m2 m3].
class F2Vector {
 public:
  constexpr F2Vector() = default;

  static constexpr F2Vector from_code(unsigned code) { return F2Vector(static_cast<std::uint8_t>(code & 63u)); }
  static F2Vector from_parts(const std::array<int, 3>& lambda, const std::array<int, 3>& mu);

  constexpr unsigned code() const { return code_; }
  constexpr unsigned lambda_bits() const { return code_ >> 3; }
  constexpr unsigned mu_bits() const { return code_ & 7u; }
  /// i in {0,1,2}
  constexpr int lambda(int i) const { return static_cast<int>((lambda_bits() >> (2 - i)) & 1u); }
  constexpr int mu(int i) const { return static_cast<int>((mu_bits() >> (2 - i)) & 1u); }

  friend constexpr F2Vector operator+(F2Vector a, F2Vector b) { return F2Vector(a.code_ ^ b.code_); }
  friend constexpr bool operator==(F2Vector, F2Vector) = default;
  friend constexpr auto operator<=>(F2Vector, F2Vector) = default;

  /// "[abc|def]"
  std::string to_string() const;

 private:
  constexpr explicit F2Vector(std::uint8_t code) : code_(code) {}
  std::uint8_t code_ = 0;
};

/// omega(v, w) = lambda_v.mu_w + mu_v.lambda_w mod 2.
int symplectic_form(F2Vector v, F2Vector w);

/// A quadratic form, stored by its coordinates [m'; m''] relative to q0.
///
/// Sums of forms are taken coordinate-wise; this is the identification of the
/// affine space of forms with F2^6 once q0 is fixed as origin, and matches how
/// sums like q_i + q_j + q_k are written throughout.
class QuadForm {
 public:
  constexpr QuadForm() = default;
  constexpr explicit QuadForm(F2Vector coords) : coords_(coords) {}

  static constexpr QuadForm from_code(unsigned code) { return QuadForm(F2Vector::from_code(code)); }
  static QuadForm from_parts(const std::array<int, 3>& m_prime, const std::array<int, 3>& m_double_prime) {
    return QuadForm(F2Vector::from_parts(m_prime, m_double_prime));
  }

  constexpr F2Vector coords() const { return coords_; }
  constexpr unsigned code() const { return coords_.code(); }
  constexpr unsigned m_prime_bits() const { return coords_.lambda_bits(); }
  constexpr unsigned m_double_prime_bits() const { return coords_.mu_bits(); }

  friend constexpr QuadForm operator+(QuadForm a, QuadForm b) { return QuadForm(a.coords_ + b.coords_); }
  friend constexpr bool operator==(QuadForm, QuadForm) = default;
  friend constexpr auto operator<=>(QuadForm, QuadForm) = default;

  std::string to_string() const { return coords_.to_string(); }

 private:
  F2Vector coords_;
};

int eval_form(QuadForm q, F2Vector w);
int arf(QuadForm q);
inline bool is_odd(QuadForm q) { return arf(q) == 1; }
inline bool is_even(QuadForm q) { return arf(q) == 0; }

/// All 64 forms, ordered by code.
std::array<QuadForm, 64> all_forms();
/// The 28 odd forms, ordered by code.
std::vector<QuadForm> odd_forms();
/// The 36 even forms, ordered by code.
std::vector<QuadForm> even_forms();

/// a(q1) + a(q2) + a(q3) + a(q1 + q2 + q3) == 1. Throws InputError on repeated forms.
bool is_azygetic_triple(QuadForm q1, QuadForm q2, QuadForm q3);
/// Distinct forms with every sub-triple azygetic (n >= 3).
bool is_azygetic(std::span<const QuadForm> forms);
/// Seven distinct odd forms, every one of the 35 sub-triples azygetic.
bool is_aronhold(std::span<const QuadForm> forms);

/// An ordered Aronhold system q_1..q_7 (0-based storage).
class AronholdSystem {
 public:
  /// Throws InputError unless is_aronhold(forms).
  static AronholdSystem from_forms(const std::array<QuadForm, 7>& forms);

  const std::array<QuadForm, 7>& forms() const { return forms_; }
  QuadForm operator[](std::size_t i) const { return forms_[i]; }
  /// q_S = q_1 + ... + q_7 (always even).
  QuadForm sum() const;

  friend bool operator==(const AronholdSystem&, const AronholdSystem&) = default;

 private:
  explicit AronholdSystem(const std::array<QuadForm, 7>& forms) : forms_(forms) {}
  std::array<QuadForm, 7> forms_;
};

/// Weber's worked example:
/// [111|111] [001|011] [011|001] [101|100] [100|101] [110|010] [010|110].
AronholdSystem weber_example_system();

/// The system with q0 = q_1 + ... + q_7 used for the universal bitangent matrix:
/// [111|111] [110|100] [101|001] [100|110] [010|011] [001|101] [011|010].
AronholdSystem universal_matrix_system();

/// Every Aronhold system as an unordered set: each system's forms are sorted by
/// code and the list is sorted lexicographically. Exactly 288 entries.
std::vector<AronholdSystem> enumerate_aronhold();

/// The forms labelled by an Aronhold system.
struct DerivedForms {
  QuadForm sum;                      ///< q_S
  std::array<QuadForm, 21> pairs;    ///< q_ij = q_S + q_i + q_j, i < j in lexicographic order
  std::array<QuadForm, 35> triples;  ///< q_ijk = q_i + q_j + q_k, i < j < k in lexicographic order

  /// q_ij for 0-based i != j.
  QuadForm pair(int i, int j) const;
};

/// Throws InputError if `system` is not an Aronhold system.
DerivedForms derived_forms(std::span<const QuadForm, 7> system);
DerivedForms derived_forms(const AronholdSystem& system);

/// The two triples {q5, q6, q7} (each sorted by code, the pair sorted) completing an
/// azygetic 4-tuple of odd forms to an Aronhold system. Throws InputError on other input.
std::vector<std::array<QuadForm, 3>> complete_4tuple(std::span<const QuadForm, 4> quad);

/// Integer theta characteristic m = (m', m'') in Z^3 x Z^3.
class Characteristic {
 public:
  using Half = std::array<int, 3>;

  Characteristic() = default;
  Characteristic(const Half& m_prime, const Half& m_double_prime) : mp_(m_prime), mpp_(m_double_prime) {}
  /// The {0,1} lift of a form's coordinates.
  explicit Characteristic(QuadForm q);

  const Half& mp() const { return mp_; }
  const Half& mpp() const { return mpp_; }

  bool is_reduced() const;
  /// m'.m'' mod 2, in {0, 1}.
  int parity() const;
  /// The form of the mod-2 reduction.
  QuadForm to_form() const;

  friend Characteristic operator+(const Characteristic& a, const Characteristic& b);
  friend Characteristic operator-(const Characteristic& a, const Characteristic& b);
  friend Characteristic operator-(const Characteristic& a);
  friend Characteristic operator*(int s, const Characteristic& a);
  friend bool operator==(const Characteristic&, const Characteristic&) = default;
  friend auto operator<=>(const Characteristic&, const Characteristic&) = default;

  /// "[abc|def]" when reduced, "[a,b,c|d,e,f]" otherwise.
  std::string to_string() const;

 private:
  Half mp_{0, 0, 0};
  Half mpp_{0, 0, 0};
};

int dot(const Characteristic::Half& a, const Characteristic::Half& b);

/// Sum of the integer lifts of the given forms (the non-reduced characteristic (q_1 + ... + q_n)).
Characteristic lift_sum(std::initializer_list<QuadForm> forms);

struct Reduction {
  Characteristic reduced;
  int sign = 1;  ///< theta_m = sign * theta_reduced
};

/// m = r + 2n with r in {0,1}^6; sign = (-1)^{r'.n''}.
Reduction reduce_characteristic(const Characteristic& m);

}  // namespace tq
