#include <doctest.h>

#include <algorithm>
#include <set>

#include "theta_quartic/char_algebra.hpp"
#include "theta_quartic/errors.hpp"

using namespace tq;

namespace {

// Independent oracles: evaluate q from raw bits and classify by zero count.
int oracle_eval(unsigned q, unsigned w) {
  const unsigned mp = q >> 3, mpp = q & 7u, lam = w >> 3, mu = w & 7u;
  return __builtin_popcount((lam & mu) ^ (lam & mp) ^ (mpp & mu)) & 1;
}

int oracle_arf(unsigned q) {
  int zeros = 0;
  for (unsigned w = 0; w < 64; ++w) zeros += oracle_eval(q, w) == 0;
  return zeros == 36 ? 0 : 1;
}

bool oracle_azygetic(unsigned a, unsigned b, unsigned c) {
  return (oracle_arf(a) + oracle_arf(b) + oracle_arf(c) + oracle_arf(a ^ b ^ c)) % 2 == 1;
}

QuadForm f(const char* s) {
  return QuadForm::from_parts({s[0] - '0', s[1] - '0', s[2] - '0'}, {s[4] - '0', s[5] - '0', s[6] - '0'});
}

}  // namespace

TEST_CASE("symplectic form") {
  const F2Vector e1 = F2Vector::from_parts({1, 0, 0}, {0, 0, 0});
  const F2Vector f1 = F2Vector::from_parts({0, 0, 0}, {1, 0, 0});
  CHECK(symplectic_form(e1, f1) == 1);
  for (unsigned v = 0; v < 64; ++v) {
    CHECK(symplectic_form(F2Vector::from_code(v), F2Vector::from_code(v)) == 0);
    bool pairs_nontrivially = v == 0;
    for (unsigned w = 0; w < 64; ++w) pairs_nontrivially |= symplectic_form(F2Vector::from_code(v), F2Vector::from_code(w)) == 1;
    CHECK(pairs_nontrivially);
  }
  // q0 polarizes to omega.
  const QuadForm q0;
  for (unsigned v = 0; v < 64; ++v)
    for (unsigned w = 0; w < 64; ++w) {
      const F2Vector a = F2Vector::from_code(v), b = F2Vector::from_code(w);
      REQUIRE((eval_form(q0, a + b) + eval_form(q0, a) + eval_form(q0, b)) % 2 == symplectic_form(a, b));
    }
}

TEST_CASE("eval_form matches the coordinate formula and the quadratic-form axiom") {
  CHECK(eval_form(QuadForm(), F2Vector::from_parts({1, 0, 0}, {0, 1, 0})) == 0);
  CHECK(eval_form(f("111|111"), F2Vector::from_parts({1, 0, 0}, {0, 0, 0})) == 1);
  for (unsigned q = 0; q < 64; ++q)
    for (unsigned v = 0; v < 64; ++v) {
      const QuadForm form = QuadForm::from_code(q);
      REQUIRE(eval_form(form, F2Vector::from_code(v)) == oracle_eval(q, v));
      for (unsigned w = 0; w < 64; ++w) {
        const F2Vector a = F2Vector::from_code(v), b = F2Vector::from_code(w);
        REQUIRE(eval_form(form, a + b) == (eval_form(form, a) + eval_form(form, b) + symplectic_form(a, b)) % 2);
      }
    }
}

TEST_CASE("arf invariant and parity counts") {
  CHECK(arf(QuadForm()) == 0);
  int even = 0, odd = 0;
  for (QuadForm q : all_forms()) {
    CHECK(arf(q) == oracle_arf(q.code()));
    (arf(q) ? odd : even) += 1;
  }
  CHECK(even == 36);
  CHECK(odd == 28);
  CHECK(even_forms().size() == 36);
  CHECK(odd_forms().size() == 28);
}

TEST_CASE("azygetic triples") {
  CHECK(is_azygetic_triple(f("111|111"), f("001|011"), f("011|001")));
  CHECK_THROWS_AS(is_azygetic_triple(f("111|111"), f("111|111"), f("011|001")), InputError);

  const auto odd = odd_forms();
  int count = 0, oracle = 0;
  for (std::size_t i = 0; i < odd.size(); ++i)
    for (std::size_t j = i + 1; j < odd.size(); ++j)
      for (std::size_t k = j + 1; k < odd.size(); ++k) {
        const bool az = is_azygetic_triple(odd[i], odd[j], odd[k]);
        count += az;
        oracle += oracle_azygetic(odd[i].code(), odd[j].code(), odd[k].code());
        CHECK(az == is_azygetic_triple(odd[k], odd[i], odd[j]));
        CHECK(az == is_azygetic_triple(odd[j], odd[k], odd[i]));
      }
  CHECK(count == oracle);

  // Three odd forms summing to an even form are syzygetic.
  for (std::size_t i = 0; i < odd.size(); ++i)
    for (std::size_t j = i + 1; j < odd.size(); ++j)
      for (std::size_t k = j + 1; k < odd.size(); ++k)
        if (arf(odd[i] + odd[j] + odd[k]) == 1) CHECK_FALSE(is_azygetic_triple(odd[i], odd[j], odd[k]));
}

TEST_CASE("Aronhold predicates on the printed systems") {
  const std::array<QuadForm, 7> example{f("111|111"), f("001|011"), f("011|001"), f("101|100"),
                                        f("100|101"), f("110|010"), f("010|110")};
  CHECK(is_aronhold(example));
  CHECK(weber_example_system().forms() == example);

  const std::array<QuadForm, 7> remark{f("111|111"), f("110|100"), f("101|001"), f("100|110"),
                                       f("010|011"), f("001|101"), f("011|010")};
  CHECK(is_aronhold(remark));
  CHECK(universal_matrix_system().sum() == QuadForm());

  auto repeated = example;
  repeated[6] = repeated[0];
  CHECK_FALSE(is_aronhold(repeated));
  CHECK_THROWS_AS(AronholdSystem::from_forms(repeated), InputError);
}

TEST_CASE("enumerate_aronhold agrees with brute force over all 7-subsets") {
  const auto systems = enumerate_aronhold();
  REQUIRE(systems.size() == 288);
  CHECK(std::is_sorted(systems.begin(), systems.end(),
                       [](const AronholdSystem& a, const AronholdSystem& b) { return a.forms() < b.forms(); }));

  std::vector<unsigned> odd;
  for (unsigned q = 0; q < 64; ++q)
    if (oracle_arf(q)) odd.push_back(q);
  REQUIRE(odd.size() == 28);
  bool az[28][28][28] = {};
  for (int i = 0; i < 28; ++i)
    for (int j = 0; j < 28; ++j)
      for (int k = 0; k < 28; ++k)
        az[i][j][k] = i != j && j != k && i != k && oracle_azygetic(odd[i], odd[j], odd[k]);

  std::set<std::array<unsigned, 7>> brute;
  int idx[7];
  for (idx[0] = 0; idx[0] < 28; ++idx[0])
    for (idx[1] = idx[0] + 1; idx[1] < 28; ++idx[1])
      for (idx[2] = idx[1] + 1; idx[2] < 28; ++idx[2])
        for (idx[3] = idx[2] + 1; idx[3] < 28; ++idx[3])
          for (idx[4] = idx[3] + 1; idx[4] < 28; ++idx[4])
            for (idx[5] = idx[4] + 1; idx[5] < 28; ++idx[5])
              for (idx[6] = idx[5] + 1; idx[6] < 28; ++idx[6]) {
                bool ok = true;
                for (int a = 0; a < 7 && ok; ++a)
                  for (int b = a + 1; b < 7 && ok; ++b)
                    for (int c = b + 1; c < 7 && ok; ++c) ok = az[idx[a]][idx[b]][idx[c]];
                if (ok) {
                  std::array<unsigned, 7> s;
                  for (int a = 0; a < 7; ++a) s[a] = odd[idx[a]];
                  brute.insert(s);
                }
              }
  CHECK(brute.size() == 288);

  std::set<std::array<unsigned, 7>> ours;
  for (const AronholdSystem& s : systems) {
    std::array<unsigned, 7> codes;
    for (int a = 0; a < 7; ++a) codes[a] = s[a].code();
    CHECK(std::is_sorted(codes.begin(), codes.end()));
    CHECK(oracle_arf(s.sum().code()) == 0);
    ours.insert(codes);
  }
  CHECK(ours == brute);

  auto example = weber_example_system().forms();
  std::sort(example.begin(), example.end());
  CHECK(std::any_of(systems.begin(), systems.end(), [&](const AronholdSystem& s) { return s.forms() == example; }));
}

TEST_CASE("derived forms partition all 64 forms") {
  for (const AronholdSystem& sys : {weber_example_system(), universal_matrix_system()}) {
    const DerivedForms d = derived_forms(sys);
    std::set<unsigned> odd, even;
    for (QuadForm q : sys.forms()) odd.insert(q.code());
    for (QuadForm q : d.pairs) {
      CHECK(is_odd(q));
      odd.insert(q.code());
    }
    even.insert(d.sum.code());
    for (QuadForm q : d.triples) {
      CHECK(is_even(q));
      even.insert(q.code());
    }
    CHECK(odd.size() == 28);
    CHECK(even.size() == 36);
    CHECK(d.pair(0, 1) == sys.sum() + sys[0] + sys[1]);
    CHECK(d.pair(4, 2) == d.pair(2, 4));
  }
  CHECK(is_odd(derived_forms(weber_example_system()).pair(0, 1)));
}

TEST_CASE("complete_4tuple") {
  const AronholdSystem ex = weber_example_system();
  const std::array<QuadForm, 4> quad{ex[0], ex[1], ex[2], ex[3]};
  const auto completions = complete_4tuple(quad);
  REQUIRE(completions.size() == 2);
  std::array<QuadForm, 3> tail{ex[4], ex[5], ex[6]};
  std::sort(tail.begin(), tail.end());
  CHECK(std::find(completions.begin(), completions.end(), tail) != completions.end());

  const auto systems = enumerate_aronhold();
  for (std::size_t s = 0; s < systems.size(); s += 7) {
    const std::array<QuadForm, 4> q{systems[s][0], systems[s][2], systems[s][4], systems[s][6]};
    const auto c = complete_4tuple(q);
    REQUIRE(c.size() == 2);
    for (const auto& t : c) CHECK(is_aronhold(std::array<QuadForm, 7>{q[0], q[1], q[2], q[3], t[0], t[1], t[2]}));
  }

  // Three odd forms with even sum plus a fourth: not azygetic.
  const auto odd = odd_forms();
  for (std::size_t i = 0; i < odd.size(); ++i)
    for (std::size_t j = i + 1; j < odd.size(); ++j)
      for (std::size_t k = j + 1; k < odd.size(); ++k)
        if (!is_azygetic_triple(odd[i], odd[j], odd[k])) {
          const QuadForm fourth = odd[(k + 1) % odd.size()];
          CHECK_THROWS_AS(complete_4tuple(std::array<QuadForm, 4>{odd[i], odd[j], odd[k], fourth}), InputError);
          return;
        }
}

TEST_CASE("reduce_characteristic") {
  const Characteristic m({1, 1, 1}, {1, 1, 1});
  const Characteristic n({0, 0, 0}, {1, 0, 0});
  const Reduction r = reduce_characteristic(m + 2 * n);
  CHECK(r.reduced == m);
  CHECK(r.sign == -1);

  const Reduction same = reduce_characteristic(m);
  CHECK(same.reduced == m);
  CHECK(same.sign == 1);

  const Characteristic neg({-1, 0, 3}, {2, -3, 1});
  const Reduction rn = reduce_characteristic(neg);
  CHECK(rn.reduced == Characteristic({1, 0, 1}, {0, 1, 1}));
  // neg = r + 2n with n = ([-1,0,1],[1,-2,0]); r'.n'' = 1.
  CHECK(rn.sign == -1);
  CHECK(reduce_characteristic(rn.reduced).sign == 1);

  // Composition: reducing r + 2n1 + 2n2 equals the product of both shifts' signs.
  for (unsigned code = 0; code < 64; ++code) {
    const Characteristic base(QuadForm::from_code(code));
    const Characteristic n1({1, -1, 2}, {0, 3, -1}), n2({-2, 0, 1}, {1, 1, 1});
    const int s1 = reduce_characteristic(base + 2 * n1).sign;
    const int s12 = reduce_characteristic(base + 2 * (n1 + n2)).sign;
    const int s2_from_reduced = ((dot(base.mp(), n2.mpp()) % 2) + 2) % 2 ? -1 : 1;
    CHECK(s12 == s1 * s2_from_reduced);
  }
}

TEST_CASE("lift_sum keeps integer carries") {
  const QuadForm a = f("101|100"), b = f("100|101");
  const Characteristic s = lift_sum({a, b});
  CHECK(s == Characteristic({2, 0, 1}, {2, 0, 1}));
  CHECK(s.to_form() == a + b);
  CHECK(s.to_string() == "[2,0,1|2,0,1]");
  CHECK(Characteristic(a).to_string() == "[101|100]");
}
