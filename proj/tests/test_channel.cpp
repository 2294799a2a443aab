#include <doctest.h>

#include <cmath>
#include <random>

#include "macfaces/channel.hpp"
#include "macfaces/errors.hpp"
#include "support/channels.hpp"
#include "support/mi_reference.hpp"

using namespace macfaces;
using test::make_adder;
using test::make_bsc1;
using test::make_parallel2;
using test::make_xor2;

namespace {

// All disjoint (S, A) pairs over M users, including empty sets.
template <typename F>
void for_disjoint_pairs(int users, F&& f) {
  const Mask all = UserSet::full(users).bits();
  for (Mask s = 0; s <= all; ++s)
    for_each_subset(UserSet(all & ~s), [&](UserSet a) { f(UserSet(s), a); });
}

}  // namespace

TEST_CASE("validate names the offending field") {
  ChannelSpec spec = make_adder(2);

  SUBCASE("pmf not normalized") {
    spec.input_pmfs[1] = {0.6, 0.6};
    CHECK_THROWS_WITH_AS(validate(spec),
                         doctest::Contains("input_pmfs[1]"), ValidationError);
  }
  SUBCASE("pmf wrong length") {
    spec.input_pmfs[0] = {1.0};
    CHECK_THROWS_WITH_AS(validate(spec),
                         doctest::Contains("input_pmfs[0]"), ValidationError);
  }
  SUBCASE("negative probability") {
    spec.input_pmfs[0] = {1.2, -0.2};
    CHECK_THROWS_WITH_AS(validate(spec),
                         doctest::Contains("input_pmfs[0]"), ValidationError);
  }
  SUBCASE("transition row count") {
    spec.transition.pop_back();
    CHECK_THROWS_WITH_AS(validate(spec), doctest::Contains("transition"),
                         ValidationError);
  }
  SUBCASE("transition row not normalized") {
    spec.transition[2][0] = 0.5;
    CHECK_THROWS_WITH_AS(validate(spec),
                         doctest::Contains("transition[2]"), ValidationError);
  }
  SUBCASE("input_sizes length mismatch") {
    spec.input_sizes.push_back(2);
    CHECK_THROWS_WITH_AS(validate(spec), doctest::Contains("input_sizes"),
                         ValidationError);
  }
  SUBCASE("nonpositive users") {
    spec.users = 0;
    CHECK_THROWS_WITH_AS(validate(spec), doctest::Contains("users"),
                         ValidationError);
  }
  SUBCASE("well-formed spec passes") { CHECK_NOTHROW(validate(spec)); }
}

TEST_CASE("joint distribution of small channels") {
  SUBCASE("noiseless single-user bit") {
    const JointTable joint = joint_distribution(make_bsc1(0.0));
    REQUIRE(joint.p.size() == 4);
    CHECK(joint.at(0, 0) == doctest::Approx(0.5));
    CHECK(joint.at(0, 1) == doctest::Approx(0.0));
    CHECK(joint.at(1, 1) == doctest::Approx(0.5));
    CHECK(joint.total() == doctest::Approx(1.0));
  }
  SUBCASE("two-user adder output marginal") {
    const JointTable joint = joint_distribution(make_adder(2));
    // P(Y=1) collects the two mixed input rows.
    double py1 = 0.0;
    for (std::size_t r = 0; r < 4; ++r) py1 += joint.at(r, 1);
    CHECK(py1 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(joint.total() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("mutual information on hand-checked channels") {
  const UserSet u1 = UserSet::of({1});
  const UserSet u2 = UserSet::of({2});
  const UserSet u12 = UserSet::of({1, 2});

  SUBCASE("XOR hides single users but not the pair") {
    const MICache mi(make_xor2());
    CHECK(mi.mi(u1, UserSet()) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(mi.mi(u1, u2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mi.mi(u12, UserSet()) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("parallel pipes ignore conditioning") {
    const MICache mi(make_parallel2());
    CHECK(mi.mi(u1, UserSet()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mi.mi(u1, u2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mi.mi(u12, UserSet()) == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("two-user adder") {
    const MICache mi(make_adder(2));
    CHECK(mi.mi(u1, UserSet()) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(mi.mi(u1, u2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mi.mi(u12, UserSet()) == doctest::Approx(1.5).epsilon(1e-12));
  }
  SUBCASE("three-user fair adder sum rate") {
    const MICache mi(make_adder(3));
    // H(Y) for Binomial(3, 1/2) output.
    CHECK(mi.mi(UserSet::full(3), UserSet()) ==
          doctest::Approx(1.811278124459133).epsilon(1e-12));
  }
}

TEST_CASE("mutual information preconditions and conventions") {
  const MICache mi(make_adder(2));
  CHECK_THROWS_AS(mi.mi(UserSet::of({1}), UserSet::of({1, 2})),
                  PreconditionError);
  CHECK_THROWS_AS(mi.mi(UserSet::of({3}), UserSet()), PreconditionError);
  // Empty S is defined and exactly zero.
  CHECK(mi.mi(UserSet(), UserSet::of({1})) == 0.0);
  CHECK(mi.mi(UserSet(), UserSet()) == 0.0);
  // One-shot wrapper agrees with the cache.
  CHECK(mutual_info(make_adder(2), UserSet::of({1}), UserSet::of({2})) ==
        doctest::Approx(1.0));
}

TEST_CASE("entropy-difference and KL routes agree") {
  std::mt19937 rng(20240811);
  std::vector<ChannelSpec> specs;
  specs.push_back(make_adder(3, {0.1, 0.2, 0.3}));
  for (int i = 0; i < 3; ++i)
    specs.push_back(test::random_channel(rng, 3, 3, 4));
  for (const ChannelSpec& spec : specs) {
    const MICache mi(spec);
    for_disjoint_pairs(spec.users, [&](UserSet s, UserSet a) {
      const double gap = std::abs(mi.mi(s, a) - test::mi_reference(spec, s, a));
      CHECK(gap <= 1e-10);
    });
  }
}

TEST_CASE("chain rule and conditioning monotonicity") {
  std::mt19937 rng(987654);
  for (int trial = 0; trial < 3; ++trial) {
    const ChannelSpec spec = test::random_channel(rng, 3, 3, 3);
    const MICache mi(spec);
    const Mask all = UserSet::full(3).bits();
    // Chain rule I(X_{S∪T};Y|A) = I(X_S;Y|A) + I(X_T;Y|A∪S) for disjoint
    // S, T, A.
    for (Mask s = 0; s <= all; ++s)
      for_each_subset(UserSet(all & ~s), [&](UserSet t) {
        for_each_subset(UserSet(all & ~s & ~t.bits()), [&](UserSet a) {
          const UserSet sv(s);
          const double lhs = mi.mi(sv | t, a);
          const double rhs = mi.mi(sv, a) + mi.mi(t, a | sv);
          CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
        });
      });
    // More side information never hurts: A ⊆ B ⇒ I(X_S;Y|X_A) ≤ I(X_S;Y|X_B)
    // (inputs are independent here).
    for (Mask s = 1; s <= all; ++s)
      for_each_subset(UserSet(all & ~s), [&](UserSet b) {
        for_each_subset(b, [&](UserSet a) {
          CHECK(mi.mi(UserSet(s), a) <= mi.mi(UserSet(s), b) + 1e-9);
        });
      });
  }
}

TEST_CASE("lazy entropy cache beyond the precompute threshold") {
  // Nine users exceeds the precompute cutoff, forcing the on-demand path;
  // compare a handful of values against the reference evaluator.
  const ChannelSpec spec = make_adder(9);
  const MICache mi(spec);
  const UserSet all = UserSet::full(9);
  CHECK(std::abs(mi.mi(all, UserSet()) -
                 test::mi_reference(spec, all, UserSet())) <= 1e-10);
  const UserSet s = UserSet::of({1, 5, 9});
  const UserSet a = UserSet::of({2, 3});
  CHECK(std::abs(mi.mi(s, a) - test::mi_reference(spec, s, a)) <= 1e-10);
}
