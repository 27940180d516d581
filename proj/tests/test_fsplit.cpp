#include <gtest/gtest.h>

#include "frobtrace/checks.hpp"
#include "frobtrace/fsplit.hpp"
#include "frobtrace/parse.hpp"

using namespace frobtrace;

namespace {

const std::vector<std::string> kXYZW{"x", "y", "z", "w"};

std::uint64_t factorial(unsigned n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// Fermat f = sum x_i^3: f^{p-1} = sum over a with |a| = p-1 of multinomial(a) x^{3a}.
// Split iff some a has every 3 a_i <= p-1 and non-zero multinomial mod p.
bool brute_fermat_split(Residue p, std::uint64_t* coefficient) {
  const unsigned d = p - 1;
  for (unsigned a = 0; a <= d; ++a)
    for (unsigned b = 0; a + b <= d; ++b)
      for (unsigned c = 0; a + b + c <= d; ++c) {
        const unsigned e = d - a - b - c;
        if (3 * std::max({a, b, c, e}) > d) continue;
        const std::uint64_t m = factorial(d) / (factorial(a) * factorial(b) * factorial(c) * factorial(e));
        if (m % p != 0) {
          *coefficient = m % p;
          return true;
        }
      }
  return false;
}

}  // namespace

TEST(Fsplit, FermatCubic) {
  for (Residue p : {2u, 3u, 5u, 7u, 11u, 13u}) {
    const auto field = FieldSpec::prime(p);
    const Poly f = parse_poly("x^3+y^3+z^3+w^3", kXYZW, field);
    const FsplitVerdict v = fedder_hypersurface(f);
    std::uint64_t c = 0;
    EXPECT_EQ(v.split, brute_fermat_split(p, &c)) << p;
    EXPECT_TRUE(verify_fedder_certificate(f, v));
    if (v.split) {
      const auto& ex = v.witness->monomial.exps;
      std::uint64_t m = factorial(p - 1);
      for (auto x : ex) m /= factorial(x / 3);
      EXPECT_EQ(v.witness->coefficient, Scalar::from_int(field, static_cast<std::int64_t>(m % p)));
    }
  }
}

TEST(Fsplit, SpecExamples) {
  const auto f2 = FieldSpec::prime(2);
  EXPECT_FALSE(fedder_hypersurface(parse_poly("x^3+y^3+z^3+w^3", kXYZW, f2)).split);

  const auto f5 = FieldSpec::prime(5);
  const FsplitVerdict v = fedder_hypersurface(parse_poly("x^3+y^3+z^3+w^3", kXYZW, f5));
  ASSERT_TRUE(v.split);
  EXPECT_EQ(monomial_to_string(v.witness->monomial, kXYZW), "x^3*y^3*z^3*w^3");
  EXPECT_EQ(v.witness->coefficient, Scalar::from_int(f5, 24));
  EXPECT_EQ(v.witness->coefficient.to_string(), "4");

  EXPECT_TRUE(fedder_hypersurface(parse_poly("x^3+y^3+z^3+w^3", kXYZW, FieldSpec::prime(7))).split);

  for (Residue p : {2u, 3u, 5u, 7u}) {
    const auto field = FieldSpec::prime(p);
    const FsplitVerdict h = fedder_hypersurface(parse_poly("x", kXYZW, field));
    ASSERT_TRUE(h.split);
    EXPECT_EQ(h.witness->monomial, Monomial(std::vector<std::uint32_t>{p - 1, 0, 0, 0}));
  }
}

TEST(Fsplit, ForgedCertificatesRejected) {
  const auto f5 = FieldSpec::prime(5);
  const Poly f = parse_poly("x^3+y^3+z^3+w^3", kXYZW, f5);
  FsplitVerdict v = fedder_hypersurface(f);
  v.witness->coefficient = Scalar::from_int(f5, 1);
  EXPECT_FALSE(verify_fedder_certificate(f, v));
  EXPECT_FALSE(verify_fedder_certificate(f, FsplitVerdict{}));
  const auto f2 = FieldSpec::prime(2);
  FsplitVerdict forged{true, FedderWitness{Monomial(std::vector<std::uint32_t>{3, 0, 0, 0}), Scalar::one(f2)}};
  EXPECT_FALSE(verify_fedder_certificate(parse_poly("x^3+y^3+z^3+w^3", kXYZW, f2), forged));
}

TEST(Fsplit, RandomCertificates) {
  const auto report = check_fedder_certificates(100, 1);
  EXPECT_TRUE(report.passed()) << report.counterexample.value_or("");
}

TEST(Fsplit, ProjectiveSpaceTraceSurjective) {
  EXPECT_TRUE(pn_trace_surjectivity(2, 3, 2, 1));
  EXPECT_TRUE(pn_trace_surjectivity(1, 2, 3, 1));
  EXPECT_TRUE(pn_trace_surjectivity(2, 3, 2, 2));
  EXPECT_THROW(pn_trace_surjectivity(2, 2, 2, 1), UsageError);
}

TEST(Fsplit, AgreesWithFermatTrace) {
  const auto f2 = FieldSpec::prime(2);
  const FsplitVerdict v = fedder_hypersurface(parse_poly("x^3+y^3+z^3+w^3", kXYZW, f2));
  const DivisorSpec x = parse_divisor("x^3+y^3+z^3+w^3:1", kXYZW, f2);
  const MapVerdict t = map_verdict(trace_matrix(x, parse_divisor("H:1", kXYZW, f2), 1, 3));
  EXPECT_FALSE(v.split);
  EXPECT_TRUE(t.zero);
}
