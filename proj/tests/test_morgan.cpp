#include <gtest/gtest.h>

#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <tuple>

#include "hdfp/hash.hpp"
#include "hdfp/morgan.hpp"
#include "test_util.hpp"

namespace hdfp::baseline {
namespace {

using testing::thrown_kind;

MorganConfig cfg(int radius = 2, std::size_t nbits = 1024) {
  MorganConfig c;
  c.radius = radius;
  c.nbits = nbits;
  return c;
}

BitFingerprint bits(std::size_t n, std::initializer_list<std::size_t> on) {
  BitFingerprint fp(n);
  for (std::size_t b : on) fp.set(b);
  return fp;
}

// Byte-at-a-time FNV-1a, written independently of hash.hpp.
std::uint64_t fnv1a(const std::vector<std::uint8_t>& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (auto b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

void append_le(std::vector<std::uint8_t>& out, std::uint64_t v, int width) {
  for (int i = 0; i < width; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

TEST(Hash, KnownFnv1aVectors) {
  EXPECT_EQ(Fnv1a64().digest(), 0xcbf29ce484222325ull);
  EXPECT_EQ(Fnv1a64().text("a").digest(), 0xaf63dc4c8601ec8cull);
  EXPECT_EQ(Fnv1a64().text("foobar").digest(), 0x85944171f73967e8ull);
}

TEST(BitFingerprint, Basics) {
  EXPECT_EQ(thrown_kind([] { BitFingerprint(7); }), ErrorKind::kConfig);
  auto fp = bits(100, {0, 63, 64, 99});
  EXPECT_EQ(fp.popcount(), 4u);
  EXPECT_TRUE(fp.test(64));
  EXPECT_FALSE(fp.test(65));
  EXPECT_EQ(fp.set_bits(), (std::vector<std::size_t>{0, 63, 64, 99}));
  EXPECT_EQ(fp.to_dense()[99], 1.0);
  EXPECT_EQ(fp.to_dense()[98], 0.0);
  EXPECT_EQ(thrown_kind([&] { fp.set(100); }), ErrorKind::kIndexOutOfRange);
  EXPECT_LE(fp.popcount(), fp.nbits());
}

TEST(MorganConfig, Validation) {
  EXPECT_EQ(MorganConfig{}.radius, 2);
  EXPECT_EQ(MorganConfig{}.nbits, 1024u);
  EXPECT_EQ(thrown_kind([] { cfg(9).validate(); }), ErrorKind::kConfig);
  EXPECT_EQ(thrown_kind([] { cfg(-1).validate(); }), ErrorKind::kConfig);
  EXPECT_EQ(thrown_kind([] { cfg(2, 4).validate(); }), ErrorKind::kConfig);
}

TEST(AtomInvariant, IsFnvOverLittleEndianTuple) {
  const mol::AtomRecord n{mol::Element::N, 1, -1};
  std::vector<std::uint8_t> bytes;
  for (std::int64_t v : {7, 2, 1, -1, 0}) append_le(bytes, static_cast<std::uint32_t>(v), 4);
  EXPECT_EQ(atom_invariant(n, 2), fnv1a(bytes));
}

TEST(AtomInvariant, DistinguishesDegreeAndHasNoCorpusCollisions) {
  const mol::AtomRecord c{mol::Element::C, 2};
  EXPECT_NE(atom_invariant(c, 2), atom_invariant(c, 3));
  EXPECT_EQ(atom_invariant(c, 2), atom_invariant(c, 2));
  std::map<std::uint64_t, std::tuple<int, int, int, int>> seen;
  for (const auto& g : testing::corpus()) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      const auto& a = g.atom(i);
      const auto key = std::make_tuple(mol::atomic_number(a.element), mol::heavy_degree(g, i), a.h_count,
                                       a.formal_charge);
      const auto [it, inserted] = seen.emplace(atom_invariant(a, mol::heavy_degree(g, i)), key);
      if (!inserted) {
        EXPECT_EQ(it->second, key);
      }
    }
  }
}

TEST(MorganEncode, MethaneRadiusZeroSetsOneBit) {
  EXPECT_EQ(morgan_encode(cfg(0), mol::parse_smiles("C")).popcount(), 1u);
}

TEST(MorganEncode, IdentifiersFollowTheRehashRule) {
  const auto g = mol::parse_smiles("CCO");
  const auto ids = morgan_identifiers(cfg(1), g);
  ASSERT_EQ(ids.size(), 6u);
  // atom 1 at radius 1: (own id, 2 neighbors sorted by (bond code, id))
  std::vector<std::pair<std::uint32_t, std::uint64_t>> env = {{1u, ids[0]}, {1u, ids[2]}};
  std::sort(env.begin(), env.end());
  std::vector<std::uint8_t> bytes;
  append_le(bytes, ids[1], 8);
  append_le(bytes, 2, 4);
  for (auto [code, id] : env) {
    append_le(bytes, code, 4);
    append_le(bytes, id, 8);
  }
  EXPECT_EQ(ids[4], fnv1a(bytes));
}

TEST(MorganEncode, PermutationInvariant) {
  EXPECT_EQ(morgan_encode(cfg(), mol::parse_smiles("CCO")), morgan_encode(cfg(), mol::parse_smiles("OCC")));
  std::mt19937_64 rng(8);
  for (const auto& g : testing::corpus()) {
    const auto ref = morgan_encode(cfg(), g);
    if (g.size() <= 8) {
      std::vector<std::size_t> p(g.size());
      std::iota(p.begin(), p.end(), 0);
      do {
        EXPECT_EQ(morgan_encode(cfg(), mol::permute(g, p)), ref);
      } while (std::next_permutation(p.begin(), p.end()));
    } else {
      for (int t = 0; t < 10; ++t) {
        EXPECT_EQ(morgan_encode(cfg(), mol::permute(g, testing::random_permutation(g.size(), rng))), ref);
      }
    }
  }
}

TEST(MorganEncode, BitsAccumulateWithRadius) {
  for (const auto& g : testing::corpus()) {
    for (int r = 0; r < 4; ++r) {
      const auto lo = morgan_encode(cfg(r), g);
      const auto hi = morgan_encode(cfg(r + 1), g);
      for (std::size_t b : lo.set_bits()) EXPECT_TRUE(hi.test(b));
      EXPECT_GE(hi.popcount(), lo.popcount());
    }
  }
}

TEST(MorganEncode, FoldingLosesInformationAtSmallSizes) {
  std::size_t demonstrated = 0;
  for (const auto& g : testing::corpus()) {
    const auto ids = morgan_identifiers(cfg(), g);
    const std::set<std::uint64_t> distinct(ids.begin(), ids.end());
    if (distinct.size() <= 32) continue;
    EXPECT_LT(morgan_encode(cfg(2, 32), g).popcount(), distinct.size());
    ++demonstrated;
  }
  EXPECT_GT(demonstrated, 0u);
}

TEST(Tanimoto, Examples) {
  const auto x = bits(8, {1, 4, 6});
  EXPECT_EQ(tanimoto(x, x), 1.0);
  EXPECT_EQ(tanimoto(bits(8, {0, 1}), bits(8, {2, 3})), 0.0);
  EXPECT_DOUBLE_EQ(tanimoto(bits(8, {0, 1}), bits(8, {0, 2})), 1.0 / 3.0);  // 1100 vs 1010
  EXPECT_EQ(tanimoto(BitFingerprint(8), BitFingerprint(8)), 1.0);
  EXPECT_EQ(thrown_kind([] { tanimoto(BitFingerprint(8), BitFingerprint(16)); }), ErrorKind::kShape);
}

TEST(Jsonl, Format) {
  const auto c = cfg(1, 64);
  const auto fp = morgan_encode(c, mol::parse_smiles("CCO"));
  const auto line = to_jsonl("CCO", c, fp);
  EXPECT_EQ(line.rfind("{\"smiles\":\"CCO\",\"nbits\":64,\"radius\":1,\"bits\":[", 0), 0u);
  const auto j = nlohmann::json::parse(line);
  EXPECT_EQ(j["bits"].get<std::vector<std::size_t>>(), fp.set_bits());
}

}  // namespace
}  // namespace hdfp::baseline
