#include <gtest/gtest.h>

#include <sstream>

#include "netinf/cascade.hpp"
#include "netinf/error.hpp"
#include "oracles.hpp"

using namespace netinf;

namespace {

CascadeSet parse(const std::string& doc) {
  std::istringstream in(doc);
  return read_cascades(in);
}

std::size_t error_line(const std::string& doc) {
  try {
    parse(doc);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(CascadeFile, TwoCascadeLayout) {
  CascadeSet set;
  set.nodes = {{0, "alice"}, {1, "bob"}, {2, "carol"}};
  set.cascades.push_back({"c1", {{0, 0.0}, {1, 1.5}}, std::nullopt});
  set.cascades.push_back({"c2", {{2, 3.0}, {0, 3.0}, {1, 3.0 + 1e-15}}, std::nullopt});
  std::ostringstream out;
  write_cascades(out, set);
  EXPECT_EQ(out.str(),
            "0,alice\n1,bob\n2,carol\n"
            "\n"
            "c1;0,0;1,1.5\n"
            "c2;2,3;0,3;1,3.000000000000001\n");
  EXPECT_EQ(parse(out.str()), set);
}

TEST(CascadeFile, RandomSetsRoundTrip) {
  Rng rng(2024);
  for (int i = 0; i < 200; ++i) {
    auto set = oracle::random_instance(rng, 15, 10, i % 2 == 0);
    set.nodes.begin()->second = "label, with; punctuation";
    std::stringstream s;
    write_cascades(s, set);
    EXPECT_EQ(read_cascades(s), set);
  }
}

TEST(CascadeFile, EmptySet) {
  std::ostringstream out;
  write_cascades(out, CascadeSet{});
  EXPECT_EQ(out.str(), "\n");
  EXPECT_EQ(parse("\n"), CascadeSet{});
}

TEST(CascadeFile, DecreasingTimesRejectedAtLine) {
  EXPECT_EQ(error_line("0,a\n1,b\n\nc1;0,0;1,1\nc2;0,5;1,3\n"), 5u);
}

TEST(CascadeFile, RepeatedNodeRejected) {
  EXPECT_EQ(error_line("0,a\n1,b\n\nc1;0,0;0,1\n"), 4u);
}

TEST(CascadeFile, UnknownNodeRejected) {
  EXPECT_EQ(error_line("0,a\n1,b\n\nc1;0,0;7,1\n"), 4u);
}

TEST(CascadeFile, OtherMalformedInput) {
  EXPECT_EQ(error_line("0,a\n1,b\n"), 3u);            // no separator
  EXPECT_EQ(error_line("0,a\nx,b\n\n"), 2u);          // bad node id
  EXPECT_EQ(error_line("0,a\n0,b\n\n"), 2u);          // duplicate node
  EXPECT_EQ(error_line("0,a\n\nc;0,abc\n"), 3u);      // bad time
  EXPECT_EQ(error_line("0,a\n\nc;0,-1\n"), 3u);       // negative time
  EXPECT_EQ(error_line("0,a\n\nc;0,1\nc;0,2\n"), 4u); // duplicate contagion
  EXPECT_EQ(error_line("0,a\n\n;0,1\n"), 3u);         // empty contagion id
  EXPECT_EQ(error_line("0,a\n\nc;0\n"), 3u);          // missing time
}

TEST(CascadeFile, WriterRejectsInvalidSets) {
  CascadeSet set;
  set.nodes = {{0, "a"}};
  set.cascades.push_back({"bad;id", {{0, 0.0}}, std::nullopt});
  std::ostringstream out;
  EXPECT_THROW(write_cascades(out, set), InvalidArgument);
  set.cascades[0] = {"ok", {{1, 0.0}}, std::nullopt};
  EXPECT_THROW(write_cascades(out, set), InvalidArgument);
}
