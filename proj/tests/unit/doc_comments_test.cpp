#include <gtest/gtest.h>

#include "iotrace/docgen/doc_comments.hpp"

using namespace iotrace::docgen;

TEST(DocComments, BriefIsFirstSentence) {
  EXPECT_EQ(brief_of("Greatest common divisor. Uses Euclid."), "Greatest common divisor.");
  EXPECT_EQ(brief_of("Version 1.5 of the parser. More."), "Version 1.5 of the parser.");
  EXPECT_EQ(brief_of("No full stop"), "No full stop");
  EXPECT_EQ(brief_of("Spans\ntwo lines. Then more."), "Spans two lines.");
  EXPECT_EQ(brief_of(""), "");
}

TEST(DocComments, BriefTag) {
  EXPECT_EQ(brief_of("Intro text.\n@brief Tagged summary. Extra."), "Tagged summary.");
  EXPECT_EQ(brief_of("\\brief Backslash form\ncontinues here.\n\n@param x ignored"),
            "Backslash form continues here.");
  EXPECT_EQ(brief_of("@brief Stops at tags\n@param x the input"), "Stops at tags");
}

TEST(DocComments, AttachesToFollowingFunction) {
  const std::string src = R"(#include <stdio.h>

/**
 * Add two numbers.
 *
 * Overflow wraps.
 */
int add(int a, int b)
{
    return a + b;
}

/* An ordinary comment. */
int plain(void);

/** Scale a value. */
static inline double scale(double x, unsigned factor);

/** A type, not a function. */
typedef int (*binop)(int, int);

/** A variable. */
int counter = 0;

/** Returns a function pointer. */
int (*pick(int which))(int, int);

/**/
int empty_marker(void);
)";
  const auto docs = parse_doc_comments(src, "demo.c");
  ASSERT_EQ(docs.size(), 3u);
  EXPECT_EQ(docs[0].function, "add");
  EXPECT_EQ(docs[0].brief, "Add two numbers.");
  EXPECT_EQ(docs[0].raw, "Add two numbers.\n\nOverflow wraps.");
  EXPECT_EQ(docs[0].line, 3u);
  EXPECT_EQ(docs[0].file, "demo.c");
  EXPECT_EQ(docs[1].function, "scale");
  EXPECT_EQ(docs[1].brief, "Scale a value.");
  EXPECT_EQ(docs[2].function, "pick");
}

TEST(DocComments, CommentMarkersInsideStringsAreIgnored) {
  const std::string src = R"(const char *s = "/** not a comment */";
char c = '"';
/** Real one. */
void real(void);
)";
  const auto docs = parse_doc_comments(src);
  ASSERT_EQ(docs.size(), 1u);
  EXPECT_EQ(docs[0].function, "real");
}

TEST(DocComments, EmptyBriefIsDropped) {
  EXPECT_TRUE(parse_doc_comments("/** */\nint f(void);\n").empty());
  EXPECT_TRUE(parse_doc_comments("/**\n *\n */\nint f(void);\n").empty());
}

TEST(DocComments, FixtureLibrary) {
  const auto files = collect_sources(IOTRACE_FIXTURE_SRC_DIR);
  ASSERT_FALSE(files.empty());
  EXPECT_TRUE(std::is_sorted(files.begin(), files.end()));
  std::vector<std::string> warnings;
  auto with_missing = files;
  with_missing.push_back("/nonexistent/file.c");
  const auto docs = extract_doc_comments(with_missing, &warnings);
  ASSERT_EQ(warnings.size(), 1u);
  std::vector<std::string> names;
  for (const auto& [name, doc] : docs) names.push_back(name);
  EXPECT_EQ(names, (std::vector<std::string>{"bprint_channel_layout", "clamp", "color_name", "gcd",
                                             "lerp", "make_pair", "rect_area", "scale"}));
  EXPECT_EQ(docs.at("gcd").brief, "Greatest common divisor of two non-negative integers.");
  EXPECT_EQ(docs.at("scale").brief, "Multiply a sample by an integer gain.");
  EXPECT_EQ(docs.at("gcd").file.filename(), "arith.c");
}

TEST(DocComments, FirstFileWinsOnDuplicates) {
  // The fixture header has no doc comments of its own, so the sources decide.
  const auto files = collect_sources(IOTRACE_FIXTURE_SRC_DIR);
  const auto docs = extract_doc_comments(files);
  for (const auto& [name, doc] : docs) EXPECT_EQ(doc.file.extension(), ".c") << name;
}
