#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>

#include "iotrace/debuginfo/debug_index.hpp"
#include "paths.hpp"

using namespace iotrace::debuginfo;
using namespace iotrace::model;
namespace ts = iotrace::testing;

namespace {

const DebugIndex& fixture() {
  static const DebugIndex index = load_debug_info(IOTRACE_FIXTURE_DRIVER);
  return index;
}

const DebugIndex& layout() {
  static const DebugIndex index = load_debug_info(IOTRACE_TRACEE_LAYOUT);
  return index;
}

DebugInfoError::Kind load_error(const std::filesystem::path& path) {
  try {
    load_debug_info(path);
  } catch (const DebugInfoError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "loaded " << path;
  return DebugInfoError::Kind::Io;
}

// Names and declarations that every build of layout.c must agree on.
void expect_layout_shape(const DebugIndex& index) {
  EXPECT_EQ(index.resolve_function("add").declaration, "int add(int a, int b)");
  const FunctionSig& area = index.resolve_function("rect_area");
  ASSERT_EQ(area.params.size(), 1u);
  EXPECT_EQ(type_name(*area.params[0].type), "struct rect *");
  EXPECT_TRUE(area.declaration.ends_with(" rect_area(const struct rect *r)")) << area.declaration;
  const TypeDesc& rect = index.find_type("struct rect");
  EXPECT_EQ(rect.byte_size, 24u);
  ASSERT_EQ(rect.members.size(), 3u);
  EXPECT_EQ(rect.members[1].name, "corner");
  EXPECT_EQ(rect.members[1].byte_offset, 8u);
  EXPECT_EQ(rect.members[2].byte_offset, 16u);
  EXPECT_TRUE(index.resolve_function("sum_ints").variadic);
  const TypeDesc& shade = index.find_type("enum shade");
  ASSERT_EQ(shade.enumerators.size(), 3u);
  EXPECT_EQ(shade.enumerators[0].value, -1);
  EXPECT_EQ(shade.enumerators[2].name, "SHADE_LIGHT");
}

}  // namespace

TEST(DebugInfo, FixtureListsEveryLibraryFunction) {
  const auto names = fixture().list_functions();
  for (const char* fn : {"gcd", "clamp", "scale", "lerp", "bprint_channel_layout", "color_name",
                         "count_char", "make_pair", "rect_area", "sum_triple", "number_as_float",
                         "list_length", "main"}) {
    EXPECT_TRUE(std::binary_search(names.begin(), names.end(), fn)) << fn;
  }
  EXPECT_GE(names.size(), 12u);
  EXPECT_TRUE(std::is_sorted(names.begin(), names.end()));
  EXPECT_EQ(std::adjacent_find(names.begin(), names.end()), names.end());
}

TEST(DebugInfo, GlobFilter) {
  const auto names = fixture().list_functions("*_*");
  EXPECT_TRUE(std::binary_search(names.begin(), names.end(), "make_pair"));
  EXPECT_FALSE(std::binary_search(names.begin(), names.end(), "gcd"));
  EXPECT_EQ(fixture().list_functions("gc?"), std::vector<std::string>{"gcd"});
  EXPECT_TRUE(fixture().list_functions("nothing*").empty());
}

TEST(DebugInfo, GcdSignature) {
  const FunctionSig& gcd = fixture().resolve_function("gcd");
  EXPECT_EQ(gcd.name, "gcd");
  EXPECT_EQ(gcd.declaration, "int gcd(int a, int b)");
  ASSERT_EQ(gcd.params.size(), 2u);
  EXPECT_EQ(gcd.params[0].name, "a");
  EXPECT_EQ(gcd.params[1].name, "b");
  EXPECT_EQ(gcd.params[0].location.kind, ArgLocation::Kind::Registers);
  EXPECT_EQ(gcd.params[1].location.pieces[0].index, 1u);
  EXPECT_EQ(type_name(*gcd.return_type), "int");
  EXPECT_LT(gcd.low_pc, gcd.high_pc);
  EXPECT_EQ(std::filesystem::path(gcd.decl_file).filename(), "arith.c");
  EXPECT_GT(gcd.decl_line, 0u);
  EXPECT_FALSE(gcd.is_static);
  EXPECT_FALSE(gcd.variadic);
  EXPECT_EQ(gcd.qualified_name(), "arith.c:gcd");
  EXPECT_EQ(&fixture().resolve_function("arith.c:gcd"), &gcd);
}

TEST(DebugInfo, FixtureDeclarations) {
  EXPECT_EQ(fixture().resolve_function("bprint_channel_layout").declaration,
            "void bprint_channel_layout(struct bprint *bp, int nb_channels, uint64_t "
            "channel_layout)");
  EXPECT_EQ(fixture().resolve_function("color_name").declaration,
            "const char *color_name(enum color c)");
  EXPECT_EQ(fixture().resolve_function("make_pair").declaration,
            "struct pair make_pair(int first, int second)");
  EXPECT_TRUE(fixture().resolve_function("bprint_channel_layout").returns_void());
  EXPECT_EQ(fixture().resolve_function("scale").params[0].location.pieces[0].file,
            RegPiece::File::Sse);
}

TEST(DebugInfo, UnknownFunctionIsNotFound) {
  try {
    fixture().resolve_function("no_such_function");
    FAIL();
  } catch (const DebugInfoError& e) {
    EXPECT_EQ(e.kind(), DebugInfoError::Kind::NotFound);
  }
}

TEST(DebugInfo, SameNamedStaticsAreAmbiguous) {
  const DebugIndex index = load_debug_info(IOTRACE_TRACEE_TWO_FILE);
  try {
    index.resolve_function("helper");
    FAIL();
  } catch (const DebugInfoError& e) {
    EXPECT_EQ(e.kind(), DebugInfoError::Kind::Ambiguous);
    EXPECT_EQ(e.candidates(), (std::vector<std::string>{"two_a.c:helper", "two_b.c:helper"}));
  }
  const FunctionSig& a = index.resolve_function("two_a.c:helper");
  const FunctionSig& b = index.resolve_function("two_b.c:helper");
  EXPECT_NE(a.low_pc, b.low_pc);
  EXPECT_TRUE(a.is_static);
  EXPECT_EQ(index.list_functions("helper"), std::vector<std::string>{"helper"});
}

TEST(DebugInfo, LoadErrors) {
  EXPECT_EQ(load_error("/nonexistent/binary"), DebugInfoError::Kind::Io);
  EXPECT_EQ(load_error(std::filesystem::path(IOTRACE_FIXTURE_SRC_DIR) / "fixture.h"),
            DebugInfoError::Kind::UnsupportedFormat);
  EXPECT_EQ(load_error(IOTRACE_TRACEE_STRIPPED), DebugInfoError::Kind::NoDebugInfo);
}

TEST(DebugInfo, ThirtyTwoBitTargetsAreRejected) {
  const std::filesystem::path m32 = IOTRACE_TRACEE_M32;
  if (m32.empty() || !std::filesystem::exists(m32)) GTEST_SKIP() << "no -m32 toolchain";
  EXPECT_EQ(load_error(m32), DebugInfoError::Kind::UnsupportedWordSize);
}

TEST(DebugInfo, FieldAddress) {
  const TypeDesc& bp = fixture().find_type("struct bprint");
  EXPECT_EQ(field_address(0x1000, bp, "str"), 0x1000u);
  EXPECT_EQ(field_address(0x1000, bp, "len"), 0x1008u);
  EXPECT_EQ(field_address(0x1000, bp, "size"), 0x100cu);
  try {
    field_address(0x1000, bp, "capacity");
    FAIL();
  } catch (const DebugInfoError& e) {
    EXPECT_EQ(e.kind(), DebugInfoError::Kind::NoSuchMember);
  }
  // Typedefs are looked through.
  const TypeDesc& rect = fixture().find_type("struct rect");
  EXPECT_EQ(field_address(0, rect, "size"), 8u);
}

TEST(DebugInfo, StructOffsetsAreMonotoneAndInBounds) {
  for (const DebugIndex* index : {&fixture(), &layout()}) {
    for (const auto& fn : index->functions()) {
      for (const auto& p : fn.params) {
        ASSERT_NE(p.type, nullptr);
        EXPECT_TRUE(validate(*p.type).empty()) << fn.name << " " << p.name;
        const TypeDesc* t = &strip_typedefs(*p.type);
        if (t->kind == TypeKind::Pointer && t->target) t = &strip_typedefs(*t->target);
        if (t->kind != TypeKind::Struct) continue;
        std::uint64_t last = 0;
        for (const auto& m : t->members) {
          EXPECT_GE(m.byte_offset, last) << t->name << "." << m.name;
          EXPECT_LE(m.byte_offset + (m.bit_size ? 0 : m.type->byte_size), t->byte_size);
          last = m.byte_offset;
        }
      }
    }
  }
}

TEST(DebugInfo, FixtureTypes) {
  const TypeDesc& number = fixture().find_type("union number");
  EXPECT_EQ(number.kind, TypeKind::Union);
  EXPECT_EQ(number.byte_size, 4u);
  ASSERT_EQ(number.members.size(), 3u);
  EXPECT_EQ(strip_typedefs(*number.members[2].type).kind, TypeKind::Array);
  EXPECT_EQ(strip_typedefs(*number.members[2].type).count, 4u);

  const TypeDesc& node = fixture().find_type("struct node");
  const TypeDesc& next = strip_typedefs(*node.members[1].type);
  ASSERT_EQ(next.kind, TypeKind::Pointer);
  EXPECT_EQ(&strip_typedefs(*next.target), &node);

  const TypeDesc& u64 = fixture().find_type("uint64_t");
  EXPECT_EQ(u64.kind, TypeKind::Typedef);
  EXPECT_EQ(strip_typedefs(u64).byte_size, 8u);
  EXPECT_EQ(strip_typedefs(u64).encoding, BaseEncoding::UnsignedInt);

  const FunctionSig& triple = fixture().resolve_function("sum_triple");
  const TypeDesc& row = strip_typedefs(*triple.params[0].type);
  ASSERT_EQ(row.kind, TypeKind::Pointer);
  EXPECT_EQ(strip_typedefs(*row.target).kind, TypeKind::Array);
  EXPECT_EQ(triple.declaration, "int sum_triple(const int (*values)[3])");
}

TEST(DebugInfo, LayoutTypeZoo) {
  const DebugIndex& idx = layout();
  expect_layout_shape(idx);

  const TypeDesc& flags = idx.find_type("struct flags");
  ASSERT_GE(flags.members.size(), 3u);
  EXPECT_TRUE(flags.members[0].bit_size.has_value());
  EXPECT_EQ(*flags.members[1].bit_size, 3u);
  EXPECT_EQ(flags.byte_size, 12u);

  const FunctionSig& handle = idx.resolve_function("handle_id");
  const TypeDesc& h = strip_typedefs(*handle.params[0].type);
  ASSERT_EQ(h.kind, TypeKind::Pointer);
  EXPECT_EQ(strip_typedefs(*h.target).kind, TypeKind::Opaque);

  const FunctionSig& apply = idx.resolve_function("apply");
  EXPECT_EQ(strip_typedefs(*apply.params[0].type).kind, TypeKind::FunctionPointer);

  const FunctionSig& tally = idx.resolve_function("tally");
  EXPECT_EQ(type_name(*tally.return_type), "tally_t");
  EXPECT_EQ(strip_typedefs(*tally.return_type).byte_size, 8u);

  const FunctionSig& many = idx.resolve_function("many_args");
  ASSERT_EQ(many.params.size(), 17u);
  EXPECT_EQ(many.params[6].location.kind, ArgLocation::Kind::Stack);
  EXPECT_EQ(many.params[15].location.kind, ArgLocation::Kind::Stack);
  EXPECT_EQ(many.params[16].location.kind, ArgLocation::Kind::Stack);

  const FunctionSig& big = idx.resolve_function("big_scale");
  EXPECT_EQ(big.return_location.kind, ReturnLocation::Kind::Memory);
  EXPECT_EQ(idx.resolve_function("ld_twice").return_location.kind, ReturnLocation::Kind::X87);
  EXPECT_EQ(strip_typedefs(*idx.resolve_function("is_even").return_type).encoding,
            BaseEncoding::Bool);
}

TEST(DebugInfo, DwarfFourVariant) {
  const std::filesystem::path path = IOTRACE_TRACEE_DWARF4;
  if (path.empty() || !std::filesystem::exists(path)) GTEST_SKIP();
  expect_layout_shape(load_debug_info(path));
}

TEST(DebugInfo, ClangVariant) {
  const std::filesystem::path path = IOTRACE_TRACEE_CLANG;
  if (path.empty() || !std::filesystem::exists(path)) GTEST_SKIP() << "clang not available";
  expect_layout_shape(load_debug_info(path));
}

TEST(DebugInfo, ErrorKindNames) {
  EXPECT_STREQ(to_string(DebugInfoError::Kind::NoDebugInfo), "NoDebugInfo");
  EXPECT_STREQ(to_string(DebugInfoError::Kind::Ambiguous), "Ambiguous");
}
