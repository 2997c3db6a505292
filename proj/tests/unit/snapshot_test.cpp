#include <gtest/gtest.h>

#include <cstring>

#include "iotrace/tracer/snapshot.hpp"

using namespace iotrace::model;
using namespace iotrace::tracer;
using iotrace::debuginfo::FunctionSig;
using iotrace::debuginfo::Parameter;

namespace {

template <typename T>
Bytes le(T v) {
  Bytes out(sizeof v);
  std::memcpy(out.data(), &v, sizeof v);
  return out;
}

Bytes cat(std::initializer_list<Bytes> parts) {
  Bytes out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

Bytes text(const std::string& s) { return Bytes(s.begin(), s.end()); }

struct Types {
  TypeArena arena;
  const TypeDesc* ch = arena.base("char", 1, BaseEncoding::SignedChar);
  const TypeDesc* i32 = arena.base("int", 4, BaseEncoding::SignedInt);
  const TypeDesc* u32 = arena.base("unsigned int", 4, BaseEncoding::UnsignedInt);
  const TypeDesc* f32 = arena.base("float", 4, BaseEncoding::Float);
  const TypeDesc* f64 = arena.base("double", 8, BaseEncoding::Float);
  const TypeDesc* charp = arena.pointer_to(ch);

  const TypeDesc* bprint() {
    TypeDesc d;
    d.kind = TypeKind::Struct;
    d.name = "bprint";
    d.byte_size = 16;
    d.members = {{"str", 0, charp, std::nullopt},
                 {"len", 8, u32, std::nullopt},
                 {"size", 12, u32, std::nullopt}};
    return arena.make(d);
  }

  // struct node { int value; struct node *next; }
  const TypeDesc* node_ptr() {
    TypeDesc* node = arena.make(TypeDesc{TypeKind::Struct, "node", 16, BaseEncoding::SignedInt,
                                         nullptr, {}, {}, {}, {}});
    const TypeDesc* ptr = arena.pointer_to(node);
    node->members = {{"value", 0, i32, std::nullopt}, {"next", 8, ptr, std::nullopt}};
    return ptr;
  }
};

TraceConfig config(unsigned depth = 3, std::size_t cap = 256) {
  TraceConfig c;
  c.max_deref_depth = depth;
  c.string_cap_bytes = cap;
  return c;
}

}  // namespace

TEST(Snapshot, NullCharPointer) {
  Types t;
  BufferMemory mem;
  const Value v = snapshot_value(mem, ValueSource::of(le<std::uint64_t>(0)), *t.charp, config());
  ASSERT_TRUE(v.is<Pointer>());
  EXPECT_EQ(v.as<Pointer>().state, PointerState::Null);
  EXPECT_FALSE(v.as<Pointer>().pointee);
  EXPECT_EQ(display_text(v), "NULL");
}

TEST(Snapshot, DanglingPointerIsUnreadable) {
  Types t;
  BufferMemory mem;
  const Value v =
      snapshot_value(mem, ValueSource::of(le<std::uint64_t>(0xdead0000)), *t.charp, config());
  EXPECT_EQ(v.as<Pointer>().state, PointerState::Unreadable);
  EXPECT_EQ(v.as<Pointer>().address, 0xdead0000u);
  const Value w = snapshot_value(mem, ValueSource::at(0xdead0000), *t.i32, config());
  EXPECT_TRUE(w.is<Opaque>());
}

TEST(Snapshot, BprintStruct) {
  Types t;
  BufferMemory mem;
  mem.map(0x2000, text(std::string("stereo") + '\0'));
  mem.map(0x1000, cat({le<std::uint64_t>(0x2000), le<std::uint32_t>(6), le<std::uint32_t>(64)}));
  const TypeDesc* bp = t.arena.pointer_to(t.bprint());
  const Value v = snapshot_value(mem, ValueSource::of(le<std::uint64_t>(0x1000)), *bp, config());

  const auto& p = v.as<Pointer>();
  EXPECT_EQ(p.state, PointerState::Valid);
  EXPECT_EQ(display_text(v), "[memory addr.]");
  const auto& s = (*p.pointee)->as<StructVal>();
  ASSERT_EQ(s.fields.size(), 3u);
  EXPECT_EQ(display_text(*s.fields[0].value), "\"stereo\"");
  EXPECT_EQ(display_text(*s.fields[1].value), "6");
  EXPECT_EQ(display_text(*s.fields[2].value), "64");
  EXPECT_EQ(deref_depth(v), 2u);
}

TEST(Snapshot, ArrayReportsFirstItem) {
  Types t;
  BufferMemory mem;
  mem.map(0x3000, cat({le<std::int32_t>(7), le<std::int32_t>(8), le<std::int32_t>(9)}));
  const TypeDesc* row = t.arena.array_of(t.i32, 3);
  const Value v = snapshot_value(mem, ValueSource::at(0x3000), *row, config());
  ASSERT_TRUE(v.is<ArrayHead>());
  EXPECT_EQ(display_text(*v.as<ArrayHead>().first), "7");
  const Value via = snapshot_value(mem, ValueSource::of(le<std::uint64_t>(0x3000)),
                                   *t.arena.pointer_to(row), config());
  EXPECT_EQ(display_text(*(*via.as<Pointer>().pointee)->as<ArrayHead>().first), "7");
}

TEST(Snapshot, CycleIsCutAtRevisit) {
  Types t;
  BufferMemory mem;
  mem.map(0x4000, cat({le<std::int32_t>(1), le<std::int32_t>(0), le<std::uint64_t>(0x4000)}));
  const Value v =
      snapshot_value(mem, ValueSource::of(le<std::uint64_t>(0x4000)), *t.node_ptr(), config(10));
  const auto& node = (*v.as<Pointer>().pointee)->as<StructVal>();
  EXPECT_EQ(display_text(*node.fields[0].value), "1");
  const auto& next = node.fields[1].value->as<Pointer>();
  EXPECT_EQ(next.state, PointerState::Valid);
  EXPECT_EQ(next.address, 0x4000u);
  EXPECT_FALSE(next.pointee);
}

TEST(Snapshot, DepthLimitCountsHops) {
  Types t;
  BufferMemory mem;
  // a -> b -> c -> d -> NULL
  const std::uint64_t addrs[] = {0x5000, 0x5100, 0x5200, 0x5300};
  for (int i = 0; i < 4; ++i) {
    mem.map(addrs[i], cat({le<std::int32_t>(i), le<std::int32_t>(0),
                           le<std::uint64_t>(i < 3 ? addrs[i + 1] : 0)}));
  }
  for (unsigned depth = 0; depth <= 5; ++depth) {
    const Value v = snapshot_value(mem, ValueSource::of(le<std::uint64_t>(addrs[0])),
                                   *t.node_ptr(), config(depth));
    EXPECT_EQ(deref_depth(v), std::min(depth, 4u)) << depth;
  }
}

TEST(Snapshot, StringCapTruncates) {
  Types t;
  BufferMemory mem;
  mem.map(0x6000, text(std::string(300, 'x') + '\0'));
  const auto ptr = ValueSource::of(le<std::uint64_t>(0x6000));
  const Value capped = snapshot_value(mem, ptr, *t.charp, config(3, 256));
  const auto& s = (*capped.as<Pointer>().pointee)->as<CString>();
  EXPECT_EQ(s.text.size(), 256u);
  EXPECT_TRUE(s.truncated);
  const Value whole = snapshot_value(mem, ptr, *t.charp, config(3, 300));
  EXPECT_FALSE((*whole.as<Pointer>().pointee)->as<CString>().truncated);
  EXPECT_EQ((*whole.as<Pointer>().pointee)->as<CString>().text.size(), 300u);
}

TEST(Snapshot, UnterminatedStringAtEndOfMapping) {
  Types t;
  BufferMemory mem;
  mem.map(0x7000, text("abc"));
  const Value v = snapshot_value(mem, ValueSource::of(le<std::uint64_t>(0x7000)), *t.charp, config());
  const auto& s = (*v.as<Pointer>().pointee)->as<CString>();
  EXPECT_EQ(s.text, "abc");
  EXPECT_TRUE(s.truncated);
  mem.map(0x7100, text(std::string("ok") + '\0'));
  const Value w = snapshot_value(mem, ValueSource::of(le<std::uint64_t>(0x7100)), *t.charp, config());
  EXPECT_EQ(display_text(w), "\"ok\"");
}

TEST(Snapshot, InvalidUtf8IsReplaced) {
  EXPECT_EQ(sanitize_utf8("ok"), "ok");
  EXPECT_EQ(sanitize_utf8("\xc3\xa9"), "\xc3\xa9");
  EXPECT_EQ(sanitize_utf8("a\xff" "b"), "a\xef\xbf\xbd" "b");
  EXPECT_EQ(sanitize_utf8("\xe2\x82"), "\xef\xbf\xbd");
  Types t;
  BufferMemory mem;
  mem.map(0x8000, Bytes{'h', 0xc8, 'i', 0});
  const Value v = snapshot_value(mem, ValueSource::of(le<std::uint64_t>(0x8000)), *t.charp, config());
  EXPECT_EQ(display_text(v), "\"h\xef\xbf\xbdi\"");
}

TEST(Snapshot, UnionShowsEveryInterpretation) {
  Types t;
  TypeDesc u;
  u.kind = TypeKind::Union;
  u.name = "number";
  u.byte_size = 4;
  u.members = {{"i", 0, t.i32, std::nullopt}, {"f", 0, t.f32, std::nullopt}};
  BufferMemory mem;
  const Value v = snapshot_value(mem, ValueSource::of(le<std::uint32_t>(0x3f800000)),
                                 *t.arena.make(u), config());
  const auto& uv = v.as<UnionVal>();
  EXPECT_EQ(display_text(*uv.interpretations[0].value), "1065353216");
  EXPECT_EQ(display_text(*uv.interpretations[1].value), "1");
  EXPECT_EQ(display_text(v), "1065353216");
}

TEST(Snapshot, BitfieldsAndOpaqueTypesStayOpaque) {
  Types t;
  TypeDesc f;
  f.kind = TypeKind::Struct;
  f.name = "flags";
  f.byte_size = 8;
  f.members = {{"ready", 0, t.u32, 1u}, {"level", 4, t.i32, std::nullopt}};
  BufferMemory mem;
  const Value v = snapshot_value(mem, ValueSource::of(cat({le<std::uint32_t>(1), le<std::int32_t>(5)})),
                                 *t.arena.make(f), config());
  const auto& s = v.as<StructVal>();
  EXPECT_TRUE(s.fields[0].value->is<Opaque>());
  EXPECT_EQ(display_text(*s.fields[1].value), "5");

  const TypeDesc* handle = t.arena.pointer_to(t.arena.opaque("struct opaque_handle", 0, "incomplete"));
  mem.map(0x9000, Bytes(8, 0));
  const Value h = snapshot_value(mem, ValueSource::of(le<std::uint64_t>(0x9000)), *handle, config());
  EXPECT_EQ(h.as<Pointer>().state, PointerState::Valid);
  EXPECT_FALSE(h.as<Pointer>().pointee);
}

TEST(Snapshot, CaptureArgumentFromRegistersAndStack) {
  Types t;
  RegisterState regs;
  regs.rsp = 0x10000;
  regs.args[1] = 0xfffffffffffffff6ull;  // rsi = -10
  regs.xmm[0] = {};
  const double d = 2.5;
  std::memcpy(regs.xmm[0].data(), &d, 8);
  BufferMemory mem;
  mem.map(0x10008, le<std::int32_t>(42));

  Parameter in_reg{"b", t.i32, {}};
  in_reg.location.kind = iotrace::debuginfo::ArgLocation::Kind::Registers;
  in_reg.location.pieces = {{iotrace::debuginfo::RegPiece::File::Integer, 1}};
  auto b = capture_argument(regs, mem, in_reg);
  ASSERT_TRUE(b);
  EXPECT_EQ(display_text(snapshot_value(mem, ValueSource::of(*b), *t.i32, config())), "-10");

  Parameter in_sse{"x", t.f64, {}};
  in_sse.location.kind = iotrace::debuginfo::ArgLocation::Kind::Registers;
  in_sse.location.pieces = {{iotrace::debuginfo::RegPiece::File::Sse, 0}};
  auto x = capture_argument(regs, mem, in_sse);
  ASSERT_TRUE(x);
  EXPECT_EQ(display_text(snapshot_value(mem, ValueSource::of(*x), *t.f64, config())), "2.5");

  Parameter on_stack{"h", t.i32, {}};
  on_stack.location.kind = iotrace::debuginfo::ArgLocation::Kind::Stack;
  on_stack.location.stack_offset = 8;
  auto h = capture_argument(regs, mem, on_stack);
  ASSERT_TRUE(h);
  EXPECT_EQ(display_text(snapshot_value(mem, ValueSource::of(*h), *t.i32, config())), "42");

  Parameter unknown{"u", t.i32, {}};
  EXPECT_FALSE(capture_argument(regs, mem, unknown));
}

TEST(Snapshot, ReturnValues) {
  Types t;
  RegisterState regs;
  regs.rax = 4;
  BufferMemory mem;
  FunctionSig sig;
  sig.name = "gcd";
  sig.return_type = t.i32;
  sig.return_location.kind = iotrace::debuginfo::ReturnLocation::Kind::Registers;
  sig.return_location.pieces = {{iotrace::debuginfo::RegPiece::File::Integer, 0}};
  EXPECT_EQ(display_text(read_return_value(regs, mem, sig, config())), "4");

  FunctionSig v;
  v.return_type = t.arena.void_type();
  v.return_location.kind = iotrace::debuginfo::ReturnLocation::Kind::Void;
  EXPECT_TRUE(read_return_value(regs, mem, v, config()).is<Void>());

  // Struct returned through a caller buffer whose address comes back in rax.
  regs.rax = 0xa000;
  mem.map(0xa000, cat({le<std::uint64_t>(0), le<std::uint32_t>(3), le<std::uint32_t>(8)}));
  FunctionSig m;
  m.return_type = t.bprint();
  m.return_location.kind = iotrace::debuginfo::ReturnLocation::Kind::Memory;
  const Value r = read_return_value(regs, mem, m, config());
  ASSERT_TRUE(r.is<StructVal>());
  EXPECT_EQ(display_text(*r.as<StructVal>().fields[0].value), "NULL");
  EXPECT_EQ(display_text(*r.as<StructVal>().fields[2].value), "8");
}
