#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace iotrace::model {

/// Owning, deep-copying, non-null holder used to give recursive variant
/// alternatives value semantics.
template <typename T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;
  ~Box() = default;

  const T& operator*() const { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return *a.ptr_ == *b.ptr_; }

 private:
  std::unique_ptr<T> ptr_;
};

struct Value;

struct NamedValue {
  std::string name;
  Box<Value> value;

  friend bool operator==(const NamedValue&, const NamedValue&) = default;
};

using Bytes = std::vector<std::uint8_t>;

struct Void {
  friend bool operator==(const Void&, const Void&) = default;
};

struct Scalar {
  Bytes raw;
  std::string text;
  friend bool operator==(const Scalar&, const Scalar&) = default;
};

struct EnumVal {
  std::int64_t numeric = 0;
  // Enumerator name, or "unknown(<n>)".
  std::string name;
  friend bool operator==(const EnumVal&, const EnumVal&) = default;
};

struct CString {
  std::string text;  // valid UTF-8; invalid input bytes become U+FFFD
  bool truncated = false;
  friend bool operator==(const CString&, const CString&) = default;
};

enum class PointerState { Null, Valid, Unreadable };

struct Pointer {
  PointerState state = PointerState::Null;
  std::uint64_t address = 0;
  // Absent for null/unreadable pointers, opaque targets, exhausted depth
  // and revisited addresses.
  std::optional<Box<Value>> pointee;
  friend bool operator==(const Pointer&, const Pointer&) = default;
};

struct StructVal {
  std::vector<NamedValue> fields;
  friend bool operator==(const StructVal&, const StructVal&) = default;
};

struct UnionVal {
  Bytes raw;
  std::vector<NamedValue> interpretations;
  friend bool operator==(const UnionVal&, const UnionVal&) = default;
};

struct ArrayHead {
  Box<Value> first;
  std::string note = "first item only";
  friend bool operator==(const ArrayHead&, const ArrayHead&) = default;
};

struct Opaque {
  Bytes raw;
  std::string note;
  friend bool operator==(const Opaque&, const Opaque&) = default;
};

struct Value {
  using Variant = std::variant<Void, Scalar, EnumVal, CString, Pointer,
                               StructVal, UnionVal, ArrayHead, Opaque>;
  Variant data;

  Value() = default;
  template <typename T,
            typename = std::enable_if_t<std::is_constructible_v<Variant, T&&> &&
                                        !std::is_same_v<std::decay_t<T>, Value>>>
  Value(T&& alt) : data(std::forward<T>(alt)) {}  // NOLINT

  template <typename T>
  bool is() const { return std::holds_alternative<T>(data); }
  template <typename T>
  const T& as() const { return std::get<T>(data); }
  template <typename T>
  const T* get_if() const { return std::get_if<T>(&data); }

  friend bool operator==(const Value&, const Value&) = default;
};

/// Pointer hops from this value to its deepest pointee.
std::size_t deref_depth(const Value& value);

/// One-cell text for a value: scalar text, enumerator name, quoted string,
/// "NULL" / "[memory addr.]" / "[unreadable]" for pointers (a pointer to a
/// string shows the quoted string), "{...}" for structs, the first member
/// for unions, the first item for arrays and "[opaque]" otherwise.
std::string display_text(const Value& value);

std::string to_hex(const Bytes& bytes);
std::optional<Bytes> from_hex(std::string_view hex);

}  // namespace iotrace::model
