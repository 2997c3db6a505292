#include "iotrace/model/type_desc.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace iotrace::model {

const TypeDesc& strip_typedefs(const TypeDesc& desc) {
  const TypeDesc* current = &desc;
  std::unordered_set<const TypeDesc*> visited;
  while (current->kind == TypeKind::Typedef && current->target != nullptr) {
    if (!visited.insert(current).second) break;
    current = current->target;
  }
  return *current;
}

std::uint64_t alignment_of(const TypeDesc& desc) {
  const TypeDesc& t = strip_typedefs(desc);
  switch (t.kind) {
    case TypeKind::Base:
    case TypeKind::Enum:
      return std::clamp<std::uint64_t>(t.byte_size, 1, 16);
    case TypeKind::Pointer:
    case TypeKind::FunctionPointer:
      return kWordSize;
    case TypeKind::Array:
      return t.target ? alignment_of(*t.target) : 1;
    case TypeKind::Struct:
    case TypeKind::Union: {
      std::uint64_t align = 1;
      for (const auto& m : t.members) {
        if (m.type) align = std::max(align, alignment_of(*m.type));
      }
      return align;
    }
    case TypeKind::Typedef:
    case TypeKind::Void:
    case TypeKind::Opaque:
      return 1;
  }
  return 1;
}

const Member* find_member(const TypeDesc& desc, std::string_view name) {
  const TypeDesc& t = strip_typedefs(desc);
  auto it = std::find_if(t.members.begin(), t.members.end(),
                         [&](const Member& m) { return m.name == name; });
  return it == t.members.end() ? nullptr : &*it;
}

bool is_char_like(const TypeDesc& desc) {
  const TypeDesc& t = strip_typedefs(desc);
  return t.kind == TypeKind::Base && t.byte_size == 1 &&
         (t.encoding == BaseEncoding::SignedChar ||
          t.encoding == BaseEncoding::UnsignedChar);
}

std::string type_name(const TypeDesc& desc) {
  switch (desc.kind) {
    case TypeKind::Base:
    case TypeKind::Typedef:
      return desc.name;
    case TypeKind::Void:
      return "void";
    case TypeKind::Struct:
      return "struct " + (desc.name.empty() ? std::string("<anon>") : desc.name);
    case TypeKind::Union:
      return "union " + (desc.name.empty() ? std::string("<anon>") : desc.name);
    case TypeKind::Enum:
      return "enum " + (desc.name.empty() ? std::string("<anon>") : desc.name);
    case TypeKind::Pointer:
      return (desc.target ? type_name(*desc.target) : std::string("void")) + " *";
    case TypeKind::FunctionPointer:
      return desc.name.empty() ? std::string("<function pointer>") : desc.name;
    case TypeKind::Array: {
      std::string elem = desc.target ? type_name(*desc.target) : "?";
      return elem + "[" + (desc.count ? std::to_string(*desc.count) : "") + "]";
    }
    case TypeKind::Opaque:
      return desc.name.empty() ? std::string("<opaque>") : desc.name;
  }
  return {};
}

namespace {

void validate_node(const TypeDesc& t, std::unordered_set<const TypeDesc*>& seen,
                   std::vector<std::string>& errors) {
  if (!seen.insert(&t).second) return;
  const std::string label = type_name(t);
  switch (t.kind) {
    case TypeKind::Struct:
    case TypeKind::Union:
      for (const auto& m : t.members) {
        if (m.type == nullptr) {
          errors.push_back(label + ": member '" + m.name + "' has no type");
          continue;
        }
        const std::uint64_t size = strip_typedefs(*m.type).byte_size;
        if (!m.bit_size && m.byte_offset + size > t.byte_size) {
          errors.push_back(label + ": member '" + m.name + "' exceeds struct size");
        }
        validate_node(*m.type, seen, errors);
      }
      break;
    case TypeKind::Enum: {
      std::set<std::string> names;
      for (const auto& e : t.enumerators) {
        if (!names.insert(e.name).second) {
          errors.push_back(label + ": duplicate enumerator '" + e.name + "'");
        }
      }
      if (t.target) validate_node(*t.target, seen, errors);
      break;
    }
    case TypeKind::Pointer:
    case TypeKind::FunctionPointer:
      if (t.byte_size != kWordSize) {
        errors.push_back(label + ": pointer size is not the word size");
      }
      if (t.target) validate_node(*t.target, seen, errors);
      break;
    case TypeKind::Typedef: {
      std::unordered_set<const TypeDesc*> chain;
      const TypeDesc* cur = &t;
      while (cur && cur->kind == TypeKind::Typedef) {
        if (!chain.insert(cur).second) {
          errors.push_back(label + ": typedef cycle");
          return;
        }
        cur = cur->target;
      }
      if (t.target) validate_node(*t.target, seen, errors);
      break;
    }
    case TypeKind::Array:
      if (t.target) validate_node(*t.target, seen, errors);
      break;
    case TypeKind::Base:
    case TypeKind::Void:
    case TypeKind::Opaque:
      break;
  }
}

}  // namespace

std::vector<std::string> validate(const TypeDesc& desc) {
  std::vector<std::string> errors;
  std::unordered_set<const TypeDesc*> seen;
  validate_node(desc, seen, errors);
  return errors;
}

TypeDesc* TypeArena::make(TypeDesc desc) {
  nodes_.push_back(std::move(desc));
  return &nodes_.back();
}

const TypeDesc* TypeArena::void_type() {
  if (void_ == nullptr) {
    TypeDesc d;
    d.kind = TypeKind::Void;
    d.name = "void";
    void_ = make(std::move(d));
  }
  return void_;
}

const TypeDesc* TypeArena::base(std::string name, std::uint64_t byte_size,
                                BaseEncoding encoding) {
  TypeDesc d;
  d.kind = TypeKind::Base;
  d.name = std::move(name);
  d.byte_size = byte_size;
  d.encoding = encoding;
  return make(std::move(d));
}

const TypeDesc* TypeArena::pointer_to(const TypeDesc* target) {
  TypeDesc d;
  d.kind = TypeKind::Pointer;
  d.byte_size = kWordSize;
  d.target = target;
  return make(std::move(d));
}

const TypeDesc* TypeArena::typedef_of(std::string name, const TypeDesc* target) {
  TypeDesc d;
  d.kind = TypeKind::Typedef;
  d.name = std::move(name);
  d.target = target;
  d.byte_size = target ? strip_typedefs(*target).byte_size : 0;
  return make(std::move(d));
}

const TypeDesc* TypeArena::array_of(const TypeDesc* element,
                                    std::optional<std::uint64_t> count) {
  TypeDesc d;
  d.kind = TypeKind::Array;
  d.target = element;
  d.count = count;
  if (element && count) d.byte_size = strip_typedefs(*element).byte_size * *count;
  return make(std::move(d));
}

const TypeDesc* TypeArena::opaque(std::string name, std::uint64_t byte_size,
                                  std::string note) {
  TypeDesc d;
  d.kind = TypeKind::Opaque;
  d.name = std::move(name);
  d.byte_size = byte_size;
  d.note = std::move(note);
  return make(std::move(d));
}

}  // namespace iotrace::model
