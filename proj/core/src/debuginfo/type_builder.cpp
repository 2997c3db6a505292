#include "type_builder.hpp"

#include "dwarf_constants.hpp"

namespace iotrace::debuginfo {

using model::BaseEncoding;
using model::TypeDesc;
using model::TypeKind;

namespace {

constexpr unsigned kMaxDepth = 200;

bool is_qualifier(std::uint16_t tag) {
  return tag == dw::TAG_const_type || tag == dw::TAG_volatile_type ||
         tag == dw::TAG_restrict_type || tag == dw::TAG_atomic_type;
}

const char* qualifier_keyword(std::uint16_t tag) {
  switch (tag) {
    case dw::TAG_const_type: return "const";
    case dw::TAG_volatile_type: return "volatile";
    case dw::TAG_restrict_type: return "restrict";
    case dw::TAG_atomic_type: return "_Atomic";
    default: return "";
  }
}

std::string spaced(std::string head, const std::string& inner) {
  if (inner.empty()) return head;
  return head + " " + inner;
}

}  // namespace

const TypeDesc* TypeBuilder::build(DieRef die) { return build_at(die, 0); }

const TypeDesc* TypeBuilder::type_of(DieRef owner) {
  return build(reader_.ref(owner, dw::AT_type));
}

const TypeDesc* TypeBuilder::build_at(DieRef die, unsigned depth) {
  if (!die) return arena_.void_type();
  auto it = cache_.find(die.die->offset);
  if (it != cache_.end()) return it->second;
  if (depth > kMaxDepth) return arena_.opaque("", 0, "type nesting too deep");
  const TypeDesc* result = build_uncached(die, depth);
  cache_.emplace(die.die->offset, result);
  return result;
}

const TypeDesc* TypeBuilder::build_uncached(DieRef die, unsigned depth) {
  const std::uint16_t tag = die.die->tag();
  const std::string name(reader_.name(die).value_or(""));
  const std::uint64_t byte_size = reader_.udata(die, dw::AT_byte_size).value_or(0);

  if (is_qualifier(tag)) return build_at(reader_.ref(die, dw::AT_type), depth + 1);

  switch (tag) {
    case dw::TAG_base_type: {
      const auto enc = reader_.udata(die, dw::AT_encoding).value_or(0);
      BaseEncoding e;
      switch (enc) {
        case dw::ATE_signed: e = BaseEncoding::SignedInt; break;
        case dw::ATE_unsigned:
        case dw::ATE_address:
        case dw::ATE_UTF: e = BaseEncoding::UnsignedInt; break;
        case dw::ATE_signed_char: e = BaseEncoding::SignedChar; break;
        case dw::ATE_unsigned_char: e = BaseEncoding::UnsignedChar; break;
        case dw::ATE_boolean: e = BaseEncoding::Bool; break;
        case dw::ATE_float: e = BaseEncoding::Float; break;
        default:
          return arena_.opaque(name, byte_size, "unsupported base type encoding");
      }
      if ((e == BaseEncoding::SignedChar || e == BaseEncoding::UnsignedChar) && byte_size != 1) {
        e = e == BaseEncoding::SignedChar ? BaseEncoding::SignedInt : BaseEncoding::UnsignedInt;
      }
      if (byte_size == 0 || byte_size > 16) {
        return arena_.opaque(name, byte_size, "unsupported base type size");
      }
      return arena_.base(name, byte_size, e);
    }

    case dw::TAG_pointer_type:
    case dw::TAG_reference_type:
    case dw::TAG_rvalue_reference_type: {
      TypeDesc* node = arena_.make({});
      node->kind = TypeKind::Pointer;
      node->byte_size = model::kWordSize;
      cache_.emplace(die.die->offset, node);
      DieRef target = reader_.ref(die, dw::AT_type);
      DieRef bare = target;
      for (unsigned hops = 0; bare && hops < 16; ++hops) {
        const auto t = bare.die->tag();
        if (!is_qualifier(t) && t != dw::TAG_typedef) break;
        bare = reader_.ref(bare, dw::AT_type);
      }
      if (bare && bare.die->tag() == dw::TAG_subroutine_type) {
        node->kind = TypeKind::FunctionPointer;
        node->name = declarator(die, "");
        return node;
      }
      const TypeDesc* t = build_at(target, depth + 1);
      node->target = t->kind == TypeKind::Void ? nullptr : t;
      return node;
    }

    case dw::TAG_typedef: {
      TypeDesc* node = arena_.make({});
      node->kind = TypeKind::Typedef;
      node->name = name;
      cache_.emplace(die.die->offset, node);
      node->target = build_at(reader_.ref(die, dw::AT_type), depth + 1);
      node->byte_size = model::strip_typedefs(*node->target).byte_size;
      return node;
    }

    case dw::TAG_structure_type:
    case dw::TAG_class_type:
    case dw::TAG_union_type: {
      const bool is_union = tag == dw::TAG_union_type;
      if (reader_.flag(die, dw::AT_declaration)) {
        return arena_.opaque(tag_name(die), 0, "incomplete type");
      }
      TypeDesc* node = arena_.make({});
      node->kind = is_union ? TypeKind::Union : TypeKind::Struct;
      node->name = name;
      node->byte_size = byte_size;
      cache_.emplace(die.die->offset, node);
      fill_members(*node, die, depth);
      return node;
    }

    case dw::TAG_enumeration_type: {
      if (reader_.flag(die, dw::AT_declaration)) {
        return arena_.opaque(tag_name(die), 0, "incomplete type");
      }
      TypeDesc* node = arena_.make({});
      node->kind = TypeKind::Enum;
      node->name = name;
      node->byte_size = byte_size;
      cache_.emplace(die.die->offset, node);
      bool any_negative = false;
      const TypeDesc* underlying = nullptr;
      if (DieRef u = reader_.ref(die, dw::AT_type)) underlying = build_at(u, depth + 1);
      const bool unsigned_underlying =
          underlying && model::strip_typedefs(*underlying).kind == TypeKind::Base &&
          model::strip_typedefs(*underlying).encoding == BaseEncoding::UnsignedInt;
      for (DieRef child : reader_.children(die)) {
        if (child.die->tag() != dw::TAG_enumerator) continue;
        auto v = reader_.attr(*child.unit, *child.die, dw::AT_const_value);
        model::Enumerator e;
        e.name = std::string(reader_.name(child).value_or(""));
        if (v) e.value = unsigned_underlying ? static_cast<std::int64_t>(v->u) : v->s;
        any_negative = any_negative || e.value < 0;
        node->enumerators.push_back(std::move(e));
      }
      if (underlying == nullptr || model::strip_typedefs(*underlying).kind != TypeKind::Base) {
        const std::uint64_t size = byte_size ? byte_size : 4;
        underlying = arena_.base(any_negative ? "int" : "unsigned int", size,
                                 any_negative ? BaseEncoding::SignedInt : BaseEncoding::UnsignedInt);
      }
      node->target = underlying;
      if (node->byte_size == 0) node->byte_size = underlying->byte_size;
      return node;
    }

    case dw::TAG_array_type: {
      TypeDesc* node = arena_.make({});
      node->kind = TypeKind::Array;
      cache_.emplace(die.die->offset, node);
      std::vector<std::optional<std::uint64_t>> dims;
      for (DieRef child : reader_.children(die)) {
        if (child.die->tag() != dw::TAG_subrange_type) continue;
        if (auto c = reader_.udata(child, dw::AT_count)) {
          dims.emplace_back(*c);
        } else if (auto ub = reader_.attr(*child.unit, *child.die, dw::AT_upper_bound);
                   ub && ub->block.empty()) {
          // An upper bound of -1 marks a zero-length (flexible) array.
          dims.emplace_back(ub->s < 0 ? 0 : ub->u + 1);
        } else {
          dims.emplace_back(std::nullopt);
        }
      }
      if (dims.empty()) dims.emplace_back(std::nullopt);
      const TypeDesc* elem = build_at(reader_.ref(die, dw::AT_type), depth + 1);
      for (std::size_t i = dims.size(); i-- > 1;) elem = arena_.array_of(elem, dims[i]);
      node->target = elem;
      node->count = dims.front();
      if (node->count) node->byte_size = model::strip_typedefs(*elem).byte_size * *node->count;
      return node;
    }

    case dw::TAG_subroutine_type:
      return arena_.opaque(declarator(die, ""), 0, "function type");

    case dw::TAG_unspecified_type:
      return arena_.opaque(name, byte_size, "unspecified type");

    default:
      warnings_.push_back("unsupported type tag 0x" + std::to_string(tag) + " for '" + name + "'");
      return arena_.opaque(name, byte_size, "unsupported type");
  }
}

void TypeBuilder::fill_members(TypeDesc& node, DieRef die, unsigned depth) {
  unsigned anon = 0;
  for (DieRef child : reader_.children(die)) {
    if (child.die->tag() != dw::TAG_member) continue;
    model::Member m;
    m.name = std::string(reader_.name(child).value_or(""));
    if (m.name.empty()) m.name = "<anon." + std::to_string(anon++) + ">";
    m.type = build_at(reader_.ref(child, dw::AT_type), depth + 1);
    if (auto loc = reader_.attr(*child.unit, *child.die, dw::AT_data_member_location)) {
      if (loc->block.empty()) {
        m.byte_offset = loc->u;
      } else {
        ByteReader r(loc->block);
        try {
          const std::uint8_t op = r.u8();
          if (op == dw::OP_plus_uconst || op == dw::OP_constu) m.byte_offset = r.uleb128();
        } catch (const FormatError&) {
        }
      }
    }
    if (auto bits = reader_.udata(child, dw::AT_bit_size)) {
      m.bit_size = static_cast<std::uint32_t>(*bits);
      if (auto dbo = reader_.udata(child, dw::AT_data_bit_offset)) m.byte_offset = *dbo / 8;
    }
    node.members.push_back(std::move(m));
  }
}

std::string TypeBuilder::tag_name(DieRef die) const {
  const std::string name(reader_.name(die).value_or(""));
  switch (die.die->tag()) {
    case dw::TAG_structure_type:
    case dw::TAG_class_type:
      return "struct " + (name.empty() ? std::string("{...}") : name);
    case dw::TAG_union_type:
      return "union " + (name.empty() ? std::string("{...}") : name);
    case dw::TAG_enumeration_type:
      return "enum " + (name.empty() ? std::string("{...}") : name);
    default:
      return name.empty() ? std::string("?") : name;
  }
}

std::string TypeBuilder::declarator(DieRef type, const std::string& inner) const {
  if (!type) return spaced("void", inner);
  const std::uint16_t tag = type.die->tag();

  if (is_qualifier(tag)) {
    std::string quals;
    DieRef cur = type;
    for (unsigned hops = 0; cur && is_qualifier(cur.die->tag()) && hops < 16; ++hops) {
      const std::string kw = qualifier_keyword(cur.die->tag());
      if (quals.find(kw) == std::string::npos) quals += (quals.empty() ? "" : " ") + kw;
      cur = reader_.ref(cur, dw::AT_type);
    }
    if (cur && cur.die->tag() == dw::TAG_pointer_type) return declarator(cur, spaced(quals, inner));
    return quals + " " + declarator(cur, inner);
  }

  switch (tag) {
    case dw::TAG_pointer_type:
    case dw::TAG_reference_type:
    case dw::TAG_rvalue_reference_type: {
      DieRef target = reader_.ref(type, dw::AT_type);
      std::string in = (tag == dw::TAG_pointer_type ? "*" : "&") + inner;
      DieRef bare = target;
      while (bare && is_qualifier(bare.die->tag())) bare = reader_.ref(bare, dw::AT_type);
      if (bare && (bare.die->tag() == dw::TAG_array_type ||
                   bare.die->tag() == dw::TAG_subroutine_type)) {
        in = "(" + in + ")";
      }
      return declarator(target, in);
    }
    case dw::TAG_array_type: {
      std::string suffix;
      for (DieRef child : reader_.children(type)) {
        if (child.die->tag() != dw::TAG_subrange_type) continue;
        std::string n;
        if (auto c = reader_.udata(child, dw::AT_count)) {
          n = std::to_string(*c);
        } else if (auto ub = reader_.attr(*child.unit, *child.die, dw::AT_upper_bound);
                   ub && ub->block.empty() && ub->s >= 0) {
          n = std::to_string(ub->u + 1);
        }
        suffix += "[" + n + "]";
      }
      if (suffix.empty()) suffix = "[]";
      return declarator(reader_.ref(type, dw::AT_type), inner + suffix);
    }
    case dw::TAG_subroutine_type:
      return declarator(reader_.ref(type, dw::AT_type),
                        inner + "(" + parameter_list(type, false) + ")");
    default:
      return spaced(tag_name(type), inner);
  }
}

std::string TypeBuilder::parameter_list(DieRef owner, bool name_params) const {
  std::string out;
  bool any = false;
  for (DieRef child : reader_.children(owner)) {
    const auto tag = child.die->tag();
    if (tag == dw::TAG_formal_parameter) {
      DieRef source = child;
      if (!reader_.has_attr(*child.unit, *child.die, dw::AT_type)) {
        if (DieRef origin = reader_.ref(child, dw::AT_abstract_origin)) source = origin;
      }
      std::string pname;
      if (name_params) pname = std::string(reader_.name(source).value_or(""));
      out += (any ? ", " : "") + declarator(reader_.ref(source, dw::AT_type), pname);
      any = true;
    } else if (tag == dw::TAG_unspecified_parameters) {
      out += any ? ", ..." : "...";
      any = true;
    }
  }
  if (!any && reader_.flag(owner, dw::AT_prototyped)) return "void";
  return out;
}

}  // namespace iotrace::debuginfo
