#include "iotrace/docgen/io_table.hpp"

namespace iotrace::docgen {

using model::Value;

namespace {

constexpr const char* kFirstItemOnly = "(first item only)";
// Em dash: a return value has no "before".
constexpr const char* kNoValue = "\xe2\x80\x94";

const Value* pointee_of(const Value* v) {
  if (v == nullptr) return nullptr;
  const auto* p = v->get_if<model::Pointer>();
  if (p == nullptr || !p->pointee) return nullptr;
  return &**p->pointee;
}

const std::vector<model::NamedValue>* members_of(const Value* v) {
  if (v == nullptr) return nullptr;
  if (const auto* s = v->get_if<model::StructVal>()) return &s->fields;
  if (const auto* u = v->get_if<model::UnionVal>()) return &u->interpretations;
  return nullptr;
}

class Flattener {
 public:
  explicit Flattener(std::vector<IOTableRow>& rows) : rows_(rows) {}

  void emit(const std::string& name, const Value* before, const Value* after, unsigned depth,
            std::optional<std::size_t> parent, const std::string& note = {}) {
    if (before && after && before->data.index() != after->data.index()) {
      throw ShapeMismatch("'" + name + "' changes kind between entry and exit");
    }
    const Value* any = before ? before : after;
    if (any == nullptr) return;
    if (any->is<model::ArrayHead>()) {
      auto first = [](const Value* v) -> const Value* {
        return v ? &*v->as<model::ArrayHead>().first : nullptr;
      };
      emit(name + "[0]", first(before), first(after), depth, parent, kFirstItemOnly);
      return;
    }

    IOTableRow row;
    row.name = name;
    row.depth = depth;
    row.before = before ? model::display_text(*before) : std::string();
    row.after = after ? model::display_text(*after) : std::string();
    row.note = note;
    row.parent = parent;
    const std::size_t index = rows_.size();
    rows_.push_back(std::move(row));
    if (parent) rows_[*parent].collapsible = true;

    if (any->is<model::Pointer>()) {
      const Value* pb = pointee_of(before);
      const Value* pa = pointee_of(after);
      const Value* p = pb ? pb : pa;
      if (p == nullptr || p->is<model::CString>()) return;
      if (members_of(p)) {
        members(name + "->", pb, pa, 0, depth + 1, index);
      } else if (p->is<model::ArrayHead>()) {
        emit("(*" + name + ")", pb, pa, depth + 1, index);
      } else {
        emit("*" + name, pb, pa, depth + 1, index);
      }
    } else if (any->is<model::StructVal>()) {
      members(name + ".", before, after, 0, depth + 1, index);
    } else if (any->is<model::UnionVal>()) {
      // The first interpretation is already shown inline.
      members(name + ".", before, after, 1, depth + 1, index);
    }
  }

 private:
  void members(const std::string& prefix, const Value* before, const Value* after,
               std::size_t skip, unsigned depth, std::size_t parent) {
    const auto* mb = members_of(before);
    const auto* ma = members_of(after);
    if (mb && ma && mb->size() != ma->size()) {
      throw ShapeMismatch("'" + prefix + "' has different members at entry and exit");
    }
    const auto* m = mb ? mb : ma;
    if (m == nullptr) return;
    for (std::size_t i = skip; i < m->size(); ++i) {
      const std::string& field = (*m)[i].name;
      if (mb && ma && (*mb)[i].name != (*ma)[i].name) {
        throw ShapeMismatch("member " + std::to_string(i) + " of '" + prefix + "' is renamed");
      }
      emit(prefix + field, mb ? &*(*mb)[i].value : nullptr, ma ? &*(*ma)[i].value : nullptr,
           depth, parent);
    }
  }

  std::vector<IOTableRow>& rows_;
};

}  // namespace

void flatten_pair(const std::string& name, const Value* before, const Value* after,
                  std::vector<IOTableRow>& rows) {
  Flattener(rows).emit(name, before, after, 0, std::nullopt);
}

std::vector<IOTableRow> flatten_example(const model::IOExample& example) {
  const model::CallRecord& rec = example.record;
  if (!rec.outputs.empty() && rec.outputs.size() != rec.inputs.size()) {
    throw ShapeMismatch(rec.function + ": entry and exit parameter counts differ");
  }
  std::vector<IOTableRow> rows;
  for (std::size_t i = 0; i < rec.inputs.size(); ++i) {
    const auto& in = rec.inputs[i];
    const Value* out = nullptr;
    if (i < rec.outputs.size()) {
      if (rec.outputs[i].name != in.name) {
        throw ShapeMismatch(rec.function + ": parameter " + std::to_string(i) +
                            " is named differently at exit");
      }
      out = &*rec.outputs[i].value;
    }
    flatten_pair(in.name, &*in.value, out, rows);
  }
  if (rec.return_value && !rec.return_value->is<model::Void>()) {
    const std::size_t at = rows.size();
    flatten_pair("return", nullptr, &*rec.return_value, rows);
    rows[at].before = kNoValue;
  }
  return rows;
}

}  // namespace iotrace::docgen
