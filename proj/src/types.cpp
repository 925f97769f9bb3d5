#include "lambdamu/types.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace lambdamu {

struct Type::Node {
  TypeKind kind;
  std::string name;
  std::optional<Type> from;
  std::optional<Type> to;
};

Type Type::atom(std::string name) {
  return Type(std::make_shared<const Node>(Node{TypeKind::Atom, std::move(name), std::nullopt, std::nullopt}));
}

Type Type::bottom() {
  static const Type b(std::make_shared<const Node>(Node{TypeKind::Bottom, {}, std::nullopt, std::nullopt}));
  return b;
}

Type Type::arrow(Type from, Type to) {
  return Type(std::make_shared<const Node>(Node{TypeKind::Arrow, {}, std::move(from), std::move(to)}));
}

TypeKind Type::kind() const noexcept { return node_->kind; }

const std::string& Type::atomName() const {
  if (!isAtom()) throw std::logic_error("atomName on non-atom type");
  return node_->name;
}

const Type& Type::from() const {
  if (!isArrow()) throw std::logic_error("from on non-arrow type");
  return *node_->from;
}

const Type& Type::to() const {
  if (!isArrow()) throw std::logic_error("to on non-arrow type");
  return *node_->to;
}

bool Type::operator==(const Type& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case TypeKind::Atom:
      return atomName() == other.atomName();
    case TypeKind::Bottom:
      return true;
    case TypeKind::Arrow:
      return from() == other.from() && to() == other.to();
  }
  return false;
}

std::string print(const Type& t) {
  switch (t.kind()) {
    case TypeKind::Atom:
      return t.atomName();
    case TypeKind::Bottom:
      return "_|_";
    case TypeKind::Arrow: {
      std::string lhs = print(t.from());
      if (t.from().isArrow()) lhs = "(" + lhs + ")";
      return lhs + " -> " + print(t.to());
    }
  }
  return {};
}

int arrowDepth(const Type& t) {
  if (!t.isArrow()) return 0;
  return 1 + std::max(arrowDepth(t.from()), arrowDepth(t.to()));
}

}  // namespace lambdamu
