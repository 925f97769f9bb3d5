#pragma once

#include <memory>
#include <string>

namespace lambdamu {

enum class TypeKind : unsigned char { Atom, Bottom, Arrow };

// Simple type: atoms, ⊥ and right-nested arrows. Immutable, shared.
class Type {
 public:
  Type() = delete;

  static Type atom(std::string name);
  static Type bottom();
  static Type arrow(Type from, Type to);

  TypeKind kind() const noexcept;
  bool isAtom() const noexcept { return kind() == TypeKind::Atom; }
  bool isBottom() const noexcept { return kind() == TypeKind::Bottom; }
  bool isArrow() const noexcept { return kind() == TypeKind::Arrow; }

  const std::string& atomName() const;
  const Type& from() const;
  const Type& to() const;

  bool operator==(const Type& other) const;

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Arrows print right-associated; "_|_" is ⊥.
std::string print(const Type& t);

// Arrow nesting depth: 0 for atoms and ⊥.
int arrowDepth(const Type& t);

}  // namespace lambdamu
