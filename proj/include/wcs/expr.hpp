#pragma once

#include <memory>
#include <string>

namespace wcs {

// One-variable arithmetic expressions used by model config files.
//
// Grammar (whitespace ignored):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ('+'|'-') factor | power
//   power  := atom ('^' factor)?
//   atom   := number | 't' | 'pi' | name '(' expr {',' expr} ')' | '(' expr ')'
// Functions: sin cos sinh cosh exp log pow(x,y).
//
// Derivatives are not generated; config files supply f, f', f'' explicitly.
class Expr {
 public:
  struct Node;

  Expr() = default;
  static Expr parse(const std::string& src);  // throws std::invalid_argument

  double eval(double t) const;
  bool empty() const { return root_ == nullptr; }
  const std::string& source() const { return src_; }

 private:
  std::shared_ptr<const Node> root_;
  std::string src_;
};

}  // namespace wcs
