#ifndef MUMALL_UNIFY_HPP
#define MUMALL_UNIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "mumall/term.hpp"

namespace mumall {

// Ordered set of eigenvariable names, all of type iota.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<std::string> names);

  bool contains(const std::string& name) const;
  void add(const std::string& name);  // no-op if present
  const std::vector<std::string>& names() const { return names_; }
  bool empty() const { return names_.empty(); }
  std::size_t size() const { return names_.size(); }

  // A name not occurring in the signature, derived from `hint`.
  std::string fresh(const std::string& hint) const;

 private:
  std::vector<std::string> names_;
};

// First-order syntactic unification with occurs check.  Inputs must be
// lambda-free terms of type iota.  Returns an idempotent most general
// unifier, or nullopt when the terms do not unify.
std::optional<Substitution> mgu(const TermPtr& t, const TermPtr& u);

// (theta . phi)(x) = phi(theta(x))
Substitution compose(const Substitution& theta, const Substitution& phi);

// Remove dom(theta) from sigma and add back the variables free in the range.
Signature signature_update(const Signature& sigma, const Substitution& theta);

}  // namespace mumall

#endif
