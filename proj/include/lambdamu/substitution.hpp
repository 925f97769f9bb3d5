#pragma once

#include <map>

#include "lambdamu/syntax.hpp"

namespace lambdamu {

// Direction of a μ-substitution: r pushes N as an argument ([a]P becomes
// [a](P)N), l pushes it as a function ([a]P becomes [a](N)P).
enum class Side : unsigned char { R, L };

// M[x := N], capture-avoiding. Binders of M that would capture a free
// variable of N are renamed; N is never touched.
Term betaSubst(const Term& m, const LamVar& x, const Term& n);

// M[a :=_s N].
Term muSubst(const Term& m, const MuVar& a, Side s, const Term& n);

// M[a :=_r N1][a :=_r N2]...; the empty sequence is the identity.
Term muSubstSeq(const Term& m, const MuVar& a, const TermSeq& ns);

// M[a := b]: free brackets on a become brackets on b.
Term renameMu(const Term& m, const MuVar& a, const MuVar& b);

// M_a: every bracket [a]N on a free a is replaced by N.
Term alphaTranslate(const Term& m, const MuVar& a);

// (M)P1...Pn, left nested.
Term applySeq(const Term& m, const TermSeq& ps);

// True iff ps is a prefix (modulo alphaEq) of ns.
bool isInitialSubseq(const TermSeq& ps, const TermSeq& ns);

struct SimulSubst {
  std::map<LamVar, Term> lam;
  std::map<MuVar, TermSeq> mu;
};

// One traversal replacing every mapped λ-variable by its term and every
// mapped [a]U by [a](U')N̄a.
Term simulSubst(const Term& m, const SimulSubst& s);

}  // namespace lambdamu
