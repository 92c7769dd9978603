#pragma once

#include "cactus/cells.hpp"

namespace cactus {

// Presentation read off the 2-skeleton of the double cover at the identity 0-cell: one
// generator per incident 1-cell, one relator per incident 2-cell boundary, plus involutions.
inline Presentation derive_presentation(const CellComplex& cx) {
  if (cx.cover != Cover::double_cover) throw DomainError("derive_presentation: needs the double cover");
  if (cx.max_dim >= 0 && cx.max_dim < 2) throw DomainError("derive_presentation: needs cells up to dimension 2");
  Skeleton sk = two_skeleton(cx, identity_zero_cell(cx));
  Presentation P;
  P.n = cx.n;
  P.a = cx.a;
  P.variant = PresVariant::oriented;
  P.classical = cx.a <= 2;
  std::set<GenSym> gens;
  for (const OneCell& e : sk.one_cells)
    if (!gens.insert(e.label).second) throw StructuralError("two 1-cells at the basepoint share a label");
  P.generators.assign(gens.begin(), gens.end());
  for (GenSym g : P.generators) P.relators.push_back(word({g, g}));
  for (const TwoCell& f : sk.two_cells) {
    for (const Letter& l : f.word)
      if (!gens.count(l.g)) throw StructuralError("2-cell boundary uses a generator without a 1-cell at the basepoint");
    P.relators.push_back(f.word);
  }
  return P;
}

}  // namespace cactus
