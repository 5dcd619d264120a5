# Copyright 2024 The apxconv Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Brute-force reference implementations for finite chains."""

from typing import Iterable, Sequence, Tuple

import numpy as np

from apxconv import cap
from apxconv import finset
from apxconv import generate
from apxconv import quantale as quantale_lib

# Largest V^X the enumerating oracles will scan.
MAX_ENUMERATION = 4096


def can_enumerate(space: cap.CapSpace) -> bool:
  q = space.quantale
  return q.is_finite and (q.n + 1)**space.carrier.size <= MAX_ENUMERATION


def continuous_functions(space: cap.CapSpace) -> Tuple[finset.VFunction, ...]:
  """Every f: X -> V passing the all-filter continuity test."""
  return tuple(f for f in generate.enumerate_functions(space.carrier,
                                                       space.quantale)
               if cap.is_continuous_to_V(space, f))


def brute_force_hull(
    space: cap.CapSpace, f: finset.VFunction,
    continuous: Sequence[finset.VFunction] = None) -> finset.VFunction:
  """The pointwise meet of all continuous g >= f."""
  if continuous is None:
    continuous = continuous_functions(space)
  q = space.quantale
  out = finset.VFunction.constant(space.carrier, q, q.top)
  for g in continuous:
    if f.leq(g):
      out = out.meet(g)
  return out


def is_approach_full_chain(space: cap.CapSpace) -> bool:
  """The diagonal condition quantified over every ε of the chain."""
  if not cap.is_prap(space):
    return False
  chain = space.quantale.elements()
  return all(cap.diagonal_witness(space, a, chain).holds
             for a in space.carrier.nonempty_subsets())


def adh_continuity_matches_diagonal(space: cap.CapSpace, mask: int) -> bool:
  """adh A is continuous iff the diagonal condition holds for A."""
  continuous = cap.is_continuous_to_V(space, cap.adh_set(space, mask))
  diagonal = cap.diagonal_witness(space, mask,
                                  space.quantale.elements()).holds
  return continuous == diagonal


def is_approach_by_matrix(space: cap.CapSpace) -> bool:
  """Pre-approach with a reflexive, ⊗-transitive singleton matrix."""
  if not cap.is_prap(space):
    return False
  q = space.quantale
  matrix = space.singleton_matrix()
  if any(matrix[i][i] != q.top for i in range(space.carrier.size)):
    return False
  m = np.array(matrix, dtype=np.int64 if q.is_finite else object)
  return bool(np.all(cap.semiring_product(q, m, m) == m))


def brute_force_adh_V(q: quantale_lib.Quantale,  # pylint: disable=invalid-name
                      values: Iterable[quantale_lib.Value],
                      v: quantale_lib.Value) -> quantale_lib.Value:
  """⋁ of λ_V over the point ultrafilters of A."""
  return q.join(q.residuate(v, a) for a in values)
