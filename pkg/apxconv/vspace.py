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

"""The approach space (V, λ_V).

λ_V(B↑)(v) = v ⊘ ⋁B and adh_V A(v) = v ⊘ ⋀A. On a finite chain the whole
space is realized as a `CapSpace`; in unit-rational mode only finite samples
of V are.
"""

from typing import Iterable, Sequence, Tuple

from apxconv import cap
from apxconv import conv
from apxconv import finset
from apxconv import quantale as quantale_lib

Value = quantale_lib.Value


def _values(q: quantale_lib.Quantale, values: Iterable) -> Tuple[Value, ...]:
  values = tuple(q.coerce(v) for v in values)
  if not values:
    raise ValueError('Expected a nonempty set of values')
  return values


def lambda_V(q: quantale_lib.Quantale, base: Iterable[Value],  # pylint: disable=invalid-name
             v: Value) -> quantale_lib.QuantaleValue:
  """λ_V(B↑)(v) = v ⊘ ⋁B for a finite nonempty base B ⊆ V."""
  base = _values(q, base)
  return quantale_lib.QuantaleValue(
      q, q.residuate(q.coerce(v), q.join(base)))


def adh_V(q: quantale_lib.Quantale, values: Iterable[Value],  # pylint: disable=invalid-name
          v: Value) -> quantale_lib.QuantaleValue:
  """adh_V A(v) = v ⊘ ⋀A for a finite nonempty A ⊆ V."""
  values = _values(q, values)
  return quantale_lib.QuantaleValue(
      q, q.residuate(q.coerce(v), q.meet(values)))


def chain_carrier(q: quantale_lib.Quantale) -> finset.Carrier:
  """The points of a finite chain, named by their values, bottom first."""
  return sample_carrier(q, q.elements())


def sample_carrier(q: quantale_lib.Quantale,
                   values: Sequence[Value]) -> finset.Carrier:
  return finset.Carrier(tuple(q.format_value(v) for v in values))


def sample_as_cap(q: quantale_lib.Quantale, values: Iterable[Value],
                  name: str = '') -> cap.CapSpace:
  """The subspace of (V, λ_V) on a finite set of values.

  Args:
    q: The value quantale.
    values: Distinct values of V; listed from bottom to top in the carrier.
    name: Display name.

  Returns:
    The space a(B, v) = v ⊘ ⋁B.
  """
  values = q.sort(set(_values(q, values)))
  carrier = sample_carrier(q, values)
  return cap.CapSpace.from_function(
      carrier, q,
      lambda b, x: q.residuate(
          values[x], q.join(values[i] for i in finset.bits(b))),
      name or f'V[{q}]')


def v_as_cap(q: quantale_lib.Quantale) -> cap.CapSpace:
  """(V, λ_V) on the whole chain of a lukasiewicz quantale."""
  if not q.is_finite:
    raise ValueError(f'{q} has an infinite carrier; use sample_as_cap')
  return sample_as_cap(q, q.elements())


def _sample_index(space: cap.CapSpace) -> dict:
  q = space.quantale
  return {q.parse_value(name): i for i, name in
          enumerate(space.carrier.elements)}


def closure_maps(space: cap.CapSpace):
  """The closure functions cl C, C ⊆ X, as point maps into a sample of V.

  Args:
    space: The space (X, λ).

  Returns:
    A pair (sample, maps) where `sample` is the subspace of V on the values
    taken by the closure functions and `maps` lists (cl C as a `PointMap`,
    sample) pairs ready for `cap.initial_structure`.
  """
  q = space.quantale
  closures = [cap.closure_fn(space, c) for c in space.carrier.subsets()]
  sample = sample_as_cap(q, {v for f in closures for v in f.values})
  index = _sample_index(sample)
  maps = [(finset.PointMap(space.carrier, sample.carrier,
                           tuple(index[v] for v in f.values)), sample)
          for f in closures]
  return sample, maps


def initial_from_closures(space: cap.CapSpace) -> cap.CapSpace:
  """The initial structure on X of the closure functions into V.

  It coincides with `space` for approach spaces and with its approach
  reflection in general.

  Args:
    space: The space (X, λ).

  Returns:
    λ(B↑)(x) = ⋀_C λ_V(cl C(B)↑)(cl C(x)).
  """
  _, maps = closure_maps(space)
  return cap.initial_structure(space.carrier, maps, space.name)


def initial_inequality_witness(space: cap.CapSpace) -> conv.Verdict:
  """Checks λ_V(cl C(B)↑)(cl C(x)) >= cl C(x), with equality if C meets B."""
  q, c = space.quantale, space.carrier
  for mask in c.subsets():
    closure = cap.closure_fn(space, mask)
    for b in c.nonempty_subsets():
      image = [closure[i] for i in finset.bits(b)]
      for x in range(c.size):
        value = lambda_V(q, image, closure[x]).value
        if not q.leq(closure[x], value) or (
            mask & b and value != closure[x]):
          return conv.fail(C=c.format_subset(mask), B=c.format_subset(b),
                           x=c.elements[x])
  return conv.PASS


def diagonal_witness(q: quantale_lib.Quantale) -> conv.Verdict:
  """Checks (v ⊘ ⋀A) >= (v ⊘ ⋀A^(ε)) ⊗ ε over a whole finite chain."""
  chain = q.elements()
  carrier = chain_carrier(q)
  for mask in carrier.nonempty_subsets():
    values = [chain[i] for i in finset.bits(mask)]
    adh = [adh_V(q, values, v).value for v in chain]
    for eps in chain:
      level = [w for w, a in zip(chain, adh) if q.leq(eps, a)]
      for v, a in zip(chain, adh):
        if not q.leq(q.tensor(adh_V(q, level, v).value, eps), a):
          return conv.fail(A=carrier.format_subset(mask), epsilon=eps, v=v)
  return conv.PASS
