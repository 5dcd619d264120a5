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

"""Finite convergence frames on the function lattice L = V^X.

Every filter of a finite lattice is principal, so a frame is stored as the
map m -> Lim(m) = lim ↑m over all elements of L. Elements are tuples of chain
values indexed like the carrier. Only lukasiewicz quantales are supported.

Lim(⊥) is normalized to the top element: ↑⊥ pulls back to the degenerate
filter on X, whose limit is taken to be everything.
"""

import dataclasses
import functools
import itertools
from typing import Callable, Iterator, Sequence, Tuple, Union

from absl import logging

from apxconv import cap
from apxconv import conv
from apxconv import finset
from apxconv import quantale as quantale_lib
from apxconv import utils
from apxconv import vspace

Element = Tuple[int, ...]
ElementLike = Union[Element, finset.VFunction, Sequence[int]]

# Largest X × V carrier accepted by `point_space`.
MAX_POINT_SPACE = 16


def _require_finite(q: quantale_lib.Quantale):
  if not q.is_finite:
    raise conv.PreconditionError(f'Frames need a finite chain, got {q}')


def lattice_size(carrier: finset.Carrier, q: quantale_lib.Quantale) -> int:
  return (q.n + 1)**carrier.size


def lattice_elements(carrier: finset.Carrier, q: quantale_lib.Quantale,
                     max_lattice: int = None) -> Tuple[Element, ...]:
  """All of V^X, in mixed-radix order with values from bottom to top."""
  _require_finite(q)
  utils.check_bounds(lattice=lattice_size(carrier, q),
                     max_lattice_size=max_lattice)
  return tuple(itertools.product(q.elements(), repeat=carrier.size))


def element_index(q: quantale_lib.Quantale, element: Element) -> int:
  """Position of `element` in `lattice_elements`."""
  index = 0
  for v in element:
    index = index * (q.n + 1) + (q.n - v)
  return index


def bottom_element(carrier, q) -> Element:
  return (q.bottom,) * carrier.size


def top_element(carrier, q) -> Element:
  return (q.top,) * carrier.size


def leq(q: quantale_lib.Quantale, a: Element, b: Element) -> bool:
  return all(q.leq(u, v) for u, v in zip(a, b))


def meet(q: quantale_lib.Quantale, a: Element, b: Element) -> Element:
  return tuple(q.meet2(u, v) for u, v in zip(a, b))


def join(q: quantale_lib.Quantale, a: Element, b: Element) -> Element:
  return tuple(q.join2(u, v) for u, v in zip(a, b))


def support(q: quantale_lib.Quantale, element: Element) -> int:
  """{ℓ > 0} as a bitmask."""
  return sum(1 << i for i, v in enumerate(element) if v != q.bottom)


def indicator(carrier: finset.Carrier, q: quantale_lib.Quantale,
              mask: int) -> Element:
  return finset.theta(carrier, q, mask).values


def pseudocomplement(q: quantale_lib.Quantale, element: ElementLike) -> Element:
  """ℓ* = ℓ → ⊥, computed pointwise in the product of chains."""
  return tuple(q.top if v == q.bottom else q.bottom for v in element)


def star_star(q: quantale_lib.Quantale, element: ElementLike) -> Element:
  """ℓ** = θ_{ℓ > 0}."""
  return pseudocomplement(q, pseudocomplement(q, element))


@dataclasses.dataclass(frozen=True)
class ConvFrame:
  """A convergence frame on L = V^X given by Lim(m) = lim ↑m.

  Attributes:
    carrier: The points X.
    quantale: A lukasiewicz quantale.
    limits: `limits[element_index(m)]` is Lim(m).
    name: Display name; not part of equality.
  """

  carrier: finset.Carrier
  quantale: quantale_lib.Quantale
  limits: Tuple[Element, ...]
  name: str = dataclasses.field(default='', compare=False)

  def __post_init__(self):
    q = self.quantale
    _require_finite(q)
    size = lattice_size(self.carrier, q)
    if len(self.limits) != size:
      raise ValueError(f'Expected {size} limits, got {len(self.limits)}')
    limits = [tuple(q.coerce(v) for v in m) for m in self.limits]
    if any(len(m) != self.carrier.size for m in limits):
      raise ValueError('Every limit must have one value per point')
    limits[0] = top_element(self.carrier, q)
    object.__setattr__(self, 'limits', tuple(limits))

  @classmethod
  def from_function(cls, carrier: finset.Carrier, q: quantale_lib.Quantale,
                    fn: Callable[[Element], Sequence[int]],
                    name: str = '') -> 'ConvFrame':
    return cls(carrier, q,
               tuple(tuple(fn(m)) for m in lattice_elements(carrier, q)), name)

  def elements(self) -> Tuple[Element, ...]:
    return lattice_elements(self.carrier, self.quantale)

  def lim(self, element: ElementLike) -> Element:
    return self.limits[element_index(self.quantale, tuple(element))]

  def format(self) -> str:
    fmt = lambda m: '(' + ' '.join(
        f'{x}={v}' for x, v in zip(self.carrier.elements, m)) + ')'
    return '\n'.join(f'Lim {fmt(m)} = {fmt(self.lim(m))}'
                     for m in self.elements())


def _format(frame: ConvFrame, element: Element) -> str:
  return ' '.join(f'{x}={v}' for x, v in zip(frame.carrier.elements, element))


def _lower_covers(q: quantale_lib.Quantale,
                  element: Element) -> Iterator[Element]:
  for i, v in enumerate(element):
    if v != q.bottom:
      yield element[:i] + (v + 1,) + element[i + 1:]


def validate(frame: ConvFrame) -> conv.ValidationReport:
  """Checks that Lim is antitone: m′ <= m implies Lim(m) <= Lim(m′).

  Lower covers suffice since the order of L is generated by them.

  Args:
    frame: The frame.

  Returns:
    One violation per failing covering pair.
  """
  q = frame.quantale
  violations = []
  for m in frame.elements():
    for lower in _lower_covers(q, m):
      if not leq(q, frame.lim(m), frame.lim(lower)):
        violations.append({'axiom': 'antitone', 'm': _format(frame, m),
                           'm_prime': _format(frame, lower)})
  return conv.ValidationReport(tuple(violations))


def star_star_witness(frame: ConvFrame) -> conv.Verdict:
  q = frame.quantale
  for m in frame.elements():
    if frame.lim(m) != frame.lim(star_star(q, m)):
      return conv.fail(m=_format(frame, m))
  return conv.PASS


def is_star_star_regular(frame: ConvFrame) -> bool:
  """Lim(m) = Lim(m**) for every m."""
  return star_star_witness(frame).holds


@functools.lru_cache(maxsize=64)
def support_joins(frame: ConvFrame) -> Tuple[Element, ...]:
  """J[S] = ⋁{Lim(m) : {m > 0} = S} for every support S."""
  q, c = frame.quantale, frame.carrier
  joins = [bottom_element(c, q)] * (1 << c.size)
  for m, lim in zip(frame.elements(), frame.limits):
    s = support(q, m)
    joins[s] = join(q, joins[s], lim)
  return tuple(joins)


def frame_adh(frame: ConvFrame, element: ElementLike) -> Element:
  """adh ℓ = ⋁{Lim(m) : m ∧ ℓ ≠ ⊥}; adh ⊥ = ⊥."""
  q, c = frame.quantale, frame.carrier
  s = support(q, tuple(element))
  out = bottom_element(c, q)
  for t, value in enumerate(support_joins(frame)):
    if s & t:
      out = join(q, out, value)
  return out


def centered_witness(frame: ConvFrame) -> conv.Verdict:
  q = frame.quantale
  for m in frame.elements():
    if not leq(q, m, frame_adh(frame, m)):
      return conv.fail(l=_format(frame, m))
  return conv.PASS


def is_centered(frame: ConvFrame) -> bool:
  """adh ℓ >= ℓ for every ℓ."""
  return centered_witness(frame).holds


def vcap_witness(frame: ConvFrame) -> conv.Verdict:
  report = validate(frame)
  if not report:
    return conv.Verdict(False, dict(report.violations[0]))
  regular = star_star_witness(frame)
  if not regular:
    return conv.Verdict(False, dict(regular.witness, reason='not **-regular'))
  centered = centered_witness(frame)
  if not centered:
    return conv.Verdict(False, dict(centered.witness, reason='not centered'))
  return conv.PASS


def is_vcap(frame: ConvFrame) -> bool:
  """Whether the frame comes from a space: antitone, **-regular, centered."""
  return vcap_witness(frame).holds


def lim_from_cap(space: cap.CapSpace) -> ConvFrame:
  """Lim(m) = λ({m > 0}↑), and Lim(⊥) = top."""
  q = space.quantale
  _require_finite(q)
  return ConvFrame.from_function(
      space.carrier, q, lambda m: space.table[support(q, m)], space.name)


def cap_from_lim(frame: ConvFrame) -> cap.CapSpace:
  """λ(B↑) = Lim(θ_B), for frames passing `is_vcap`."""
  verdict = vcap_witness(frame)
  if not verdict:
    raise conv.PreconditionError(
        f'Frame "{frame.name}" does not come from a space: '
        f'{dict(verdict.witness)}')
  q, c = frame.quantale, frame.carrier
  return cap.CapSpace.from_function(
      c, q, lambda b, x: frame.lim(indicator(c, q, b))[x], frame.name)


def vprap_witness(frame: ConvFrame) -> conv.Verdict:
  q = frame.quantale
  elements = frame.elements()
  for i, m1 in enumerate(elements):
    for m2 in elements[i + 1:]:
      expected = meet(q, frame.lim(m1), frame.lim(m2))
      if frame.lim(join(q, m1, m2)) != expected:
        return conv.fail(m1=_format(frame, m1), m2=_format(frame, m2))
  return conv.PASS


def is_vprap(frame: ConvFrame) -> bool:
  """Lim(m1 ∨ m2) = Lim(m1) ∧ Lim(m2) for all pairs."""
  return vprap_witness(frame).holds


def f_star(frame: ConvFrame, f: ElementLike,
           g: ElementLike) -> finset.SetFamily:
  """f★(↑g): the sets A ⊆ V with θ_A ∘ f >= g.

  Args:
    frame: The frame (fixes X and V).
    f: A function X -> V.
    g: Generator of the principal filter ↑g.

  Returns:
    The family {A : f(x) ∈ A for every x with g(x) > 0} on the chain.
  """
  q = frame.quantale
  chain = vspace.chain_carrier(q)
  positions = {v: i for i, v in enumerate(q.elements())}
  f = tuple(f)
  image = 0
  for i in finset.bits(support(q, tuple(g))):
    image |= 1 << positions[f[i]]
  return finset.SetFamily(chain, (a for a in chain.subsets()
                                  if a & image == image))


def vap_witness(frame: ConvFrame) -> conv.Verdict:
  """Checks Lim(g) <= adh f ⊘ ⋁ adh f over {g > 0}, for all f and g.

  Both sides only depend on the supports of f and g, and the largest Lim(g)
  with a given support is `support_joins`; the scan runs over pairs of
  supports.

  Args:
    frame: The frame.

  Returns:
    The verdict, with the failing supports as witness.
  """
  prap = vprap_witness(frame)
  if not prap:
    return conv.Verdict(False, dict(prap.witness, reason='not V-PrAp'))
  q, c = frame.quantale, frame.carrier
  joins = support_joins(frame)
  for s in c.nonempty_subsets():
    h = frame_adh(frame, indicator(c, q, s))
    for t in c.nonempty_subsets():
      sup = q.join(h[i] for i in finset.bits(t))
      bound = tuple(q.residuate(v, sup) for v in h)
      if not leq(q, joins[t], bound):
        return conv.fail(f_support=c.format_subset(s),
                         g_support=c.format_subset(t))
  return conv.PASS


def is_vap(frame: ConvFrame) -> bool:
  return vap_witness(frame).holds


def _down_set(q: quantale_lib.Quantale, element: Element) -> Iterator[Element]:
  return itertools.product(*(range(q.n, v - 1, -1) for v in element))


def closed_elements(frame: ConvFrame) -> Tuple[Element, ...]:
  """{ℓ ≠ ⊥ : Lim(m) <= ℓ for every ⊥ ≠ m <= ℓ}."""
  q, c = frame.quantale, frame.carrier
  bottom = bottom_element(c, q)
  logging.log_first_n(logging.WARNING,
                      'closed_elements skips m = ⊥ (Lim(⊥) is top).', 1)
  out = []
  for element in frame.elements():
    if element == bottom:
      continue
    if all(leq(q, frame.lim(m), element)
           for m in _down_set(q, element) if m != bottom):
      out.append(element)
  return tuple(out)


def point_space(space: cap.CapSpace) -> conv.FiniteConvergence:
  """The convergence on X × V identified with a space.

  (x, v) ∈ lim B↑ iff λ(p_X(B)↑)(x) > v for v below top, and
  λ(p_X(B)↑)(x) = top for v = top.

  Args:
    space: A space over a lukasiewicz quantale.

  Returns:
    The convergence on points named `x@v`, listed point by point with values
    from bottom to top.
  """
  q, c = space.quantale, space.carrier
  _require_finite(q)
  chain = q.elements()
  size = c.size * len(chain)
  if size > MAX_POINT_SPACE:
    raise utils.BoundsError(f'X × V has {size} points, more than '
                            f'{MAX_POINT_SPACE}')
  carrier = finset.Carrier(tuple(f'{x}@{q.format_value(v)}'
                                 for x in c.elements for v in chain))
  points = [(i, v) for i in range(c.size) for v in chain]

  def lim(b):
    projection = 0
    for k in finset.bits(b):
      projection |= 1 << points[k][0]
    out = 0
    for k, (i, v) in enumerate(points):
      value = space.a(projection, i)
      converges = value == q.top if v == q.top else q.lt(v, value)
      if converges:
        out |= 1 << k
    return out

  return conv.FiniteConvergence.from_function(carrier, lim)
