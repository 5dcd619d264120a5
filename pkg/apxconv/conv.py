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

"""Plain convergence spaces on finite carriers.

A convergence is stored by its limit table over principal filters only:
`limits[B]` is lim B↑ as a bitmask. Index 0 would be the degenerate filter
and holds the whole carrier.
"""

import dataclasses
from typing import Callable, List, Mapping, Optional, Tuple

from apxconv import finset


class PreconditionError(ValueError):
  """Raised when an operation is used outside of its precondition."""


@dataclasses.dataclass(frozen=True)
class Verdict:
  """A boolean answer with an optional witness of failure."""

  holds: bool
  witness: Optional[Mapping[str, str]] = None

  def __bool__(self):
    return self.holds


PASS = Verdict(True)


def fail(**witness) -> Verdict:
  return Verdict(False, {k: str(v) for k, v in witness.items()})


@dataclasses.dataclass(frozen=True)
class ValidationReport:
  """Axiom violations found by a `validate()` function."""

  violations: Tuple[Mapping[str, str], ...] = ()

  @property
  def ok(self) -> bool:
    return not self.violations

  def __bool__(self):
    return self.ok


@dataclasses.dataclass(frozen=True)
class FiniteConvergence:
  """A convergence ξ on a finite carrier, by its principal limit table."""

  carrier: finset.Carrier
  limits: Tuple[int, ...]

  def __post_init__(self):
    limits = tuple(int(m) for m in self.limits)
    if len(limits) != 1 << self.carrier.size:
      raise ValueError(f'Expected {1 << self.carrier.size} limits, got '
                       f'{len(limits)}')
    object.__setattr__(self, 'limits', (self.carrier.full,) + limits[1:])

  @classmethod
  def from_function(cls, carrier: finset.Carrier,
                    fn: Callable[[int], int]) -> 'FiniteConvergence':
    return cls(carrier, (carrier.full,) + tuple(
        fn(b) for b in carrier.nonempty_subsets()))

  def lim(self, base: int) -> int:
    return self.limits[base]

  def format(self) -> str:
    c = self.carrier
    fmt = c.format_subset
    return '\n'.join(f'lim {fmt(b)} = {fmt(self.lim(b))}'
                     for b in c.nonempty_subsets())


def validate(xi: FiniteConvergence) -> ValidationReport:
  """Checks centeredness and monotonicity of the limit table."""
  c = xi.carrier
  violations: List[Mapping[str, str]] = []
  for i in range(c.size):
    if not xi.lim(1 << i) >> i & 1:
      violations.append({'axiom': 'centered', 'x': c.elements[i]})
  for b in c.nonempty_subsets():
    for i in finset.bits(c.full & ~b):
      bigger = b | 1 << i
      if xi.lim(bigger) & ~xi.lim(b):
        violations.append({'axiom': 'monotone', 'B': c.format_subset(b),
                           'B_prime': c.format_subset(bigger)})
  return ValidationReport(tuple(violations))


def adh_set(xi: FiniteConvergence, mask: int) -> int:
  """adh A = union of lim ẏ over y ∈ A; adh ∅ = ∅."""
  out = 0
  for i in finset.bits(mask):
    out |= xi.lim(1 << i)
  return out


def is_closed(xi: FiniteConvergence, mask: int) -> bool:
  return all(xi.lim(b) & ~mask == 0 for b in finset.submasks(mask))


def is_open(xi: FiniteConvergence, mask: int) -> bool:
  return is_closed(xi, xi.carrier.full & ~mask)


def closed_sets(xi: FiniteConvergence) -> Tuple[int, ...]:
  return tuple(a for a in xi.carrier.subsets() if is_closed(xi, a))


def open_sets(xi: FiniteConvergence) -> Tuple[int, ...]:
  return tuple(a for a in xi.carrier.subsets() if is_open(xi, a))


def closure_set(xi: FiniteConvergence, mask: int) -> int:
  """cl A: iterates adh to its fixpoint (at most |X| steps)."""
  current = mask
  while True:
    nxt = adh_set(xi, current) | current
    if nxt == current:
      return current
    current = nxt


def _point_intersection(carrier: finset.Carrier,
                        point_sets: Tuple[int, ...]) -> FiniteConvergence:
  def lim(b):
    out = carrier.full
    for i in finset.bits(b):
      out &= point_sets[i]
    return out
  return FiniteConvergence.from_function(carrier, lim)


def pretop_reflection(xi: FiniteConvergence) -> FiniteConvergence:
  """S0: lim B↑ = ⋂_{y ∈ B} adh{y}."""
  c = xi.carrier
  return _point_intersection(
      c, tuple(adh_set(xi, 1 << i) for i in range(c.size)))


def topo_reflection(xi: FiniteConvergence) -> FiniteConvergence:
  """T: lim B↑ = ⋂_{y ∈ B} cl{y}."""
  c = xi.carrier
  return _point_intersection(
      c, tuple(closure_set(xi, 1 << i) for i in range(c.size)))


def is_pretopological(xi: FiniteConvergence) -> bool:
  return pretop_reflection(xi) == xi


def is_topological(xi: FiniteConvergence) -> bool:
  if not is_pretopological(xi):
    return False
  return all(adh_set(xi, adh_set(xi, a)) == adh_set(xi, a)
             for a in xi.carrier.subsets())


def finer_than(xi: FiniteConvergence, tau: FiniteConvergence) -> bool:
  """Whether every limit of ξ is a limit in τ (lim_ξ ⊆ lim_τ)."""
  finset.check_same_carrier(xi.carrier, tau.carrier)
  return all(xi.lim(b) & ~tau.lim(b) == 0
             for b in xi.carrier.nonempty_subsets())


def continuity_witness(f: finset.PointMap, xi: FiniteConvergence,
                       tau: FiniteConvergence) -> Verdict:
  finset.check_same_carrier(f.domain, xi.carrier)
  finset.check_same_carrier(f.codomain, tau.carrier)
  for b in xi.carrier.nonempty_subsets():
    target = tau.lim(f.image(b))
    for i in finset.bits(xi.lim(b)):
      if not target >> f(i) & 1:
        return fail(B=xi.carrier.format_subset(b), x=xi.carrier.elements[i])
  return PASS


def continuous(f: finset.PointMap, xi: FiniteConvergence,
               tau: FiniteConvergence) -> bool:
  """f(x) ∈ lim_τ f(B)↑ whenever x ∈ lim_ξ B↑."""
  return continuity_witness(f, xi, tau).holds
