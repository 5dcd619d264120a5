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

"""Finite carriers, set families, principal filters and V-valued functions.

Subsets of a carrier are bitmasks over its ordered elements: bit `i` stands
for `carrier.elements[i]`. On a finite carrier every proper filter is
principal, so a filter is stored by its base `B` (standing for B↑) and every
ultrafilter is a point ultrafilter.
"""

import dataclasses
import re
from typing import (Callable, FrozenSet, Iterable, Iterator, Mapping,
                    Sequence, Tuple)

from apxconv import quantale as quantale_lib

_NAME_RE = re.compile(r'^[^\s{},=:#]+$')


class CarrierMismatchError(ValueError):
  """Raised when objects living on different carriers are combined."""


def popcount(mask: int) -> int:
  return bin(mask).count('1')


def bits(mask: int) -> Iterator[int]:
  """Yields the indices of the set bits of `mask`, lowest first."""
  i = 0
  while mask:
    if mask & 1:
      yield i
    mask >>= 1
    i += 1


def submasks(mask: int) -> Iterator[int]:
  """Yields all nonempty submasks of `mask`."""
  sub = mask
  while sub:
    yield sub
    sub = (sub - 1) & mask


@dataclasses.dataclass(frozen=True)
class Carrier:
  """An ordered, nonempty set of named points."""

  elements: Tuple[str, ...]

  def __post_init__(self):
    object.__setattr__(self, 'elements', tuple(self.elements))
    if not self.elements:
      raise ValueError('A carrier needs at least one point')
    if len(set(self.elements)) != len(self.elements):
      raise ValueError(f'Duplicate point names in {self.elements}')
    for name in self.elements:
      if not _NAME_RE.match(name):
        raise ValueError(f'Invalid point name "{name}"')

  def __len__(self):
    return len(self.elements)

  @property
  def size(self) -> int:
    return len(self.elements)

  @property
  def full(self) -> int:
    return (1 << len(self.elements)) - 1

  def index(self, name: str) -> int:
    try:
      return self.elements.index(name)
    except ValueError as e:
      raise ValueError(f'Unknown point "{name}"') from e

  def mask(self, names: Iterable[str]) -> int:
    mask = 0
    for name in names:
      mask |= 1 << self.index(name)
    return mask

  def names(self, mask: int) -> Tuple[str, ...]:
    return tuple(self.elements[i] for i in bits(mask))

  def subsets(self) -> range:
    """All subsets, the empty one included."""
    return range(1 << len(self.elements))

  def nonempty_subsets(self) -> range:
    return range(1, 1 << len(self.elements))

  def format_subset(self, mask: int) -> str:
    return '{' + ','.join(self.names(mask)) + '}'

  def parse_subset(self, text: str) -> int:
    """Parses the literal syntax `{p,q}`."""
    text = text.strip()
    if not (text.startswith('{') and text.endswith('}')):
      raise ValueError(f'Expected a subset literal like {{p,q}}, got "{text}"')
    inner = text[1:-1].strip()
    if not inner:
      return 0
    return self.mask(name.strip() for name in inner.split(','))


def check_same_carrier(*carriers: Carrier):
  if len(set(carriers)) != 1:
    raise CarrierMismatchError(
        f'Expected a single carrier, got {[c.elements for c in carriers]}')


@dataclasses.dataclass(frozen=True)
class SetFamily:
  """A family of subsets of a carrier, members stored as bitmasks."""

  carrier: Carrier
  members: FrozenSet[int]

  def __post_init__(self):
    object.__setattr__(self, 'members', frozenset(self.members))
    for member in self.members:
      if member & ~self.carrier.full:
        raise ValueError(f'Member {member:#b} is not a subset of the carrier')

  def __contains__(self, mask: int) -> bool:
    return mask in self.members

  def __iter__(self):
    return iter(sorted(self.members))

  def __len__(self):
    return len(self.members)


def grill(family: SetFamily) -> SetFamily:
  """Returns {B : B ∩ A ≠ ∅ for every A in the family}."""
  return SetFamily(family.carrier, (
      b for b in family.carrier.subsets()
      if all(b & a for a in family.members)))


def mesh(a: SetFamily, b: SetFamily) -> bool:
  check_same_carrier(a.carrier, b.carrier)
  return all(x & y for x in a.members for y in b.members)


def isotone_hull(family: SetFamily) -> SetFamily:
  return SetFamily(family.carrier, (
      b for b in family.carrier.subsets()
      if any(a & ~b == 0 for a in family.members)))


def finer(a: SetFamily, b: SetFamily) -> bool:
  """Whether `a` is finer than `b`, i.e. b ⊆ a↑."""
  check_same_carrier(a.carrier, b.carrier)
  return all(any(x & ~y == 0 for x in a.members) for y in b.members)


@dataclasses.dataclass(frozen=True)
class PrincipalFilter:
  """The proper filter B↑ of all supersets of a nonempty base B."""

  carrier: Carrier
  base: int

  def __post_init__(self):
    if not self.base or self.base & ~self.carrier.full:
      raise ValueError(
          f'Invalid filter base {self.base:#b} on {self.carrier.elements}')

  def __str__(self):
    return f'{self.carrier.format_subset(self.base)}↑'

  @classmethod
  def generated_by(cls, carrier: Carrier,
                   base: Iterable[int]) -> 'PrincipalFilter':
    """Canonicalizes the filter generated by a finite filter-base.

    The completion by finite intersections of a finite family has a least
    member, the intersection of the whole family, which is the base.

    Args:
      carrier: Carrier of the filter.
      base: Nonempty family of subsets (bitmasks).

    Returns:
      The principal filter of the intersection.

    Raises:
      ValueError: If the family is empty or its intersection is empty (the
        generated filter would not be proper).
    """
    masks = tuple(base)
    if not masks:
      raise ValueError('A filter base needs at least one member')
    meet = carrier.full
    for mask in masks:
      meet &= mask
    if not meet:
      raise ValueError('The filter base generates the degenerate filter')
    return cls(carrier, meet)

  def __contains__(self, mask: int) -> bool:
    return self.base & ~mask == 0

  def members(self) -> SetFamily:
    return SetFamily(self.carrier, (
        b for b in self.carrier.subsets() if b in self))

  def finer_than(self, other: 'PrincipalFilter') -> bool:
    check_same_carrier(self.carrier, other.carrier)
    return other.base in self


def point_ultrafilter(carrier: Carrier, index: int) -> PrincipalFilter:
  return PrincipalFilter(carrier, 1 << index)


def ultrafilters_over(carrier: Carrier,
                      mask: int) -> Tuple[PrincipalFilter, ...]:
  """Returns βA, which on a finite carrier is {ẏ : y ∈ A}."""
  if not mask:
    raise ValueError('No proper ultrafilter contains the empty set')
  return tuple(point_ultrafilter(carrier, i) for i in bits(mask))


@dataclasses.dataclass(frozen=True)
class PointMap:
  """A total map between two carriers, stored by the indices of images."""

  domain: Carrier
  codomain: Carrier
  images: Tuple[int, ...]

  def __post_init__(self):
    object.__setattr__(self, 'images', tuple(int(i) for i in self.images))
    if len(self.images) != self.domain.size:
      raise ValueError(f'Map has {len(self.images)} images for '
                       f'{self.domain.size} points')
    if any(not 0 <= i < self.codomain.size for i in self.images):
      raise ValueError(f'Map images {self.images} leave the codomain')

  @classmethod
  def from_names(cls, domain: Carrier, codomain: Carrier,
                 mapping: Mapping[str, str]) -> 'PointMap':
    missing = set(domain.elements) - set(mapping)
    if missing:
      raise ValueError(f'Map is not total; missing {sorted(missing)}')
    return cls(domain, codomain,
               tuple(codomain.index(mapping[x]) for x in domain.elements))

  @classmethod
  def identity(cls, carrier: Carrier) -> 'PointMap':
    return cls(carrier, carrier, tuple(range(carrier.size)))

  @classmethod
  def constant(cls, domain: Carrier, codomain: Carrier,
               target: int) -> 'PointMap':
    return cls(domain, codomain, (target,) * domain.size)

  def __call__(self, index: int) -> int:
    return self.images[index]

  def image(self, mask: int) -> int:
    out = 0
    for i in bits(mask):
      out |= 1 << self.images[i]
    return out

  def preimage(self, mask: int) -> int:
    out = 0
    for i, j in enumerate(self.images):
      if mask >> j & 1:
        out |= 1 << i
    return out

  def format(self) -> str:
    return ' '.join(f'{x}->{self.codomain.elements[j]}'
                    for x, j in zip(self.domain.elements, self.images))


@dataclasses.dataclass(frozen=True)
class VFunction:
  """A V-valued function on a carrier (an element of V^X)."""

  carrier: Carrier
  quantale: quantale_lib.Quantale
  values: Tuple[quantale_lib.Value, ...]

  def __post_init__(self):
    values = tuple(self.quantale.coerce(v) for v in self.values)
    if len(values) != self.carrier.size:
      raise ValueError(f'Expected {self.carrier.size} values, got '
                       f'{len(values)}')
    object.__setattr__(self, 'values', values)

  def __getitem__(self, index: int) -> quantale_lib.Value:
    return self.values[index]

  def __iter__(self):
    return iter(self.values)

  def __str__(self):
    return self.format()

  @classmethod
  def constant(cls, carrier: Carrier, q: quantale_lib.Quantale,
               value: quantale_lib.Value) -> 'VFunction':
    return cls(carrier, q, (value,) * carrier.size)

  @classmethod
  def from_callable(cls, carrier: Carrier, q: quantale_lib.Quantale,
                    fn: Callable[[int], quantale_lib.Value]) -> 'VFunction':
    return cls(carrier, q, tuple(fn(i) for i in range(carrier.size)))

  def value_at(self, name: str) -> quantale_lib.Value:
    return self.values[self.carrier.index(name)]

  def _check(self, other: 'VFunction'):
    check_same_carrier(self.carrier, other.carrier)
    if self.quantale != other.quantale:
      raise quantale_lib.ModeMismatchError(
          f'{self.quantale} vs {other.quantale}')

  def _pointwise(self, other, op) -> 'VFunction':
    self._check(other)
    return dataclasses.replace(
        self, values=tuple(op(u, v) for u, v in zip(self.values, other.values)))

  def join(self, other: 'VFunction') -> 'VFunction':
    return self._pointwise(other, self.quantale.join2)

  def meet(self, other: 'VFunction') -> 'VFunction':
    return self._pointwise(other, self.quantale.meet2)

  def tensor(self, value: quantale_lib.Value) -> 'VFunction':
    """Pointwise f ⊗ v."""
    return dataclasses.replace(
        self, values=tuple(self.quantale.tensor(u, value) for u in self.values))

  def residuate(self, value: quantale_lib.Value) -> 'VFunction':
    """Pointwise f ⊘ v."""
    return dataclasses.replace(self, values=tuple(
        self.quantale.residuate(u, value) for u in self.values))

  def leq(self, other: 'VFunction') -> bool:
    self._check(other)
    return all(self.quantale.leq(u, v)
               for u, v in zip(self.values, other.values))

  def support(self) -> int:
    """The set {f > 0}: points where f is strictly above bottom."""
    bottom = self.quantale.bottom
    return sum(1 << i for i, v in enumerate(self.values) if v != bottom)

  def level(self, value: quantale_lib.Value) -> int:
    """The set {f >= value}."""
    return sum(1 << i for i, v in enumerate(self.values)
               if self.quantale.leq(value, v))

  def preimage(self, value: quantale_lib.Value) -> int:
    return sum(1 << i for i, v in enumerate(self.values) if v == value)

  def range(self) -> Tuple[quantale_lib.Value, ...]:
    """Distinct values, from bottom to top."""
    return self.quantale.sort(set(self.values))

  def format(self) -> str:
    fmt = self.quantale.format_value
    return ' '.join(f'{x}={fmt(v)}'
                    for x, v in zip(self.carrier.elements, self.values))


def theta(carrier: Carrier, q: quantale_lib.Quantale, mask: int,
          eps: quantale_lib.Value = None) -> VFunction:
  """Indicator θ_A: top on A, bottom (or `eps`) elsewhere."""
  off = q.bottom if eps is None else eps
  return VFunction(carrier, q, tuple(
      q.top if mask >> i & 1 else off for i in range(carrier.size)))


def _family_members(family: SetFamily) -> Sequence[int]:
  if 0 in family.members:
    raise ValueError('liminf/limsup need nonempty members')
  return sorted(family.members)


def liminf(family: SetFamily, phi: VFunction) -> quantale_lib.Value:
  """⋁_{F ∈ family} ⋀_{x ∈ F} φ(x)."""
  check_same_carrier(family.carrier, phi.carrier)
  q = phi.quantale
  return q.join(q.meet(phi[i] for i in bits(f))
                for f in _family_members(family))


def limsup(family: SetFamily, phi: VFunction) -> quantale_lib.Value:
  """⋀_{F ∈ family} ⋁_{x ∈ F} φ(x)."""
  check_same_carrier(family.carrier, phi.carrier)
  q = phi.quantale
  return q.meet(q.join(phi[i] for i in bits(f))
                for f in _family_members(family))


def liminf_principal(base: int, phi: VFunction) -> quantale_lib.Value:
  """liminf over B↑, which is ⋀_{x ∈ B} φ(x)."""
  return phi.quantale.meet(phi[i] for i in bits(base))


def limsup_principal(base: int, phi: VFunction) -> quantale_lib.Value:
  """limsup over B↑, which is ⋁_{x ∈ B} φ(x)."""
  return phi.quantale.join(phi[i] for i in bits(base))
