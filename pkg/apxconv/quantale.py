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

"""The value quantale V: order, tensor, residuation, joins and meets.

Two presentations are supported:

- `unit-rational`: exact rationals in [0, 1], numeric order, tensor is
  multiplication. This is the faithful model of ([0,1], x).
- `lukasiewicz(n)`: integers {0, ..., n} read as distances. The order is the
  reversed numeric order (0 is top, n is bottom) and the tensor is addition
  capped at n. This is the finite universe used by the brute-force checks.

Inner loops work on raw carrier values (`int` or `fractions.Fraction`) through
the methods of `Quantale`. `QuantaleValue` wraps a raw value together with its
mode for callers that want mode mismatches to be caught.
"""

import dataclasses
import fractions
from typing import Iterable, Tuple, Union

Value = Union[int, fractions.Fraction]

UNIT_RATIONAL = 'unit-rational'
LUKASIEWICZ = 'lukasiewicz'


class ModeMismatchError(ValueError):
  """Raised when values from two different quantales are combined."""


@dataclasses.dataclass(frozen=True)
class Quantale:
  """A quantale presentation (the "mode" of a value).

  Attributes:
    kind: `UNIT_RATIONAL` or `LUKASIEWICZ`.
    n: Chain size parameter; only meaningful for `LUKASIEWICZ`.
  """

  kind: str
  n: int = 1

  def __post_init__(self):
    if self.kind not in (UNIT_RATIONAL, LUKASIEWICZ):
      raise ValueError(f'Unknown quantale kind "{self.kind}"')
    if self.kind == LUKASIEWICZ and self.n < 1:
      raise ValueError(f'Expected chain parameter n >= 1, got {self.n}')
    if self.kind == UNIT_RATIONAL and self.n != 1:
      # Keeps equality and hashing of the unit-rational mode canonical.
      object.__setattr__(self, 'n', 1)

  def __str__(self):
    if self.is_finite:
      return f'{LUKASIEWICZ} {self.n}'
    return UNIT_RATIONAL

  @property
  def is_finite(self) -> bool:
    return self.kind == LUKASIEWICZ

  @property
  def top(self) -> Value:
    return 0 if self.is_finite else fractions.Fraction(1)

  @property
  def bottom(self) -> Value:
    return self.n if self.is_finite else fractions.Fraction(0)

  def contains(self, value) -> bool:
    if self.is_finite:
      return isinstance(value, int) and 0 <= value <= self.n
    return isinstance(value, (int, fractions.Fraction)) and 0 <= value <= 1

  def coerce(self, value) -> Value:
    """Returns `value` as a canonical carrier element, or raises ValueError."""
    if self.is_finite:
      if isinstance(value, fractions.Fraction) and value.denominator == 1:
        value = int(value)
    elif isinstance(value, int):
      value = fractions.Fraction(value)
    if isinstance(value, bool) or not self.contains(value):
      raise ValueError(f'Value {value!r} is outside {self}')
    return value

  def leq(self, u: Value, v: Value) -> bool:
    """Order of V: u <= v."""
    if self.is_finite:
      return u >= v
    return u <= v

  def lt(self, u: Value, v: Value) -> bool:
    return u != v and self.leq(u, v)

  def tensor(self, u: Value, v: Value) -> Value:
    if self.is_finite:
      return min(u + v, self.n)
    return u * v

  def residuate(self, y: Value, v: Value) -> Value:
    """Returns y ⊘ v, the right adjoint of v ⊗ - evaluated at y."""
    if self.is_finite:
      return max(y - v, 0)
    if v == 0:
      return fractions.Fraction(1)
    return min(y / v, fractions.Fraction(1))

  def join2(self, u: Value, v: Value) -> Value:
    return v if self.leq(u, v) else u

  def meet2(self, u: Value, v: Value) -> Value:
    return u if self.leq(u, v) else v

  def join(self, values: Iterable[Value]) -> Value:
    """Supremum in V; the empty join is bottom."""
    if self.is_finite:
      return min(values, default=self.n)
    return max(values, default=fractions.Fraction(0))

  def meet(self, values: Iterable[Value]) -> Value:
    """Infimum in V; the empty meet is top."""
    if self.is_finite:
      return max(values, default=0)
    return min(values, default=fractions.Fraction(1))

  def elements(self) -> Tuple[Value, ...]:
    """Carrier of a finite chain, listed from bottom to top."""
    if not self.is_finite:
      raise ValueError(f'{self} has an infinite carrier')
    return tuple(range(self.n, -1, -1))

  def sort(self, values: Iterable[Value]) -> Tuple[Value, ...]:
    """Sorts values from bottom to top."""
    return tuple(sorted(values, reverse=self.is_finite))

  def parse_value(self, text: str) -> Value:
    """Parses `p/q` rationals, or integers and `inf` in lukasiewicz mode."""
    text = text.strip()
    try:
      if self.is_finite:
        value = self.n if text == 'inf' else int(text)
      else:
        value = fractions.Fraction(text)
    except ValueError as e:
      raise ValueError(f'Cannot parse "{text}" as a value of {self}') from e
    return self.coerce(value)

  def format_value(self, value: Value) -> str:
    return str(value)


UNIT = Quantale(UNIT_RATIONAL)


def lukasiewicz(n: int) -> Quantale:
  return Quantale(LUKASIEWICZ, n)


def parse_mode(text: str) -> Quantale:
  """Parses `unit-rational` or `lukasiewicz <n>`."""
  tokens = text.split()
  if tokens == [UNIT_RATIONAL]:
    return UNIT
  if len(tokens) == 2 and tokens[0] == LUKASIEWICZ and tokens[1].isdigit():
    return lukasiewicz(int(tokens[1]))
  raise ValueError(f'Unknown mode "{text}"; expected "{UNIT_RATIONAL}" or '
                   f'"{LUKASIEWICZ} <n>"')


@dataclasses.dataclass(frozen=True)
class QuantaleValue:
  """An element of V tagged with its presentation."""

  mode: Quantale
  value: Value

  def __post_init__(self):
    object.__setattr__(self, 'value', self.mode.coerce(self.value))

  def __str__(self):
    return self.mode.format_value(self.value)

  def __le__(self, other: 'QuantaleValue') -> bool:
    return _common_mode(self, other).leq(self.value, other.value)

  def __lt__(self, other: 'QuantaleValue') -> bool:
    return _common_mode(self, other).lt(self.value, other.value)


def _common_mode(*values: QuantaleValue) -> Quantale:
  modes = {v.mode for v in values}
  if len(modes) != 1:
    raise ModeMismatchError(
        f'Cannot combine values of modes {sorted(map(str, modes))}')
  return modes.pop()


def tensor(u: QuantaleValue, v: QuantaleValue) -> QuantaleValue:
  mode = _common_mode(u, v)
  return QuantaleValue(mode, mode.tensor(u.value, v.value))


def residuate(y: QuantaleValue, v: QuantaleValue) -> QuantaleValue:
  """Returns y ⊘ v."""
  mode = _common_mode(y, v)
  return QuantaleValue(mode, mode.residuate(y.value, v.value))


def join(values: Iterable[QuantaleValue], mode: Quantale = None):
  """Supremum; `mode` is required to interpret the empty join as bottom."""
  values = tuple(values)
  if not values:
    if mode is None:
      raise ValueError('The empty join needs an explicit mode')
    return QuantaleValue(mode, mode.bottom)
  mode = _common_mode(*values) if mode is None else _common_mode(
      QuantaleValue(mode, mode.top), *values)
  return QuantaleValue(mode, mode.join(v.value for v in values))


def meet(values: Iterable[QuantaleValue], mode: Quantale = None):
  """Infimum; `mode` is required to interpret the empty meet as top."""
  values = tuple(values)
  if not values:
    if mode is None:
      raise ValueError('The empty meet needs an explicit mode')
    return QuantaleValue(mode, mode.top)
  mode = _common_mode(*values) if mode is None else _common_mode(
      QuantaleValue(mode, mode.top), *values)
  return QuantaleValue(mode, mode.meet(v.value for v in values))
