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

"""Seeded random instances and exhaustive enumeration of small ones.

Random spaces fill the singleton rows i.i.d. uniformly over a value grid,
force the diagonal to top and complete the remaining rows by the
pre-approach completion. Unless a pre-approach space is requested, each
non-singleton row is then lowered at one random point with probability 1/2,
the new value being propagated to all supersets so that the table stays
monotone.
"""

import fractions
import itertools
from typing import Iterator, Sequence, Tuple

import numpy as np

from apxconv import cap
from apxconv import finset
from apxconv import quantale as quantale_lib

Value = quantale_lib.Value

POINT_NAMES = ('p', 'q', 'r', 's', 't', 'u')
# Denominator of the grid random unit-rational values are drawn from.
UNIT_GRID_STEPS = 4


def default_carrier(size: int) -> finset.Carrier:
  if size <= len(POINT_NAMES):
    return finset.Carrier(POINT_NAMES[:size])
  return finset.Carrier(tuple(f'x{i}' for i in range(size)))


def value_grid(q: quantale_lib.Quantale,
               steps: int = UNIT_GRID_STEPS) -> Tuple[Value, ...]:
  """Values random instances are drawn from, from bottom to top."""
  if q.is_finite:
    return q.elements()
  return tuple(fractions.Fraction(k, steps) for k in range(steps + 1))


def _choice(rng: np.random.Generator, values: Sequence[Value]) -> Value:
  return values[int(rng.integers(len(values)))]


def random_function(rng: np.random.Generator, carrier: finset.Carrier,
                    q: quantale_lib.Quantale) -> finset.VFunction:
  grid = value_grid(q)
  return finset.VFunction(carrier, q, tuple(
      _choice(rng, grid) for _ in range(carrier.size)))


def random_point_map(rng: np.random.Generator, domain: finset.Carrier,
                     codomain: finset.Carrier) -> finset.PointMap:
  return finset.PointMap(domain, codomain, tuple(
      int(i) for i in rng.integers(codomain.size, size=domain.size)))


def random_space(rng: np.random.Generator, carrier: finset.Carrier,
                 q: quantale_lib.Quantale, prap: bool = False,
                 ap: bool = False, name: str = '') -> cap.CapSpace:
  """Draws a random space.

  Args:
    rng: Source of randomness; the result only depends on its state.
    carrier: The points.
    q: The value quantale.
    prap: Whether to return a pre-approach space.
    ap: Whether to return an approach space (the approach reflection of a
      random pre-approach space).
    name: Display name.

  Returns:
    A valid space.
  """
  grid = value_grid(q)
  n = carrier.size
  rows = [[q.top if x == y else _choice(rng, grid) for x in range(n)]
          for y in range(n)]
  space = cap.CapSpace.from_singleton_rows(carrier, q, rows, name=name)
  if ap:
    return cap.ap_reflection(space)
  if prap:
    return space
  table = [list(row) for row in space.table]
  for b in carrier.nonempty_subsets():
    if finset.popcount(b) == 1 or rng.random() >= 0.5:
      continue
    x = int(rng.integers(n))
    lower = [v for v in grid if q.leq(v, table[b][x])]
    value = _choice(rng, lower)
    for superset in range(b, 1 << n):
      if superset & b == b:
        table[superset][x] = q.meet2(table[superset][x], value)
  return cap.CapSpace(carrier, q, tuple(tuple(r) for r in table), name)


def random_spaces(seed: int, count: int, carrier: finset.Carrier,
                  q: quantale_lib.Quantale, prap: bool = False,
                  ap: bool = False) -> Iterator[cap.CapSpace]:
  rng = np.random.default_rng(seed)
  for i in range(count):
    yield random_space(rng, carrier, q, prap=prap, ap=ap,
                       name=f'random-{seed}-{i}')


def enumerate_functions(carrier: finset.Carrier,
                        q: quantale_lib.Quantale) -> Iterator[finset.VFunction]:
  """All of V^X for a finite chain."""
  for values in itertools.product(q.elements(), repeat=carrier.size):
    yield finset.VFunction(carrier, q, values)


def enumerate_spaces(carrier: finset.Carrier, q: quantale_lib.Quantale,
                     prap: bool = True) -> Iterator[cap.CapSpace]:
  """All valid spaces over a finite chain, or only the pre-approach ones.

  Non-singleton rows are filled in increasing order of their bases, each
  entry ranging over the values below the entries of the rows one point
  smaller.

  Args:
    carrier: The points; keep it to two or three.
    q: A lukasiewicz quantale.
    prap: Whether to restrict to pre-approach spaces.

  Yields:
    Spaces in a deterministic order.
  """
  chain = q.elements()
  n = carrier.size
  off_diagonal = [(y, x) for y in range(n) for x in range(n) if x != y]
  for choice in itertools.product(chain, repeat=len(off_diagonal)):
    rows = [[q.top] * n for _ in range(n)]
    for (y, x), v in zip(off_diagonal, choice):
      rows[y][x] = v
    base = cap.CapSpace.from_singleton_rows(carrier, q, rows)
    if prap:
      yield base
      continue
    yield from _lowered_tables(carrier, q, base)


def _lowered_tables(carrier, q, base: cap.CapSpace) -> Iterator[cap.CapSpace]:
  masks = [b for b in carrier.nonempty_subsets() if finset.popcount(b) > 1]
  table = [list(row) for row in base.table]

  def fill(k):
    if k == len(masks):
      yield cap.CapSpace(carrier, q, tuple(tuple(r) for r in table))
      return
    b = masks[k]
    bounds = [q.meet(table[b & ~(1 << i)][x] for i in finset.bits(b))
              for x in range(carrier.size)]
    options = [[v for v in q.elements() if q.leq(v, bound)]
               for bound in bounds]
    for row in itertools.product(*options):
      table[b] = list(row)
      yield from fill(k + 1)

  yield from fill(0)
