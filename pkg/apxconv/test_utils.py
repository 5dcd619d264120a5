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

"""Worked example spaces shared by the tests."""

import contextlib
import fractions
import os
import tempfile

from apxconv import cap
from apxconv import conv
from apxconv import finset
from apxconv import quantale as quantale_lib

F = fractions.Fraction

K3_TEXT = """\
space K3
mode lukasiewicz 8
points p q r
lambda {q} : p=2 q=0
lambda {r} : q=2 r=0
"""

N2_TEXT = """\
space N2
mode unit-rational
points p q
lambda {p} : q=1/2
lambda {q} : p=0
lambda {p,q} : p=0 q=0
"""


def carrier(*names: str) -> finset.Carrier:
  return finset.Carrier(names or ('p', 'q', 'r'))


def k3() -> cap.CapSpace:
  """lukasiewicz(8) on {p, q, r}: M(p,q) = M(q,r) = 2, other links 8."""
  q = quantale_lib.lukasiewicz(8)
  rows = [[0, 8, 8],   # λ(ṗ)
          [2, 0, 8],   # λ(q̇)
          [8, 2, 0]]   # λ(ṙ)
  return cap.CapSpace.from_singleton_rows(carrier(), q, rows, name='K3')


def k3r() -> conv.FiniteConvergence:
  """r_reflect(K3), written out by hand."""
  c = carrier()
  point_limits = [c.mask(['p']), c.mask(['p', 'q']), c.mask(['q', 'r'])]

  def lim(b):
    out = c.full
    for i in finset.bits(b):
      out &= point_limits[i]
    return out

  return conv.FiniteConvergence.from_function(c, lim)


def n2() -> cap.CapSpace:
  """A unit-rational space on {p, q} that is not pre-approach."""
  return cap.CapSpace.from_singleton_rows(
      carrier('p', 'q'), quantale_lib.UNIT,
      [[1, F(1, 2)], [0, 1]], overrides={0b11: [0, 0]}, name='N2')


def mline() -> cap.CapSpace:
  """The points 1, 2, 4 of the real line in lukasiewicz(8)."""
  return cap.from_metric([1, 2, 4], quantale_lib.lukasiewicz(8), name='Mline')


def k3_chain2() -> cap.CapSpace:
  """A non-approach space over lukasiewicz(2): M(p,q) = 0, M(q,r) = 1."""
  q = quantale_lib.lukasiewicz(2)
  rows = [[0, 2, 2],
          [0, 0, 2],
          [2, 1, 0]]
  return cap.CapSpace.from_singleton_rows(carrier(), q, rows, name='K3c2')


@contextlib.contextmanager
def written(text: str, name: str = 'input.txt'):
  """Writes `text` to a temporary file and yields its path."""
  with tempfile.TemporaryDirectory() as tmpdir:
    path = os.path.join(tmpdir, name)
    with open(path, 'w', encoding='utf-8') as f:
      f.write(text)
    yield path
