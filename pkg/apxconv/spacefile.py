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

"""Line-oriented text formats for spaces, V-functions and point maps.

A space file looks like

    space K3
    mode lukasiewicz 8        # or: mode unit-rational
    points p q r
    lambda {q} : p=2 q=0
    lambda {r} : q=2 r=0

Within a `lambda` row omitted points default to bottom, except that the
diagonal entry of a singleton row defaults to top. Omitted non-singleton rows
default to the pre-approach completion of the singleton rows.
"""

from typing import Dict, Iterator, List, Optional, Tuple

from absl import logging

from apxconv import cap
from apxconv import finset
from apxconv import quantale as quantale_lib


class SpaceFormatError(ValueError):
  """A malformed or invalid input file; `line` is 1-based when known."""

  def __init__(self, message: str, line: Optional[int] = None,
               source: str = '<string>'):
    self.line = line
    self.source = source
    where = f'{source}:{line}' if line is not None else source
    super().__init__(f'{where}: {message}')


def _lines(text: str) -> Iterator[Tuple[int, str]]:
  for number, line in enumerate(text.splitlines(), start=1):
    line = line.split('#', 1)[0].strip()
    if line:
      yield number, line


def _parse_assignments(
    tokens: List[str], carrier: finset.Carrier,
    q: quantale_lib.Quantale) -> Dict[int, quantale_lib.Value]:
  out = {}
  for token in tokens:
    name, sep, value = token.partition('=')
    if not sep:
      raise ValueError(f'Expected point=value, got "{token}"')
    index = carrier.index(name)
    if index in out:
      raise ValueError(f'Point "{name}" assigned twice')
    out[index] = q.parse_value(value)
  return out


def parse_space_text(text: str, source: str = '<string>',
                     validate: bool = True) -> cap.CapSpace:
  """Parses the space file format.

  Args:
    text: File contents.
    source: Name used in error messages.
    validate: Whether to reject spaces violating the axioms.

  Returns:
    The parsed space.

  Raises:
    SpaceFormatError: On syntax errors, unknown points, values outside the
      mode, or (with `validate`) axiom violations.
  """
  name, q, carrier = '', None, None
  rows: Dict[int, Tuple[int, Dict[int, quantale_lib.Value]]] = {}
  for number, line in _lines(text):
    keyword, _, rest = line.partition(' ')
    rest = rest.strip()
    try:
      if keyword == 'space':
        name = rest
      elif keyword == 'mode':
        if q is not None:
          raise ValueError('Duplicate mode line')
        q = quantale_lib.parse_mode(rest)
      elif keyword == 'points':
        if carrier is not None:
          raise ValueError('Duplicate points line')
        carrier = finset.Carrier(tuple(rest.split()))
      elif keyword == 'lambda':
        if q is None or carrier is None:
          raise ValueError('"lambda" rows need earlier "mode" and "points"')
        subset, sep, values = rest.partition(':')
        if not sep:
          raise ValueError('Expected "lambda {B} : x=v ..."')
        base = carrier.parse_subset(subset)
        if not base:
          raise ValueError('The base of a row must be nonempty')
        if base in rows:
          raise ValueError(f'Row {carrier.format_subset(base)} given twice '
                           f'(first at line {rows[base][0]})')
        rows[base] = (number, _parse_assignments(values.split(), carrier, q))
      else:
        raise ValueError(f'Unknown keyword "{keyword}"')
    except ValueError as e:
      raise SpaceFormatError(str(e), number, source) from e

  if q is None or carrier is None:
    raise SpaceFormatError('Missing "mode" or "points" line', None, source)

  def full_row(base):
    given = rows.get(base, (None, {}))[1]
    row = [q.bottom] * carrier.size
    if finset.popcount(base) == 1:
      row[base.bit_length() - 1] = q.top
    for index, value in given.items():
      row[index] = value
    return row

  singletons = [full_row(1 << i) for i in range(carrier.size)]
  overrides = {b: full_row(b) for b in rows if finset.popcount(b) > 1}
  space = cap.CapSpace.from_singleton_rows(carrier, q, singletons, overrides,
                                           name)
  logging.info('Parsed space "%s" (%s, %d points) from %s', name, q,
               carrier.size, source)
  if validate:
    report = cap.validate(space)
    if not report:
      violation = report.violations[0]
      base = violation.get('B_prime', violation.get('B'))
      line = None
      if base is not None and carrier.parse_subset(base) in rows:
        line = rows[carrier.parse_subset(base)][0]
      elif violation['axiom'] == 'centered':
        line = rows.get(1 << carrier.index(violation['x']), (None,))[0]
      raise SpaceFormatError(f'Axiom violated: {violation}', line, source)
  return space


def parse_space(path: str, validate: bool = True) -> cap.CapSpace:
  with open(path, encoding='utf-8') as f:
    return parse_space_text(f.read(), path, validate)


def format_space(space: cap.CapSpace) -> str:
  """Renders a space; rows equal to their default are left out."""
  q, c = space.quantale, space.carrier
  lines = [f'space {space.name or "unnamed"}', f'mode {q}',
           'points ' + ' '.join(c.elements)]
  for b in c.nonempty_subsets():
    row = space.table[b]
    if finset.popcount(b) == 1:
      diagonal = b.bit_length() - 1
      shown = [i for i, v in enumerate(row)
               if v != (q.top if i == diagonal else q.bottom)]
    else:
      completion = [q.meet(space.a(1 << y, x) for y in finset.bits(b))
                    for x in range(c.size)]
      if list(row) == completion:
        continue
      shown = [i for i, v in enumerate(row) if v != q.bottom]
    if not shown and finset.popcount(b) == 1:
      continue
    values = ' '.join(f'{c.elements[i]}={q.format_value(row[i])}'
                      for i in shown)
    lines.append(f'lambda {c.format_subset(b)} : {values}'.rstrip())
  return '\n'.join(lines) + '\n'


def parse_function_text(text: str, carrier: finset.Carrier,
                        q: quantale_lib.Quantale,
                        source: str = '<string>') -> finset.VFunction:
  """Parses `point=value` tokens; omitted points default to bottom."""
  values = {}
  for number, line in _lines(text):
    try:
      for index, value in _parse_assignments(line.split(), carrier, q).items():
        if index in values:
          raise ValueError(f'Point "{carrier.elements[index]}" assigned twice')
        values[index] = value
    except ValueError as e:
      raise SpaceFormatError(str(e), number, source) from e
  return finset.VFunction(carrier, q, tuple(
      values.get(i, q.bottom) for i in range(carrier.size)))


def parse_function(path: str, carrier: finset.Carrier,
                   q: quantale_lib.Quantale) -> finset.VFunction:
  with open(path, encoding='utf-8') as f:
    return parse_function_text(f.read(), carrier, q, path)


def parse_point_map_text(text: str, domain: finset.Carrier,
                         codomain: finset.Carrier,
                         source: str = '<string>') -> finset.PointMap:
  """Parses lines `x -> y`; every point of the domain must be mapped."""
  mapping = {}
  last = None
  for number, line in _lines(text):
    last = number
    try:
      tokens = line.split()
      if len(tokens) != 3 or tokens[1] != '->':
        raise ValueError(f'Expected "x -> y", got "{line}"')
      domain.index(tokens[0])
      codomain.index(tokens[2])
      if tokens[0] in mapping:
        raise ValueError(f'Point "{tokens[0]}" mapped twice')
      mapping[tokens[0]] = tokens[2]
    except ValueError as e:
      raise SpaceFormatError(str(e), number, source) from e
  try:
    return finset.PointMap.from_names(domain, codomain, mapping)
  except ValueError as e:
    raise SpaceFormatError(str(e), last, source) from e


def parse_point_map(path: str, domain: finset.Carrier,
                    codomain: finset.Carrier) -> finset.PointMap:
  with open(path, encoding='utf-8') as f:
    return parse_point_map_text(f.read(), domain, codomain, path)
