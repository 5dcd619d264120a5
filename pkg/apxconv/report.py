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

"""Check results, reports and table rendering."""

import dataclasses
import json
from typing import Mapping, Optional, Tuple

import pandas as pd

from apxconv import cap
from apxconv import conv
from apxconv import finset

TEXT = 'text'
TSV = 'tsv'
FORMATS = (TEXT, TSV)


@dataclasses.dataclass(frozen=True)
class CheckResult:
  """Outcome of one named check."""

  name: str
  passed: bool
  witness: Optional[Mapping[str, str]] = None
  note: str = ''

  @property
  def verdict(self) -> str:
    return 'PASS' if self.passed else 'FAIL'

  @classmethod
  def from_verdict(cls, name: str, verdict: conv.Verdict,
                   note: str = '') -> 'CheckResult':
    return cls(name, verdict.holds, verdict.witness, note)

  def witness_json(self) -> str:
    return json.dumps(dict(self.witness or {}), sort_keys=True,
                      ensure_ascii=False)


@dataclasses.dataclass(frozen=True)
class Report:
  """Check results, sorted by name, plus an optional rendered body."""

  results: Tuple[CheckResult, ...] = ()
  body: str = ''

  def __post_init__(self):
    object.__setattr__(self, 'results',
                       tuple(sorted(self.results, key=lambda r: r.name)))

  @property
  def num_passed(self) -> int:
    return sum(r.passed for r in self.results)

  @property
  def num_failed(self) -> int:
    return len(self.results) - self.num_passed

  @property
  def all_passed(self) -> bool:
    return not self.num_failed

  @property
  def exit_code(self) -> int:
    return 0 if self.all_passed else 1

  def render(self, fmt: str = TEXT) -> str:
    if fmt not in FORMATS:
      raise ValueError(f'Unknown output format "{fmt}"; expected {FORMATS}')
    lines = [self.body.rstrip('\n')] if self.body else []
    if fmt == TSV:
      lines.extend(f'{r.name}\t{r.verdict}\t{r.witness_json()}'
                   for r in self.results)
    else:
      for r in self.results:
        line = f'{r.verdict}  {r.name}'
        if r.note:
          line += f'  ({r.note})'
        if not r.passed and r.witness:
          line += f'  witness={r.witness_json()}'
        lines.append(line)
      if self.results:
        lines.append(f'{len(self.results)} checks, {self.num_passed} passed, '
                     f'{self.num_failed} failed')
    return '\n'.join(lines) + '\n' if lines else ''


def space_frame(space: cap.CapSpace) -> pd.DataFrame:
  """λ table with one row per nonempty base and one column per point."""
  q, c = space.quantale, space.carrier
  return pd.DataFrame(
      [[q.format_value(v) for v in space.table[b]]
       for b in c.nonempty_subsets()],
      index=pd.Index([c.format_subset(b) for b in c.nonempty_subsets()],
                     name='B'),
      columns=list(c.elements))


def functions_frame(functions: Mapping[str, finset.VFunction]) -> pd.DataFrame:
  """Named V-functions on a shared carrier, one row each."""
  rows = {name: [f.quantale.format_value(v) for v in f.values]
          for name, f in functions.items()}
  carrier = next(iter(functions.values())).carrier
  return pd.DataFrame.from_dict(rows, orient='index',
                                columns=list(carrier.elements))


def render_frame(frame: pd.DataFrame, fmt: str = TEXT) -> str:
  if fmt == TSV:
    return frame.to_csv(sep='\t')
  return frame.to_string() + '\n'
