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

import logging as python_logging
import os
from typing import Optional

from absl import logging

MAX_LATTICE_ENV = 'APXCONV_MAX_LATTICE'
DEFAULT_MAX_LATTICE = 10_000


class BoundsError(ValueError):
  """Raised before an exponential loop would exceed the desk-scale bounds."""


def add_file_logger(workdir, *, basename='apxconv', level=python_logging.INFO):
  """Appends log records to `<workdir>/<basename>.log`."""
  os.makedirs(workdir, exist_ok=True)
  fh = python_logging.FileHandler(
      os.path.join(workdir, f'{basename}.log'), encoding='utf-8')
  fh.setLevel(level)
  fh.setFormatter(logging.PythonFormatter())
  python_logging.getLogger('').addHandler(fh)
  return fh


def max_lattice(default: int = DEFAULT_MAX_LATTICE) -> int:
  """The frame size cap, overridable through $APXCONV_MAX_LATTICE."""
  value = os.environ.get(MAX_LATTICE_ENV)
  if not value:
    return default
  try:
    limit = int(value)
  except ValueError as e:
    raise BoundsError(f'${MAX_LATTICE_ENV}={value!r} is not an integer') from e
  if limit < 1:
    raise BoundsError(f'${MAX_LATTICE_ENV} must be positive, got {limit}')
  return limit


def check_bounds(*, points: Optional[int] = None, chain: Optional[int] = None,
                 lattice: Optional[int] = None, max_points: int = 6,
                 max_chain: int = 8, max_lattice_size: Optional[int] = None):
  """Raises `BoundsError` if a size exceeds its bound."""
  if points is not None and not 1 <= points <= max_points:
    raise BoundsError(f'Carrier size {points} outside [1, {max_points}]')
  if chain is not None and not 1 <= chain <= max_chain:
    raise BoundsError(f'Chain parameter {chain} outside [1, {max_chain}]')
  if lattice is not None:
    if max_lattice_size is None:
      max_lattice_size = max_lattice()
    if lattice > max_lattice_size:
      raise BoundsError(f'Frame has {lattice} elements, more than the cap '
                        f'{max_lattice_size} (set ${MAX_LATTICE_ENV})')
