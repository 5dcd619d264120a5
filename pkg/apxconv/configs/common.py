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

from typing import Any, Dict, Iterator, Tuple, Union

import ml_collections

from apxconv import utils


def get_config():
  """Returns the default run configuration."""

  config = ml_collections.ConfigDict()

  # Seed for random spaces, functions and maps.
  config.seed = 0

  # Desk-scale bounds, enforced before any exponential loop.
  config.max_points = 6
  config.max_chain = 8
  # Largest frame V^X; $APXCONV_MAX_LATTICE overrides the default.
  config.max_lattice = utils.max_lattice()
  # Largest V^X the pairwise frame suites of `check` scan.
  config.max_frame_checks = 256

  # "text" or "tsv" (one check per line: name, PASS|FAIL, witness).
  config.output_format = 'text'

  # Instance counts for `check` without input files.
  config.num_spaces = 200
  config.num_functions = 50
  config.num_maps = 100

  # Shape of generated instances: |X|, chain parameter n and quantale.
  config.points = 3
  config.chain = 2
  # "lukasiewicz" or "unit-rational".
  config.mode = 'lukasiewicz'

  # Show tqdm progress bars on stderr.
  config.progress = False

  # Set by `with_suite()`.
  config.suite = None

  return config.lock()


SUITE_PRESETS = {
    # Reflector tower, hull oracle and matrix characterization.
    'desk': ml_collections.ConfigDict(
        {'points': 3, 'chain': 2, 'num_spaces': 200}),
    # Adherence continuity and indicator closedness.
    'adhcont': ml_collections.ConfigDict(
        {'points': 3, 'chain': 4, 'num_spaces': 100}),
    # Pointfree round trip.
    'frames': ml_collections.ConfigDict(
        {'points': 2, 'chain': 2, 'num_spaces': 50}),
    'smoke': ml_collections.ConfigDict(
        {'points': 2, 'chain': 2, 'num_spaces': 3, 'num_functions': 2,
         'num_maps': 3}),
}


def with_suite(config: ml_collections.ConfigDict,
               suite: str) -> ml_collections.ConfigDict:
  if suite not in SUITE_PRESETS:
    raise ValueError(f'Unknown suite "{suite}"; expected one of '
                     f'{sorted(SUITE_PRESETS)}')
  config = ml_collections.ConfigDict(config.to_dict())
  config.suite = suite
  config.update(SUITE_PRESETS[suite])
  return config


def flatten(config: Union[ml_collections.ConfigDict, Dict[str, Any]],
            prefix: str = 'config') -> Iterator[Tuple[str, Any]]:
  """Yields `(dotted.key, value)` pairs in key order."""
  if isinstance(config, ml_collections.ConfigDict):
    config = config.to_dict()
  for key, value in sorted(config.items()):
    name = f'{prefix}.{key}'
    if isinstance(value, dict):
      yield from flatten(value, name)
    else:
      yield name, value
