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

r"""Command line entry point.

python -m apxconv.main <command> [space files] [flags]

Exit codes: 0 if every check passed, 1 if any check failed, 2 on usage or
parse errors.
"""

import sys

from absl import app
from absl import flags
from absl import logging
from ml_collections import config_flags

from apxconv import report
from apxconv import run
from apxconv import utils
from apxconv.configs import common

FLAGS = flags.FLAGS

_WORKDIR = flags.DEFINE_string('workdir', None,
                               'Directory for the apxconv.log file.')
config_flags.DEFINE_config_file(
    'config', None, 'Path to a run configuration, e.g. '
    'apxconv/configs/suites.py:desk.', lock_config=True)

_TO = flags.DEFINE_string(
    'to', None, 'reflect: psap|prap|ap|r|c. contraction: target space file.')
_SET = flags.DEFINE_string('set', None, 'closure: subset literal like {p,q}.')
_FN = flags.DEFINE_string('fn', None, 'hull: V-function file.')
_LAWS = flags.DEFINE_bool('laws', False, 'check: run the law suites.')
_THEOREMS = flags.DEFINE_bool('theorems', False,
                              'check: run the theorem suites.')
_ALL = flags.DEFINE_bool('all', False, 'check: run every suite.')
_MAP = flags.DEFINE_string('map', None, 'contraction: point map file.')
_FROM = flags.DEFINE_string('from', None, 'contraction: source space file.')
_CHECK = flags.DEFINE_enum('check', None, list(run.FRAME_CHECKS),
                           'frame: property to check.')
_SEED = flags.DEFINE_integer('seed', None, 'Overrides config.seed.')
_POINTS = flags.DEFINE_integer('points', None, 'Overrides config.points.')
_CHAIN = flags.DEFINE_integer('chain', None, 'Overrides config.chain.')
_PRAP = flags.DEFINE_bool('prap', False, 'gen: draw a pre-approach space.')
_AP = flags.DEFINE_bool('ap', False, 'gen: draw an approach space.')
_OUTPUT = flags.DEFINE_string('output', None,
                              'Write the output here instead of stdout.')
_FORMAT = flags.DEFINE_enum('format', None, list(report.FORMATS),
                            'Overrides config.output_format.')


def get_config():
  """The --config file, or the defaults, with flag overrides applied."""
  config = FLAGS.config if FLAGS.config is not None else common.get_config()
  overrides = {'seed': _SEED.value, 'points': _POINTS.value,
               'chain': _CHAIN.value, 'output_format': _FORMAT.value}
  overrides = {k: v for k, v in overrides.items() if v is not None}
  if overrides:
    with config.unlocked():
      config.update(overrides)
  return config


def main(argv):
  if len(argv) < 2:
    raise app.UsageError(f'Expected a command, one of {run.COMMANDS}.',
                         exitcode=2)
  command, paths = argv[1], tuple(argv[2:])
  if command not in run.COMMANDS:
    raise app.UsageError(f'Unknown command "{command}".', exitcode=2)

  if _WORKDIR.value:
    utils.add_file_logger(_WORKDIR.value)

  options = run.Options(
      paths=paths, to=_TO.value, subset=_SET.value, fn=_FN.value,
      laws=_LAWS.value or _ALL.value, theorems=_THEOREMS.value or _ALL.value,
      map=_MAP.value, source=_FROM.value, frame_check=_CHECK.value,
      prap=_PRAP.value, ap=_AP.value)
  try:
    config = get_config()
    for key, value in common.flatten(config):
      logging.info('%s = %s', key, value)
    result = run.run(command, config, options)
  except (ValueError, OSError) as e:
    logging.error('%s failed: %s', command, e)
    print(f'error: {e}', file=sys.stderr)
    return 2

  output = result.render(config.output_format)
  if _OUTPUT.value:
    with open(_OUTPUT.value, 'w', encoding='utf-8') as f:
      f.write(output)
  else:
    sys.stdout.write(output)
  return result.exit_code


if __name__ == '__main__':
  app.run(main)
