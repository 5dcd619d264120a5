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

"""Subcommands: each turns inputs and a config into a `Report`."""

import dataclasses
from typing import List, Optional, Sequence

from absl import logging
import ml_collections
import numpy as np

from apxconv import cap
from apxconv import checks
from apxconv import conv
from apxconv import finset
from apxconv import generate
from apxconv import ptfree
from apxconv import quantale as quantale_lib
from apxconv import report
from apxconv import spacefile
from apxconv import utils

COMMANDS = ('validate', 'info', 'reflect', 'closure', 'hull', 'check',
            'contraction', 'frame', 'gen')
REFLECT_TARGETS = ('psap', 'prap', 'ap', 'r', 'c')
FRAME_CHECKS = ('vcap', 'vprap', 'vap', 'closed')


@dataclasses.dataclass(frozen=True)
class Options:
  """Command-specific inputs.

  Attributes:
    paths: Positional space files.
    to: Target of `reflect`, or the codomain space file of `contraction`.
    subset: Subset literal for `closure`, e.g. "{p,q}".
    fn: V-function file for `hull`.
    laws: Run the law suites in `check`.
    theorems: Run the theorem suites in `check`.
    map: Point map file for `contraction`.
    source: Domain space file for `contraction`.
    frame_check: Property tested by `frame`.
    prap: `gen` draws a pre-approach space.
    ap: `gen` draws an approach space.
  """

  paths: Sequence[str] = ()
  to: Optional[str] = None
  subset: Optional[str] = None
  fn: Optional[str] = None
  laws: bool = False
  theorems: bool = False
  map: Optional[str] = None
  source: Optional[str] = None
  frame_check: Optional[str] = None
  prap: bool = False
  ap: bool = False


def quantale_from_config(
    config: ml_collections.ConfigDict) -> quantale_lib.Quantale:
  if config.mode == quantale_lib.UNIT_RATIONAL:
    return quantale_lib.UNIT
  if config.mode == quantale_lib.LUKASIEWICZ:
    utils.check_bounds(chain=config.chain, max_chain=config.max_chain)
    return quantale_lib.lukasiewicz(config.chain)
  raise ValueError(f'Unknown mode "{config.mode}"')


def _load(paths: Sequence[str], config: ml_collections.ConfigDict,
          validate: bool = True) -> List[cap.CapSpace]:
  if not paths:
    raise ValueError('Expected at least one space file')
  spaces = [spacefile.parse_space(p, validate=validate) for p in paths]
  for space in spaces:
    utils.check_bounds(points=space.carrier.size, max_points=config.max_points)
    if space.quantale.is_finite:
      utils.check_bounds(chain=space.quantale.n, max_chain=config.max_chain)
  return spaces


def _only(paths: Sequence[str], config) -> cap.CapSpace:
  if len(paths) != 1:
    raise ValueError(f'Expected exactly one space file, got {len(paths)}')
  return _load(paths, config)[0]


def _title(space: cap.CapSpace) -> str:
  return f'space {space.name or "unnamed"} ({space.quantale})'


def validate(options: Options, config) -> report.Report:
  results = []
  spaces = _load(options.paths, config, validate=False)
  for path, space in zip(options.paths, spaces):
    verdict = cap.validate(space)
    witness = dict(verdict.violations[0]) if verdict.violations else None
    results.append(report.CheckResult(f'validate/{space.name or path}',
                                      verdict.ok,
                                      witness,
                                      f'{len(verdict.violations)} violations'))
  return report.Report(tuple(results))


def info(options: Options, config) -> report.Report:
  bodies = []
  for space in _load(options.paths, config):
    frame = report.render_frame(report.space_frame(space),
                                config.output_format)
    props = '\n'.join(f'{k}: {v}' for k, v in cap.describe(space))
    bodies.append(f'{_title(space)}\n{frame}{props}\n')
  return report.Report(body='\n'.join(bodies))


def reflect(options: Options, config) -> report.Report:
  space = _only(options.paths, config)
  target = options.to
  if target not in REFLECT_TARGETS:
    raise ValueError(f'--to must be one of {REFLECT_TARGETS}, got {target!r}')
  if target in ('r', 'c'):
    xi = cap.r_reflect(space) if target == 'r' else cap.c_coreflect(space)
    return report.Report(body=f'{target}({_title(space)})\n{xi.format()}\n')
  reflector = {'psap': cap.psap_reflection, 'prap': cap.prap_reflection,
               'ap': cap.ap_reflection}[target]
  reflected = reflector(space)
  frame = report.render_frame(report.space_frame(reflected),
                              config.output_format)
  return report.Report(body=f'{target}({_title(space)})\n{frame}')


def closure(options: Options, config) -> report.Report:
  space = _only(options.paths, config)
  if options.subset is None:
    raise ValueError('closure needs --set')
  mask = space.carrier.parse_subset(options.subset)
  label = space.carrier.format_subset(mask)
  frame = report.functions_frame({
      f'theta {label}': cap.theta(space, mask),
      # adh ∅ is the bottom function θ_∅.
      f'adh {label}': (cap.adh_set(space, mask) if mask
                       else cap.theta(space, 0)),
      f'cl {label}': cap.closure_fn(space, mask),
  })
  return report.Report(body=report.render_frame(frame, config.output_format))


def hull(options: Options, config) -> report.Report:
  space = _only(options.paths, config)
  if options.fn is None:
    raise ValueError('hull needs --fn')
  f = spacefile.parse_function(options.fn, space.carrier, space.quantale)
  h = cap.hull(space, f)
  frame = report.functions_frame({'f': f, 'C(f)': h})
  input_note = (f'input continuous: '
                f'{cap.continuity_to_v_witness(space, f).holds}\n')
  results = (
      report.CheckResult.from_verdict('hull/output_continuous',
                                      cap.continuity_to_v_witness(space, h)),
      report.CheckResult('hull/matches_development',
                         cap.hull_via_development(space, f) == h),
  )
  return report.Report(
      results, report.render_frame(frame, config.output_format) + input_note)


def _random_check_spaces(config) -> List[cap.CapSpace]:
  q = quantale_from_config(config)
  utils.check_bounds(points=config.points, max_points=config.max_points)
  carrier = generate.default_carrier(config.points)
  rng = np.random.default_rng(config.seed)
  # Cycles through approach, pre-approach and unrestricted spaces.
  return [generate.random_space(rng, carrier, q, prap=i % 3 == 1,
                                ap=i % 3 == 0, name=f'random-{i}')
          for i in range(config.num_spaces)]


def check(options: Options, config) -> report.Report:
  if not (options.laws or options.theorems):
    raise ValueError('check needs --laws, --theorems or --all')
  if options.paths:
    spaces = _load(options.paths, config)
  else:
    spaces = _random_check_spaces(config)
  logging.info('Checking %d spaces (laws=%s, theorems=%s)', len(spaces),
               options.laws, options.theorems)
  results = checks.run_checks(spaces, config, laws=options.laws,
                              theorems=options.theorems)
  return report.Report(tuple(results))


def contraction(options: Options, config) -> report.Report:
  if not (options.map and options.source and options.to):
    raise ValueError('contraction needs --map, --from and --to')
  source, target = _load([options.source, options.to], config)
  f = spacefile.parse_point_map(options.map, source.carrier, target.carrier)
  verdict = cap.find_contraction_witness(f, source, target)
  results = [
      report.CheckResult.from_verdict('contraction', verdict),
      report.CheckResult.from_verdict(
          'contraction/preimage_adherence',
          cap.preimage_adherence_holds(f, source, target)),
      report.CheckResult.from_verdict(
          'contraction/preimage_closure',
          cap.preimage_closure_holds(f, source, target)),
  ]
  return report.Report(tuple(results), f'map {f.format()}\n')


def frame(options: Options, config) -> report.Report:
  space = _only(options.paths, config)
  if options.frame_check not in FRAME_CHECKS:
    raise ValueError(f'--check must be one of {FRAME_CHECKS}, got '
                     f'{options.frame_check!r}')
  utils.check_bounds(
      lattice=ptfree.lattice_size(space.carrier, space.quantale),
      max_lattice_size=config.max_lattice)
  conv_frame = ptfree.lim_from_cap(space)
  logging.warning('Frame checks use the convention Lim(⊥) = top.')
  note = checks.DEGENERATE_NOTE
  name = f'frame/{options.frame_check}'
  if options.frame_check == 'vcap':
    return report.Report((report.CheckResult.from_verdict(
        name, ptfree.vcap_witness(conv_frame), note),))
  if options.frame_check == 'vprap':
    return report.Report((report.CheckResult.from_verdict(
        name, ptfree.vprap_witness(conv_frame), note),))
  if options.frame_check == 'vap':
    return report.Report((report.CheckResult.from_verdict(
        name, ptfree.vap_witness(conv_frame), note),))
  closed = ptfree.closed_elements(conv_frame)
  c = space.carrier
  body = '\n'.join(
      finset.VFunction(c, space.quantale, e).format() for e in closed)
  expected = {ptfree.indicator(c, space.quantale, a)
              for a in conv.closed_sets(cap.r_reflect(space)) if a}
  return report.Report(
      (report.CheckResult(name, set(closed) == expected, note=note),),
      body + '\n' if body else '')


def gen(options: Options, config) -> report.Report:
  q = quantale_from_config(config)
  utils.check_bounds(points=config.points, max_points=config.max_points)
  rng = np.random.default_rng(config.seed)
  space = generate.random_space(
      rng, generate.default_carrier(config.points), q, prap=options.prap,
      ap=options.ap, name=f'gen-{config.seed}')
  return report.Report(body=spacefile.format_space(space))


def run(command: str, config: ml_collections.ConfigDict,
        options: Options = Options()) -> report.Report:
  """Runs `command` and returns its report.

  Args:
    command: One of `COMMANDS`.
    config: Run configuration.
    options: Command-specific inputs.

  Returns:
    The report; its `exit_code` is 1 if any check failed.

  Raises:
    ValueError: On unknown commands, bad inputs or exceeded bounds.
  """
  if command not in COMMANDS:
    raise ValueError(f'Unknown command "{command}"; expected one of '
                     f'{COMMANDS}')
  logging.info('Running %s on %s', command, list(options.paths))
  return _HANDLERS[command](options, config)


_HANDLERS = {
    'validate': validate,
    'info': info,
    'reflect': reflect,
    'closure': closure,
    'hull': hull,
    'check': check,
    'contraction': contraction,
    'frame': frame,
    'gen': gen,
}
