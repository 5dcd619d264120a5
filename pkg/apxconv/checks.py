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

"""Law and theorem suites.

Every suite feeds a `Suite`, which keeps one tally per named check across all
instances and remembers the first failure together with the full input, so
a witness can be replayed through the same check.
"""

import collections
import itertools
from typing import Dict, List, Optional, Sequence

from absl import logging
import ml_collections
import numpy as np
import tqdm

from apxconv import cap
from apxconv import conv
from apxconv import finset
from apxconv import generate
from apxconv import oracles
from apxconv import ptfree
from apxconv import quantale as quantale_lib
from apxconv import report
from apxconv import spacefile
from apxconv import utils
from apxconv import vspace

DEGENERATE_NOTE = 'depends on Lim(⊥) = top'
FINITE_NOTE = 'finite-carrier coincidence'


def _label(q: quantale_lib.Quantale) -> str:
  return str(q).replace(' ', '-')


class Suite:
  """Tallies of named checks."""

  def __init__(self):
    self._counts: Dict[str, int] = collections.Counter()
    self._witnesses: Dict[str, Optional[dict]] = {}
    self._notes: Dict[str, str] = {}

  def check(self, name: str, ok, space: Optional[cap.CapSpace] = None,
            note: str = '', **context) -> bool:
    """Records one instance of check `name`; `ok` is a bool or a Verdict."""
    self._counts[name] += 1
    if note:
      self._notes[name] = note
    self._witnesses.setdefault(name, None)
    holds = bool(ok)
    if not holds and self._witnesses[name] is None:
      witness = dict(ok.witness or {}) if isinstance(ok, conv.Verdict) else {}
      witness.update({k: str(v) for k, v in context.items()})
      if space is not None:
        witness['space'] = spacefile.format_space(space)
      self._witnesses[name] = witness
      logging.info('Check %s failed: %s', name, witness)
    return holds

  def skip(self, name: str, reason: str):
    self._notes[name] = f'skipped: {reason}'
    self._witnesses.setdefault(name, None)

  def results(self) -> List[report.CheckResult]:
    out = []
    for name, witness in self._witnesses.items():
      note = f'{self._counts[name]} instances'
      if name in self._notes:
        note += f'; {self._notes[name]}'
      out.append(report.CheckResult(name, witness is None, witness, note))
    return out


def quantale_laws(suite: Suite, q: quantale_lib.Quantale):
  """Quantale and residuation laws over the value grid of `q`."""
  grid = generate.value_grid(q)
  prefix = f'quantale[{_label(q)}]'
  for u, v, w in itertools.product(grid, repeat=3):
    ctx = dict(u=u, v=v, w=w)
    suite.check(f'{prefix}/tensor_associative',
                q.tensor(q.tensor(u, v), w) == q.tensor(u, q.tensor(v, w)),
                **ctx)
    suite.check(f'{prefix}/tensor_distributes_over_join',
                q.tensor(u, q.join2(v, w)) ==
                q.join2(q.tensor(u, v), q.tensor(u, w)), **ctx)
    suite.check(f'{prefix}/residuation_adjunction',
                q.leq(q.tensor(v, u), w) == q.leq(u, q.residuate(w, v)), **ctx)
    suite.check(f'{prefix}/residuate_join_is_meet',
                q.residuate(u, q.join2(v, w)) ==
                q.meet2(q.residuate(u, v), q.residuate(u, w)), **ctx)
    suite.check(f'{prefix}/double_residuation',
                q.leq(q.residuate(w, u),
                      q.residuate(q.residuate(v, u), q.residuate(v, w))),
                **ctx)
  for u, v in itertools.product(grid, repeat=2):
    suite.check(f'{prefix}/tensor_commutative',
                q.tensor(u, v) == q.tensor(v, u), u=u, v=v)
  for u in grid:
    suite.check(f'{prefix}/top_is_unit', q.tensor(q.top, u) == u, u=u)
    suite.check(f'{prefix}/bottom_absorbs', q.tensor(q.bottom, u) == q.bottom,
                u=u)


def set_laws(suite: Suite, carrier: finset.Carrier):
  """Filters, grills and the indicator characterizations of both."""
  q = quantale_lib.lukasiewicz(1)
  prefix = f'sets[{carrier.size}]'
  for b in carrier.nonempty_subsets():
    f = finset.PrincipalFilter(carrier, b)
    members = f.members()
    g = finset.grill(members)
    suite.check(f'{prefix}/grill_of_grill_is_filter',
                finset.grill(g) == members, B=carrier.format_subset(b))
    suite.check(f'{prefix}/filter_meshes_its_grill', finset.mesh(members, g),
                B=carrier.format_subset(b))
    for a in carrier.subsets():
      theta = finset.theta(carrier, q, a)
      ctx = dict(B=carrier.format_subset(b), A=carrier.format_subset(a))
      suite.check(f'{prefix}/member_iff_liminf_top',
                  (a in f) == (finset.liminf(members, theta) == q.top), **ctx)
      suite.check(f'{prefix}/grill_iff_limsup_top',
                  (a in g) == (finset.limsup(members, theta) == q.top), **ctx)
      suite.check(f'{prefix}/principal_liminf_limsup',
                  finset.liminf(members, theta) ==
                  finset.liminf_principal(b, theta) and
                  finset.limsup(members, theta) ==
                  finset.limsup_principal(b, theta), **ctx)
      if a:
        suite.check(f'{prefix}/ultrafilters_contain_set',
                    all(a in u for u in finset.ultrafilters_over(carrier, a)),
                    **ctx)


def conv_laws(suite: Suite, space: cap.CapSpace):
  """Reflections of the plain convergences attached to a space."""
  r = cap.r_reflect(space)
  c = cap.c_coreflect(space)
  suite.check('conv/r_reflect_valid', conv.validate(r).ok, space)
  suite.check('conv/c_coreflect_valid', conv.validate(c).ok, space)
  suite.check('conv/c_finer_than_r', conv.finer_than(c, r), space)
  s0 = conv.pretop_reflection(r)
  t = conv.topo_reflection(r)
  suite.check('conv/reflections_coarsen',
              conv.finer_than(r, s0) and conv.finer_than(s0, t), space)
  suite.check('conv/pretop_reflection_idempotent',
              conv.pretop_reflection(s0) == s0, space)
  suite.check('conv/topo_reflection_topological', conv.is_topological(t),
              space)
  suite.check('conv/open_sets_complement_closed_sets',
              sorted(r.carrier.full & ~a for a in conv.closed_sets(r)) ==
              sorted(conv.open_sets(r)), space)
  if cap.is_prap(space):
    suite.check('conv/prap_gives_pretopological_r', conv.is_pretopological(r),
                space)


def hull_laws(suite: Suite, space: cap.CapSpace,
              functions: Sequence[finset.VFunction]):
  """Lower-hull laws, closure laws and the brute-force hull oracle."""
  q, c = space.quantale, space.carrier
  grid = generate.value_grid(q)
  continuous = (oracles.continuous_functions(space)
                if oracles.can_enumerate(space) else None)
  if continuous is None:
    suite.skip('hull/matches_brute_force', 'V^X too large to enumerate')
  for f, g in zip(functions, list(functions[1:]) + list(functions[:1])):
    h = cap.hull(space, f)
    ctx = dict(f=f.format())
    suite.check('hull/continuous', cap.is_continuous_to_V(space, h), space,
                **ctx)
    suite.check('hull/expansive', f.leq(h), space, **ctx)
    suite.check('hull/idempotent', cap.hull(space, h) == h, space, **ctx)
    suite.check('hull/preserves_binary_joins',
                cap.hull(space, f.join(g)) == h.join(cap.hull(space, g)),
                space, g=g.format(), **ctx)
    suite.check('hull/matches_development',
                cap.hull_via_development(space, f) == h, space, **ctx)
    suite.check('hull/singleton_continuity_test',
                cap.is_continuous_on_points(space, f) ==
                cap.is_continuous_to_V(space, f), space, **ctx)
    if continuous is not None:
      suite.check('hull/matches_brute_force',
                  oracles.brute_force_hull(space, f, continuous) == h, space,
                  **ctx)
    hg = cap.hull(space, g)
    suite.check('continuous/closed_under_join_and_meet',
                cap.is_continuous_to_V(space, h.join(hg)) and
                cap.is_continuous_to_V(space, h.meet(hg)), space, **ctx)
    for v in grid:
      suite.check('hull/commutes_with_tensor',
                  cap.hull(space, f.tensor(v)) == h.tensor(v), space, v=v,
                  **ctx)
      suite.check('continuous/closed_under_tensor',
                  cap.is_continuous_to_V(space, h.tensor(v)), space, v=v,
                  **ctx)

  closures = {a: cap.closure_fn(space, a) for a in c.subsets()}
  suite.check('closure/empty_is_bottom',
              closures[0] == cap.theta(space, 0), space)
  for a in c.nonempty_subsets():
    ctx = dict(A=c.format_subset(a))
    adh = cap.adh_set(space, a)
    suite.check('closure/above_adherence_above_indicator',
                cap.theta(space, a).leq(adh) and adh.leq(closures[a]),
                space, **ctx)
    suite.check('closure/of_adherence', cap.hull(space, adh) == closures[a],
                space, **ctx)
    suite.check('closure/top_level_idempotent',
                closures[closures[a].level(q.top)] == closures[a], space,
                **ctx)
    for b in c.subsets():
      suite.check('closure/union_is_join',
                  closures[a | b] == closures[a].join(closures[b]), space,
                  B=c.format_subset(b), **ctx)
      if a & b == a:
        suite.check('closure/monotone', closures[a].leq(closures[b]), space,
                    B=c.format_subset(b), **ctx)


def _thresholds(q: quantale_lib.Quantale) -> Sequence[quantale_lib.Value]:
  return [v for v in generate.value_grid(q) if v != q.top]


def space_theorems(suite: Suite, space: cap.CapSpace,
                   functions: Sequence[finset.VFunction]):
  """Reflectors, adherence continuity and the approach characterizations."""
  q, c = space.quantale, space.carrier
  s0 = cap.prap_reflection(space)
  t = cap.ap_reflection(space)
  approach = cap.is_approach(space)

  suite.check('reflect/tower', cap.leq(space, s0) and cap.leq(s0, t), space)
  suite.check('reflect/prap_idempotent', cap.prap_reflection(s0) == s0, space)
  suite.check('reflect/ap_idempotent', cap.ap_reflection(t) == t, space)
  suite.check('reflect/prap_output_is_prap', cap.prap_witness(s0), space)
  suite.check('reflect/prap_keeps_adherence',
              all(cap.adh_set(space, a) == cap.adh_set(s0, a)
                  for a in c.nonempty_subsets()), space)
  suite.check('reflect/ap_output_is_approach', cap.is_approach(t), space)
  suite.check('reflect/identity_into_ap_is_contraction',
              cap.find_contraction_witness(finset.PointMap.identity(c), space,
                                           t), space)
  suite.check('reflect/psap_equals_prap',
              cap.psap_reflection(space) == s0 and
              cap.is_psap(space) == cap.is_prap(space), space,
              note=FINITE_NOTE)
  suite.check('reflect/initial_from_closures_is_ap',
              vspace.initial_from_closures(space) == t, space)
  suite.check('space/finite_depth_iff_prap',
              cap.has_finite_depth(space) == cap.is_prap(space), space,
              note=FINITE_NOTE)

  r = cap.r_reflect(space)
  for a in c.subsets():
    ctx = dict(A=c.format_subset(a))
    theta_ok = cap.is_continuous_to_V(space, cap.theta(space, a))
    suite.check('adhcont/indicator_iff_r_closed',
                theta_ok == conv.is_closed(r, a), space, **ctx)
    levels = []
    for eps in _thresholds(q):
      level_ok = cap.is_continuous_to_V(space, cap.theta_eps(space, a, eps))
      levels.append(level_ok)
      suite.check('adhcont/level_indicator_iff_tau_closed',
                  level_ok == cap.is_tau_eps_closed(space, a, eps), space,
                  epsilon=eps, **ctx)
    suite.check('adhcont/indicator_iff_all_levels', theta_ok == all(levels),
                space, **ctx)
    if not a:
      continue
    suite.check('adhcont/hull_of_adherence',
                cap.hull(space, cap.adh_set(space, a)) ==
                cap.closure_fn(space, a), space, **ctx)
    reduced = cap.diagonal_witness(space, a, cap.reduced_thresholds(space, a))
    if q.is_finite:
      full = cap.diagonal_witness(space, a, q.elements())
      suite.check('adhcont/reduced_thresholds_suffice',
                  reduced.holds == full.holds, space, **ctx)
      suite.check('adhcont/adherence_continuity_iff_diagonal',
                  oracles.adh_continuity_matches_diagonal(space, a), space,
                  **ctx)

  suite.check('approach/matrix_characterization',
              approach.holds == oracles.is_approach_by_matrix(space), space)
  if q.is_finite:
    suite.check('approach/full_chain_oracle',
                approach.holds == oracles.is_approach_full_chain(space), space)
  if approach:
    suite.check('approach/adherence_continuous',
                all(cap.is_continuous_to_V(space, cap.adh_filter(space, b))
                    for b in c.nonempty_subsets()), space)
    suite.check('approach/closure_identities',
                cap.adh_filter_closure_check(space), space)
    suite.check('approach/initial_inequality',
                vspace.initial_inequality_witness(space), space)
    suite.check('approach/closure_equals_adherence',
                all(cap.closure_fn(space, a) == cap.adh_set(space, a)
                    for a in c.nonempty_subsets()), space)

  if oracles.can_enumerate(space):
    functions = tuple(generate.enumerate_functions(c, q))
  for f in functions:
    suite.check('reflect/ap_keeps_continuous_functions',
                cap.is_continuous_to_V(space, f) ==
                cap.is_continuous_to_V(t, f), space, f=f.format())


def contraction_theorems(suite: Suite, space: cap.CapSpace,
                         rng: np.random.Generator, count: int):
  """Contractions, preimage inequalities and the universal property."""
  q, c = space.quantale, space.carrier
  identity = finset.PointMap.identity(c)
  for _ in range(count):
    y = generate.random_space(rng, c, q, ap=True, name='target')
    f = generate.random_point_map(rng, c, c)
    h = generate.random_point_map(rng, c, c)
    source = cap.initial_structure(c, [(f, y), (identity, space)], 'initial')
    ctx = dict(f=f.format(), target=spacefile.format_space(y))
    suite.check('initial/maps_are_contractions',
                cap.contraction_check(f, source, y) and
                cap.contraction_check(identity, source, space), space, **ctx)
    suite.check('universal/contraction_factors_through_ap',
                cap.find_contraction_witness(f, cap.ap_reflection(source), y),
                space, **ctx)

    ctx = dict(h=h.format(), target=spacefile.format_space(y))
    contraction = cap.contraction_check(h, space, y)
    adh_ok = cap.preimage_adherence_holds(h, space, y).holds
    cl_ok = cap.preimage_closure_holds(h, space, y).holds
    suite.check('contraction/implies_preimage_inequalities',
                not contraction or (adh_ok and cl_ok), space, **ctx)
    suite.check('contraction/adherence_inequality_suffices_into_prap',
                not adh_ok or contraction, space, **ctx)
    suite.check('contraction/closure_inequality_suffices_into_approach',
                not cl_ok or contraction, space, **ctx)
    suite.check('contraction/constant_map',
                cap.contraction_check(finset.PointMap.constant(c, c, 0),
                                      space, y), space, **ctx)


def vspace_theorems(suite: Suite, q: quantale_lib.Quantale):
  """Closed forms on V and the approach axioms of (V, λ_V)."""
  prefix = f'vspace[{_label(q)}]'
  if q.is_finite:
    values = q.elements()
    space = vspace.v_as_cap(q)
  else:
    values = generate.value_grid(q)
    space = vspace.sample_as_cap(q, values)
  suite.check(f'{prefix}/is_approach', cap.is_approach(space), space)
  suite.check(f'{prefix}/is_prap', cap.prap_witness(space), space)
  if q.is_finite:
    suite.check(f'{prefix}/diagonal_inequality', vspace.diagonal_witness(q))
  for size in range(1, len(values) + 1):
    for subset in itertools.combinations(values, size):
      for v in values:
        ctx = dict(A=list(map(str, subset)), v=v)
        suite.check(f'{prefix}/adherence_closed_form',
                    vspace.adh_V(q, subset, v).value ==
                    oracles.brute_force_adh_V(q, subset, v), **ctx)
        suite.check(f'{prefix}/lambda_is_meet_of_residuals',
                    vspace.lambda_V(q, subset, v).value ==
                    q.meet(q.residuate(v, b) for b in subset), **ctx)


def frame_algebra(suite: Suite, carrier: finset.Carrier,
                  q: quantale_lib.Quantale):
  """Pseudocomplement laws in V^X."""
  prefix = f'frame[{_label(q)},{carrier.size}]'
  elements = ptfree.lattice_elements(carrier, q)
  for a, b in itertools.product(elements, repeat=2):
    suite.check(f'{prefix}/double_pseudocomplement_preserves_meets',
                ptfree.star_star(q, ptfree.meet(q, a, b)) ==
                ptfree.meet(q, ptfree.star_star(q, a),
                            ptfree.star_star(q, b)), a=a, b=b)
  for mask in carrier.subsets():
    theta = ptfree.indicator(carrier, q, mask)
    suite.check(f'{prefix}/indicators_are_regular',
                ptfree.star_star(q, theta) == theta,
                A=carrier.format_subset(mask))


def frame_theorems(suite: Suite, space: cap.CapSpace):
  """Round trip between spaces and frames, and the frame characterizations."""
  q, c = space.quantale, space.carrier
  frame = ptfree.lim_from_cap(space)
  suite.check('frame/antitone', ptfree.validate(frame).ok, space)
  suite.check('frame/from_space_is_vcap', ptfree.vcap_witness(frame), space)
  suite.check('frame/round_trip', ptfree.cap_from_lim(frame) == space and
              ptfree.lim_from_cap(ptfree.cap_from_lim(frame)) == frame, space,
              note=DEGENERATE_NOTE)
  suite.check('frame/vprap_iff_prap',
              ptfree.is_vprap(frame) == cap.is_prap(space), space,
              note=DEGENERATE_NOTE)
  suite.check('frame/vap_iff_approach',
              ptfree.is_vap(frame) == cap.is_approach(space).holds, space,
              note=DEGENERATE_NOTE)
  r = cap.r_reflect(space)
  closed = set(ptfree.closed_elements(frame))
  expected = {ptfree.indicator(c, q, a) for a in conv.closed_sets(r) if a}
  suite.check('frame/closed_elements_are_closed_indicators',
              closed == expected, space, note=DEGENERATE_NOTE)
  suite.check('frame/closed_elements_continuous',
              all(cap.is_continuous_to_V(space, finset.VFunction(c, q, e))
                  for e in closed), space)
  if c.size * (q.n + 1) <= ptfree.MAX_POINT_SPACE:
    suite.check('frame/point_space_valid',
                conv.validate(ptfree.point_space(space)).ok, space)


def _functions(rng, space: cap.CapSpace, count: int):
  c, q = space.carrier, space.quantale
  indicators = [cap.theta(space, a) for a in c.subsets()]
  return indicators + [generate.random_function(rng, c, q)
                       for _ in range(count)]


def run_checks(spaces: Sequence[cap.CapSpace],
               config: ml_collections.ConfigDict, laws: bool = True,
               theorems: bool = True) -> List[report.CheckResult]:
  """Runs the selected suites over `spaces`.

  Args:
    spaces: The instances, possibly over different carriers and quantales.
    config: Run configuration (seed, counts, bounds, progress).
    laws: Whether to run the law suites.
    theorems: Whether to run the theorem suites.

  Returns:
    One result per named check.
  """
  suite = Suite()
  rng = np.random.default_rng(config.seed)
  quantales = sorted({s.quantale for s in spaces}, key=str)
  carriers = sorted({s.carrier for s in spaces}, key=lambda c: c.elements)
  for q in quantales:
    if laws:
      quantale_laws(suite, q)
    if theorems and (not q.is_finite or q.n <= config.max_chain):
      vspace_theorems(suite, q)
  if laws:
    for c in carriers:
      set_laws(suite, c)
  frame_ok = {}
  if theorems:
    for s in spaces:
      key = (s.carrier, s.quantale)
      if key in frame_ok:
        continue
      frame_ok[key] = s.quantale.is_finite and ptfree.lattice_size(
          s.carrier, s.quantale) <= min(config.max_lattice,
                                        config.max_frame_checks)
      if frame_ok[key]:
        frame_algebra(suite, s.carrier, s.quantale)
    if not all(frame_ok.values()):
      suite.skip('frame/round_trip', 'frame larger than max_frame_checks '
                 'or unit-rational mode')
    if any(frame_ok.values()):
      logging.warning('Frame checks use the convention Lim(⊥) = top.')
  maps_per_space = max(1, config.num_maps // max(1, len(spaces)))
  for space in tqdm.tqdm(spaces, desc='checks', disable=not config.progress):
    utils.check_bounds(points=space.carrier.size,
                       max_points=config.max_points)
    functions = _functions(rng, space, config.num_functions)
    if laws:
      conv_laws(suite, space)
      hull_laws(suite, space, functions)
    if theorems:
      space_theorems(suite, space, functions)
      contraction_theorems(suite, space, rng, maps_per_space)
      if frame_ok[(space.carrier, space.quantale)]:
        frame_theorems(suite, space)
  logging.info('Ran %d check kinds over %d spaces', len(suite.results()),
               len(spaces))
  return suite.results()
