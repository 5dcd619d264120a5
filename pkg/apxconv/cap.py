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

"""Finite convergence approach spaces.

A space (X, λ) is stored by its table `a(B, x) = λ(B↑)(x)` over nonempty
subsets B. Row 0 (the degenerate filter) is constant top. Since every
ultrafilter is a point ultrafilter, all adherences are determined by the
singleton matrix `M[x][y] = a({y}, x)`, and the lower hull of a V-function is
the product of the Kleene closure of M in the (∨, ⊗) semiring with it.
"""

import dataclasses
import fractions
import functools
from typing import Callable, List, Mapping, Optional, Sequence, Tuple

from absl import logging
import numpy as np

from apxconv import conv
from apxconv import finset
from apxconv import quantale as quantale_lib

Value = quantale_lib.Value
VFunction = finset.VFunction
PreconditionError = conv.PreconditionError
Verdict = conv.Verdict


@dataclasses.dataclass(frozen=True)
class CapSpace:
  """A finite convergence approach space.

  Attributes:
    carrier: The points X.
    quantale: The value quantale V.
    table: `table[B][x]` is λ(B↑)(x) for every bitmask B; `table[0]` is the
      constant top row of the degenerate filter.
    name: Display name; not part of equality.
  """

  carrier: finset.Carrier
  quantale: quantale_lib.Quantale
  table: Tuple[Tuple[Value, ...], ...]
  name: str = dataclasses.field(default='', compare=False)

  def __post_init__(self):
    q, n = self.quantale, self.carrier.size
    if len(self.table) != 1 << n:
      raise ValueError(f'Expected {1 << n} rows, got {len(self.table)}')
    rows = [(q.top,) * n]
    for b, row in enumerate(self.table[1:], start=1):
      if len(row) != n:
        raise ValueError(f'Row {self.carrier.format_subset(b)} has '
                         f'{len(row)} entries, expected {n}')
      rows.append(tuple(q.coerce(v) for v in row))
    object.__setattr__(self, 'table', tuple(rows))

  @classmethod
  def from_function(cls, carrier: finset.Carrier, q: quantale_lib.Quantale,
                    fn: Callable[[int, int], Value], name: str = ''):
    """Builds a space from `fn(B, x) = λ(B↑)(x)`."""
    table = [(q.top,) * carrier.size]
    for b in carrier.nonempty_subsets():
      table.append(tuple(fn(b, x) for x in range(carrier.size)))
    return cls(carrier, q, tuple(table), name)

  @classmethod
  def from_singleton_rows(cls, carrier: finset.Carrier,
                          q: quantale_lib.Quantale,
                          rows: Sequence[Sequence[Value]],
                          overrides: Optional[Mapping[int, Sequence[Value]]]
                          = None,
                          name: str = ''):
    """Builds a space from its singleton rows `rows[y][x] = λ(ẏ)(x)`.

    Non-singleton rows default to the pre-approach completion
    a(B, x) = ⋀_{y ∈ B} a({y}, x) unless given in `overrides`.

    Args:
      carrier: The points.
      q: The value quantale.
      rows: One row per point, indexed like the carrier.
      overrides: Explicit rows for non-singleton bases, keyed by bitmask.
      name: Display name.

    Returns:
      The (not yet validated) space.
    """
    overrides = dict(overrides or {})
    rows = [tuple(q.coerce(v) for v in row) for row in rows]

    def fn(b, x):
      if b in overrides:
        return overrides[b][x]
      return q.meet(rows[y][x] for y in finset.bits(b))

    return cls.from_function(carrier, q, fn, name)

  def a(self, base: int, x: int) -> Value:
    return self.table[base][x]

  def row(self, base: int) -> VFunction:
    return VFunction(self.carrier, self.quantale, self.table[base])

  def singleton_matrix(self) -> Tuple[Tuple[Value, ...], ...]:
    """M[x][y] = a({y}, x)."""
    n = self.carrier.size
    return tuple(tuple(self.table[1 << y][x] for y in range(n))
                 for x in range(n))

  def with_name(self, name: str) -> 'CapSpace':
    return dataclasses.replace(self, name=name)


def check_compatible(*spaces: CapSpace):
  finset.check_same_carrier(*(s.carrier for s in spaces))
  if len({s.quantale for s in spaces}) != 1:
    raise quantale_lib.ModeMismatchError(
        f'Spaces use different quantales: {[str(s.quantale) for s in spaces]}')


def leq(s: CapSpace, t: CapSpace) -> bool:
  """Pointwise order of limit tables: λ_S ≤ λ_T everywhere."""
  check_compatible(s, t)
  q = s.quantale
  return all(q.leq(u, v) for row_s, row_t in zip(s.table, t.table)
             for u, v in zip(row_s, row_t))


def validate(space: CapSpace) -> conv.ValidationReport:
  """Checks centeredness a({x}, x) = top and monotonicity in B."""
  c, q = space.carrier, space.quantale
  violations = []
  for i in range(c.size):
    if space.a(1 << i, i) != q.top:
      violations.append({
          'axiom': 'centered', 'x': c.elements[i],
          'value': q.format_value(space.a(1 << i, i))})
  for b in c.nonempty_subsets():
    for j in finset.bits(c.full & ~b):
      bigger = b | 1 << j
      for x in range(c.size):
        if not q.leq(space.a(bigger, x), space.a(b, x)):
          violations.append({
              'axiom': 'monotone', 'B': c.format_subset(b),
              'B_prime': c.format_subset(bigger), 'x': c.elements[x]})
  return conv.ValidationReport(tuple(violations))


def adh_set(space: CapSpace, mask: int) -> VFunction:
  """adh A(x) = ⋁_{y ∈ A} a({y}, x) for nonempty A."""
  if not mask:
    raise ValueError('The adherence of the empty set is not defined')
  q, c = space.quantale, space.carrier
  return VFunction(c, q, tuple(
      q.join(space.a(1 << y, x) for y in finset.bits(mask))
      for x in range(c.size)))


def adh_filter(space: CapSpace, base) -> VFunction:
  """Adherence of a principal filter B↑, equal to adh B."""
  if isinstance(base, finset.PrincipalFilter):
    finset.check_same_carrier(base.carrier, space.carrier)
    base = base.base
  return adh_set(space, base)


def psap_reflection(space: CapSpace) -> CapSpace:
  """λ_S(B↑) = ⋀ of λ over the ultrafilters of B↑, the ẏ with y ∈ B."""
  q = space.quantale
  return CapSpace.from_function(
      space.carrier, q,
      lambda b, x: q.meet(space.a(1 << y, x) for y in finset.bits(b)),
      space.name)


def prap_reflection(space: CapSpace) -> CapSpace:
  """λ_S0(B↑)(x) = ⋀_{A ∩ B ≠ ∅} adh A(x)."""
  q, c = space.quantale, space.carrier
  adh = {a: adh_set(space, a) for a in c.nonempty_subsets()}
  return CapSpace.from_function(
      c, q,
      lambda b, x: q.meet(adh[a][x] for a in c.nonempty_subsets() if a & b),
      space.name)


def prap_witness(space: CapSpace) -> Verdict:
  q, c = space.quantale, space.carrier
  for b in c.nonempty_subsets():
    for x in range(c.size):
      completed = q.meet(space.a(1 << y, x) for y in finset.bits(b))
      if space.a(b, x) != completed:
        return conv.fail(B=c.format_subset(b), x=c.elements[x],
                         value=q.format_value(space.a(b, x)),
                         expected=q.format_value(completed))
  return conv.PASS


def is_prap(space: CapSpace) -> bool:
  return prap_witness(space).holds


def is_psap(space: CapSpace) -> bool:
  # On a finite carrier β(B↑) = {ẏ : y ∈ B}, so PsAp and PrAp coincide.
  return psap_reflection(space) == space


def level_set(space: CapSpace, mask: int, eps: Value) -> int:
  """A^(ε) = {x : adh A(x) >= ε}."""
  return adh_set(space, mask).level(eps)


def diagonal_witness(space: CapSpace, mask: int,
                     thresholds: Sequence[Value]) -> Verdict:
  """Checks adh A(x) >= adh A^(ε)(x) ⊗ ε for ε in `thresholds`."""
  q, c = space.quantale, space.carrier
  adh = adh_set(space, mask)
  for eps in thresholds:
    level = adh.level(eps)
    if not level:
      continue
    adh_level = adh_set(space, level)
    for x in range(c.size):
      if not q.leq(q.tensor(adh_level[x], eps), adh[x]):
        return conv.fail(A=c.format_subset(mask), epsilon=q.format_value(eps),
                         x=c.elements[x])
  return conv.PASS


def reduced_thresholds(space: CapSpace, mask: int) -> Tuple[Value, ...]:
  """range(adh A) ∪ {top}, from bottom to top.

  A^(ε) only changes at values attained by adh A, and between two attained
  values the condition is tightest at the attained one.

  Args:
    space: The space.
    mask: The set A.

  Returns:
    The thresholds ε that suffice for the diagonal condition.
  """
  q = space.quantale
  return q.sort(set(adh_set(space, mask).values) | {q.top})


def is_approach(space: CapSpace) -> Verdict:
  """Pre-approach plus the diagonal condition for every A, ε, x."""
  report = validate(space)
  if not report.ok:
    return Verdict(False, dict(report.violations[0], reason='not a space'))
  prap = prap_witness(space)
  if not prap:
    return Verdict(False, dict(prap.witness, reason='not pre-approach'))
  for a in space.carrier.nonempty_subsets():
    verdict = diagonal_witness(space, a, reduced_thresholds(space, a))
    if not verdict:
      return verdict
  return conv.PASS


def continuity_to_v_witness(space: CapSpace, f: VFunction) -> Verdict:
  """Checks f(x) ⊘ limsup_{B↑} f >= λ(B↑)(x) for every B and x."""
  finset.check_same_carrier(space.carrier, f.carrier)
  if space.quantale != f.quantale:
    raise quantale_lib.ModeMismatchError(f'{space.quantale} vs {f.quantale}')
  q, c = space.quantale, space.carrier
  for b in c.nonempty_subsets():
    sup = finset.limsup_principal(b, f)
    for x in range(c.size):
      if not q.leq(space.a(b, x), q.residuate(f[x], sup)):
        return conv.fail(B=c.format_subset(b), x=c.elements[x])
  return conv.PASS


def is_continuous_to_V(space: CapSpace, f: VFunction) -> bool:  # pylint: disable=invalid-name
  return continuity_to_v_witness(space, f).holds


def is_continuous_on_points(space: CapSpace, f: VFunction) -> bool:
  """Singleton form of continuity: f(x) >= a({y}, x) ⊗ f(y) for all x, y."""
  q, n = space.quantale, space.carrier.size
  return all(q.leq(q.tensor(space.a(1 << y, x), f[y]), f[x])
             for x in range(n) for y in range(n))


def _as_array(q: quantale_lib.Quantale, rows) -> np.ndarray:
  return np.array(rows, dtype=np.int64 if q.is_finite else object)


def _from_array(q: quantale_lib.Quantale, array: np.ndarray):
  if q.is_finite:
    return tuple(int(v) for v in array)
  return tuple(fractions.Fraction(v) for v in array)


def semiring_product(q: quantale_lib.Quantale, a: np.ndarray,
                     b: np.ndarray) -> np.ndarray:
  """Matrix product in the (∨, ⊗) semiring of V."""
  if q.is_finite:
    return np.minimum(a[:, :, None] + b[None, :, :], q.n).min(axis=1)
  return (a[:, :, None] * b[None, :, :]).max(axis=1)


@functools.lru_cache(maxsize=1024)
def kleene_star(space: CapSpace) -> Tuple[Tuple[Value, ...], ...]:
  """M* = (I ∨ M)^(|X|-1) for the singleton matrix M.

  Cycle weights are at most top, so best paths are simple and have at most
  |X|-1 edges. The diagonal is set to top, which only changes M when the
  space is not centered.

  Args:
    space: The space.

  Returns:
    The closure as a tuple of rows.
  """
  q = space.quantale
  star = _as_array(q, space.singleton_matrix())
  np.fill_diagonal(star, q.top)
  power = 1
  while power < space.carrier.size - 1:
    star = semiring_product(q, star, star)
    power *= 2
    logging.debug('kleene_star(%s): squared to power %d', space.name, power)
  return tuple(_from_array(q, row) for row in star)


def hull(space: CapSpace, f: VFunction) -> VFunction:
  """C(f): the least V-function continuous into V above f."""
  finset.check_same_carrier(space.carrier, f.carrier)
  q = space.quantale
  star = _as_array(q, kleene_star(space))
  column = _as_array(q, [[v] for v in f.values])
  return VFunction(space.carrier, q,
                   _from_array(q, semiring_product(q, star, column)[:, 0]))


def theta(space: CapSpace, mask: int) -> VFunction:
  return finset.theta(space.carrier, space.quantale, mask)


def theta_eps(space: CapSpace, mask: int, eps: Value) -> VFunction:
  """θ_A^ε: top on A and ε elsewhere, for ε ≠ top."""
  if eps == space.quantale.top:
    raise ValueError('θ_A^ε needs ε different from top')
  return finset.theta(space.carrier, space.quantale, mask, eps)


def closure_fn(space: CapSpace, mask: int) -> VFunction:
  """cl A = C(θ_A)."""
  return hull(space, theta(space, mask))


def hull_via_development(space: CapSpace, f: VFunction) -> VFunction:
  """⋁_{v ∈ range f} v ⊗ cl(f⁻¹(v))."""
  q = space.quantale
  out = VFunction.constant(space.carrier, q, q.bottom)
  for v in f.range():
    out = out.join(closure_fn(space, f.preimage(v)).tensor(v))
  return out


def tau_eps(space: CapSpace, eps: Value) -> conv.FiniteConvergence:
  """x ∈ lim B↑ iff λ(B↑)(x) > ε."""
  q, c = space.quantale, space.carrier
  return conv.FiniteConvergence.from_function(c, lambda b: sum(
      1 << x for x in range(c.size) if q.lt(eps, space.a(b, x))))


def r_reflect(space: CapSpace) -> conv.FiniteConvergence:
  """x ∈ lim B↑ iff λ(B↑)(x) > 0."""
  return tau_eps(space, space.quantale.bottom)


def c_coreflect(space: CapSpace) -> conv.FiniteConvergence:
  """x ∈ lim B↑ iff λ(B↑)(x) = 1."""
  q, c = space.quantale, space.carrier
  return conv.FiniteConvergence.from_function(c, lambda b: sum(
      1 << x for x in range(c.size) if space.a(b, x) == q.top))


def is_tau_eps_closed(space: CapSpace, mask: int, eps: Value) -> bool:
  return conv.is_closed(tau_eps(space, eps), mask)


def ap_reflection(space: CapSpace) -> CapSpace:
  """λ_T(B↑)(x) = ⋀_{y ∈ B} cl{y}(x)."""
  q, c = space.quantale, space.carrier
  closures = [closure_fn(space, 1 << y) for y in range(c.size)]
  return CapSpace.from_function(
      c, q, lambda b, x: q.meet(closures[y][x] for y in finset.bits(b)),
      space.name)


def _check_map(f: finset.PointMap, source: CapSpace, target: CapSpace):
  finset.check_same_carrier(f.domain, source.carrier)
  finset.check_same_carrier(f.codomain, target.carrier)
  if source.quantale != target.quantale:
    raise quantale_lib.ModeMismatchError(
        f'{source.quantale} vs {target.quantale}')


def find_contraction_witness(f: finset.PointMap, source: CapSpace,
                             target: CapSpace) -> Verdict:
  """Checks λ_Y(f(B)↑)(f(x)) >= λ_X(B↑)(x) for every B and x."""
  _check_map(f, source, target)
  q, c = source.quantale, source.carrier
  for b in c.nonempty_subsets():
    image = f.image(b)
    for x in range(c.size):
      if not q.leq(source.a(b, x), target.a(image, f(x))):
        return conv.fail(B=c.format_subset(b), x=c.elements[x])
  return conv.PASS


def contraction_check(f: finset.PointMap, source: CapSpace,
                      target: CapSpace) -> bool:
  return find_contraction_witness(f, source, target).holds


def _preimage_inequality(f, source, target, fn) -> Verdict:
  _check_map(f, source, target)
  q = source.quantale
  for a in target.carrier.nonempty_subsets():
    preimage = f.preimage(a)
    if not preimage:
      continue
    lhs = fn(source, preimage)
    rhs = fn(target, a)
    for x in range(source.carrier.size):
      if not q.leq(lhs[x], rhs[f(x)]):
        return conv.fail(A=target.carrier.format_subset(a),
                         x=source.carrier.elements[x])
  return conv.PASS


def preimage_adherence_holds(f: finset.PointMap, source: CapSpace,
                             target: CapSpace) -> Verdict:
  """adh_X(f⁻A) <= adh_Y(A) ∘ f for every A ⊆ Y.

  On a finite carrier f⁻[G] for G = C↑ is f⁻(C)↑, so the filter form of the
  inequality reduces to this principal one.

  Args:
    f: The map X -> Y.
    source: (X, λ_X).
    target: (Y, λ_Y).

  Returns:
    The verdict with the failing (A, x) as witness.
  """
  return _preimage_inequality(f, source, target, adh_set)


def preimage_closure_holds(f: finset.PointMap, source: CapSpace,
                           target: CapSpace) -> Verdict:
  """cl_X(f⁻A) <= cl_Y(A) ∘ f for every A ⊆ Y."""
  return _preimage_inequality(f, source, target, closure_fn)


def initial_structure(domain: finset.Carrier,
                      maps: Sequence[Tuple[finset.PointMap, CapSpace]],
                      name: str = '') -> CapSpace:
  """The initial structure a(B, x) = ⋀_i λ_i(f_i(B)↑)(f_i(x))."""
  if not maps:
    raise ValueError('The initial structure needs at least one map')
  q = maps[0][1].quantale
  for f, target in maps:
    finset.check_same_carrier(f.domain, domain)
    finset.check_same_carrier(f.codomain, target.carrier)
    if target.quantale != q:
      raise quantale_lib.ModeMismatchError(f'{target.quantale} vs {q}')
  return CapSpace.from_function(
      domain, q,
      lambda b, x: q.meet(t.a(f.image(b), f(x)) for f, t in maps), name)


def from_metric(points: Sequence, q: quantale_lib.Quantale,
                names: Optional[Sequence[str]] = None,
                transform: Optional[Callable[[fractions.Fraction], Value]]
                = None, name: str = '') -> CapSpace:
  """The space λ_d(B↑)(x) = sup_{t ∈ B} d(t, x) of a finite set of reals.

  Args:
    points: Rational (or integer) coordinates on the real line.
    q: The value quantale. In lukasiewicz mode distances must be integers
      not exceeding the chain. In unit-rational mode distances are mapped
      through `transform`, by default d -> 2^(-d) for integer d.
    names: Point names; defaults to the coordinates as strings.
    transform: Decreasing map from distances to [0, 1] (unit-rational only).
    name: Display name.

  Returns:
    The (pre-approach) space of the metric.
  """
  coords = [fractions.Fraction(p) for p in points]
  carrier = finset.Carrier(tuple(names) if names is not None else
                           tuple(str(p) for p in coords))

  def value(d):
    if q.is_finite:
      if d.denominator != 1 or d > q.n:
        raise ValueError(f'Distance {d} does not fit in {q}')
      return int(d)
    if transform is not None:
      return transform(d)
    if d.denominator != 1:
      raise ValueError(f'Distance {d} needs an explicit transform')
    return fractions.Fraction(1, 2**int(d))

  rows = [[value(abs(t - x)) for x in coords] for t in coords]
  return CapSpace.from_singleton_rows(carrier, q, rows, name=name)


def adh_filter_closure_check(space: CapSpace) -> Verdict:
  """Checks λ(F) = ⋀_{B # F} cl B and adh F = ⋀_{F' ∈ F} cl F'."""
  if not is_approach(space):
    raise PreconditionError(f'Space "{space.name}" is not an approach space')
  q, c = space.quantale, space.carrier
  closures = {a: closure_fn(space, a) for a in c.nonempty_subsets()}
  for b in c.nonempty_subsets():
    adh = adh_filter(space, b)
    for x in range(c.size):
      by_grill = q.meet(closures[a][x] for a in c.nonempty_subsets() if a & b)
      if space.a(b, x) != by_grill:
        return conv.fail(identity='lambda_by_grill', B=c.format_subset(b),
                         x=c.elements[x])
      by_members = q.meet(closures[a][x] for a in c.nonempty_subsets()
                          if a & b == b)
      if adh[x] != by_members:
        return conv.fail(identity='adherence_by_members', B=c.format_subset(b),
                         x=c.elements[x])
  return conv.PASS


def finite_depth_witness(space: CapSpace) -> Verdict:
  """Checks λ(B↑ ∩ B'↑) = λ(B↑) ∧ λ(B'↑), or a(B ∪ B') = a(B) ∧ a(B')."""
  q, c = space.quantale, space.carrier
  for b in c.nonempty_subsets():
    for b2 in range(b + 1, 1 << c.size):
      for x in range(c.size):
        if space.a(b | b2, x) != q.meet2(space.a(b, x), space.a(b2, x)):
          return conv.fail(B=c.format_subset(b), B_prime=c.format_subset(b2),
                           x=c.elements[x])
  return conv.PASS


def has_finite_depth(space: CapSpace) -> bool:
  return finite_depth_witness(space).holds


def describe(space: CapSpace) -> List[Tuple[str, str]]:
  """Named structural properties of a space, for reports."""
  approach = is_approach(space)
  return [
      ('points', str(space.carrier.size)),
      ('mode', str(space.quantale)),
      ('valid', str(validate(space).ok)),
      ('pre-approach', str(is_prap(space))),
      ('pseudo-approach', str(is_psap(space))),
      ('approach', str(approach.holds)),
      ('finite-depth', str(has_finite_depth(space))),
      ('r-closed-sets', ' '.join(
          space.carrier.format_subset(a)
          for a in conv.closed_sets(r_reflect(space)))),
  ]
